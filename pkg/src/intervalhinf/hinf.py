"""H-infinity norms of stable proper rational functions.

The exact route turns |p(j w)|^2 into an even polynomial ratio in
x = w^2, finds the stationary points of that ratio as roots of a single
polynomial, and re-evaluates every candidate through the transfer
function itself. The supremum may be approached only as w -> inf, so the
at-infinity limit is always a candidate and NormResult keeps an explicit
infinity sentinel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    DegreeOrderError,
    DeltaRangeError,
    NoUpperBracketError,
    UnstableClosedLoopError,
    UnstableDenominatorError,
    UnstableFamilyError,
)
from .interval import IntervalPolynomial, vertex_sum
from .poly import RealPolynomial, add, eval_at_jomega, eval_many, magnitude_squared
from .stability import HURWITZ_TOL, is_hurwitz_real, max_real_parts_batch, roots_complex
from .valueset import perturbed_vertex_rows

__all__ = [
    "RationalFunction",
    "NormResult",
    "sensitivity",
    "hinf_norm_exact",
    "hinf_norm_grid",
    "check_gamma_equivalence",
    "family_norm_bisection",
]

GAMMA_CAP = 2.0 ** 32
_THETA_CHUNK = 48


@dataclass(frozen=True)
class RationalFunction:
    """num/den with real coefficients; properness checked at construction."""

    num: RealPolynomial
    den: RealPolynomial

    def __post_init__(self):
        if self.num.degree > self.den.degree:
            raise DegreeOrderError(
                f"improper rational function: numerator degree {self.num.degree} "
                f"exceeds denominator degree {self.den.degree}"
            )

    def magnitude_at(self, omega: float) -> float:
        return abs(eval_at_jomega(self.num, omega)) / abs(eval_at_jomega(self.den, omega))

    def infinity_gain(self) -> float:
        """Limit of the magnitude as omega -> inf."""
        if self.num.degree == self.den.degree:
            return abs(self.num.leading / self.den.leading)
        return 0.0


@dataclass(frozen=True)
class NormResult:
    value: float
    attained_at: float  # frequency, or math.inf when approached at infinity
    candidates: tuple[tuple[float, float], ...]  # (frequency, magnitude) pairs


def sensitivity(g: RealPolynomial, f: RealPolynomial) -> RationalFunction:
    """Sensitivity f/(f+g) of the strictly proper plant g/f under unity feedback."""
    if g.degree >= f.degree:
        raise DegreeOrderError(
            f"plant must be strictly proper: numerator degree {g.degree} "
            f">= denominator degree {f.degree}"
        )
    closed = add(f, g)
    if not is_hurwitz_real(closed).is_hurwitz:
        raise UnstableClosedLoopError("f + g is not Hurwitz; sensitivity undefined")
    return RationalFunction(num=f, den=closed)


def _trimmed(coeffs: np.ndarray, rel: float = 1e-14) -> np.ndarray:
    top = np.abs(coeffs).max()
    if top == 0.0:
        return coeffs[:1]
    keep = len(coeffs)
    while keep > 1 and abs(coeffs[keep - 1]) <= rel * top:
        keep -= 1
    return coeffs[:keep]


def _stationarity_polynomial(mn: np.ndarray, md: np.ndarray) -> np.ndarray:
    """d/dx of the ratio mn/md up to the positive factor md^2."""
    dmn = mn[1:] * np.arange(1, len(mn))
    dmd = md[1:] * np.arange(1, len(md))
    lhs = np.convolve(dmn, md) if len(dmn) else np.zeros(1)
    rhs = np.convolve(mn, dmd) if len(dmd) else np.zeros(1)
    n = max(len(lhs), len(rhs))
    lhs = np.pad(lhs, (0, n - len(lhs)))
    rhs = np.pad(rhs, (0, n - len(rhs)))
    return _trimmed(lhs - rhs)


def hinf_norm_exact(rf: RationalFunction) -> NormResult:
    """Peak magnitude over the imaginary axis from stationary-point candidates.

    Candidate squared frequencies are the nonnegative real roots of
    M_num' * M_den - M_num * M_den', plus x = 0, plus the x -> inf limit;
    each finite candidate is re-evaluated through the transfer function.
    Ties go to the smallest frequency.
    """
    if not is_hurwitz_real(rf.den).is_hurwitz:
        raise UnstableDenominatorError("H-infinity norm needs a Hurwitz denominator")
    mn = np.asarray(magnitude_squared(rf.num).coeffs)
    md = np.asarray(magnitude_squared(rf.den).coeffs)
    station = _stationarity_polynomial(mn, md)

    xs = [0.0]
    if len(station) >= 2:
        for r in roots_complex(RealPolynomial(station)).roots:
            if abs(r.imag) <= 1e-8 * abs(r) and r.real > 0.0:
                xs.append(r.real)

    candidates = [(om, rf.magnitude_at(om)) for om in sorted(math.sqrt(x) for x in xs)]
    candidates.append((math.inf, rf.infinity_gain()))

    best_val, best_at = -1.0, 0.0
    for om, mag in candidates:
        if mag > best_val:
            best_val, best_at = mag, om
    return NormResult(value=best_val, attained_at=best_at, candidates=tuple(candidates))


def hinf_norm_grid(rf: RationalFunction, omega_max: float, points: int) -> float:
    """Dense-grid lower bound on the peak; the independent check on the exact route.

    Log-spaced frequencies on (0, omega_max] augmented with omega = 0 and
    the at-infinity limit.
    """
    if points < 2:
        raise ValueError("grid oracle needs at least 2 points")
    if not omega_max > 0.0:
        raise ValueError("grid oracle needs omega_max > 0")
    omegas = np.geomspace(omega_max * 1e-12, omega_max, points - 1)
    s = 1j * np.concatenate([[0.0], omegas])
    mags = np.abs(eval_many(rf.num, s)) / np.abs(eval_many(rf.den, s))
    return float(max(mags.max(), rf.infinity_gain()))


def _theta_grid(theta_count: int) -> np.ndarray:
    # [-pi, pi) covers the closed interval since the endpoints coincide
    if theta_count < 1:
        raise ValueError("theta grid needs at least one point")
    return np.linspace(-np.pi, np.pi, theta_count, endpoint=False)


def check_gamma_equivalence(g: RealPolynomial, f: RealPolynomial, gamma: float,
                  theta_count: int = 720) -> bool:
    """Grid version of the gamma-equivalence for a single plant.

    True iff g + (1 + (1/gamma) e^{j theta}) f is Hurwitz at every grid
    theta; up to grid resolution this equals ||f/(f+g)||_inf < gamma.
    """
    if not gamma > 1.0:
        raise DeltaRangeError(f"gamma must exceed 1, got {gamma}")
    closed = add(f, g)
    if not is_hurwitz_real(closed).is_hurwitz:
        raise UnstableClosedLoopError("f + g must be Hurwitz for the equivalence")
    n = max(f.degree, g.degree)
    base = np.zeros(n + 1)
    base[: closed.degree + 1] = closed.coeffs[: closed.degree + 1]
    frow = np.zeros(n + 1)
    frow[: f.degree + 1] = f.coeffs[: f.degree + 1]
    delta = 1.0 / gamma
    thetas = _theta_grid(theta_count)
    for start in range(0, len(thetas), _THETA_CHUNK):
        chunk = thetas[start : start + _THETA_CHUNK]
        rows = base[None, :] + delta * np.exp(1j * chunk)[:, None] * frow[None, :]
        if (max_real_parts_batch(rows) >= -HURWITZ_TOL).any():
            return False
    return True


def _matched_sums_hurwitz(kg: IntervalPolynomial, kf: IntervalPolynomial) -> bool:
    return all(
        is_hurwitz_real(vertex_sum(kg, kf, i, j)).is_hurwitz
        for i in (1, 2) for j in (1, 2)
    )


def _twelve_stable_at(kg: IntervalPolynomial, kf: IntervalPolynomial, gamma: float,
                      thetas: np.ndarray) -> bool:
    delta = 1.0 / gamma
    for start in range(0, len(thetas), _THETA_CHUNK):
        rows = perturbed_vertex_rows(kg, kf, delta, thetas[start : start + _THETA_CHUNK])
        if (max_real_parts_batch(rows) >= -HURWITZ_TOL).any():
            return False
    return True


def family_norm_bisection(kg: IntervalPolynomial, kf: IntervalPolynomial,
                          tol: float = 1e-4, theta_count: int = 720) -> float:
    """Family-wide sensitivity peak located by bisection over gamma.

    The twelve perturbed vertex polynomials with delta = 1/gamma are Hurwitz on
    the whole theta grid exactly when the family supremum is below gamma,
    so the transition point is the worst-case norm. Independent of the
    per-vertex stationary-point route by construction.
    """
    if tol <= 0.0:
        raise ValueError("bisection needs a positive tolerance")
    if not _matched_sums_hurwitz(kg, kf):
        raise UnstableFamilyError("matched vertex sums are not all Hurwitz")
    thetas = _theta_grid(theta_count)
    hi = 2.0
    while not _twelve_stable_at(kg, kf, hi, thetas):
        hi *= 2.0
        if hi > GAMMA_CAP:
            raise NoUpperBracketError(
                f"no stable gamma found below {GAMMA_CAP:g}; family is near instability"
            )
    lo = 1.0 + 1e-9
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _twelve_stable_at(kg, kf, mid, thetas):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)
