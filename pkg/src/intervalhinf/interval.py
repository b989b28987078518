"""Interval polynomial families and their Kharitonov vertices.

A family is a coefficient box: independent closed intervals, one per
power of s. The four vertex polynomials arise from the alternating
lower/upper pattern on the even and odd coefficient subsequences, and
the family's value set at any fixed frequency is the axis-aligned
rectangle spanned by those vertices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .errors import DegreeOrderError
from .poly import EvenPolynomial, RealPolynomial

__all__ = [
    "IntervalPolynomial",
    "KharitonovSet",
    "Rectangle",
    "kharitonov_vertices",
    "value_rectangle",
    "sample",
    "sum_family",
]


@dataclass(frozen=True)
class IntervalPolynomial:
    """Coefficient box [lower_i, upper_i], ascending by power of s."""

    lower: tuple[float, ...]
    upper: tuple[float, ...]

    def __init__(self, lower: Iterable[float], upper: Iterable[float]):
        lo = tuple(float(v) for v in lower)
        hi = tuple(float(v) for v in upper)
        if len(lo) != len(hi):
            raise ValueError(f"bound lengths differ: {len(lo)} vs {len(hi)}")
        if not lo:
            raise ValueError("interval polynomial needs at least one coefficient")
        for i, (a, b) in enumerate(zip(lo, hi)):
            if not (math.isfinite(a) and math.isfinite(b)):
                raise ValueError(f"non-finite bound at power {i}")
            if a > b:
                raise ValueError(f"lower > upper at power {i}: [{a}, {b}]")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def degree(self) -> int:
        return len(self.lower) - 1

    @property
    def is_point(self) -> bool:
        return self.lower == self.upper

    def widths(self) -> tuple[float, ...]:
        return tuple(b - a for a, b in zip(self.lower, self.upper))

    def contains(self, p: RealPolynomial, slack: float = 0.0) -> bool:
        """Box membership of a member polynomial (zero-padded past its length)."""
        n = len(self.lower)
        if any(c != 0 for c in p.coeffs[n:]):
            return False
        for i in range(n):
            c = p.coeffs[i] if i < len(p.coeffs) else 0.0
            if c < self.lower[i] - slack or c > self.upper[i] + slack:
                return False
        return True


@dataclass(frozen=True)
class KharitonovSet:
    """The four vertex polynomials p_ij = alpha^(i) + s*beta^(j).

    alpha1/alpha2 and beta1/beta2 are the alternating even/odd halves
    (polynomials in u = s^2) that generate the vertices; they double as
    the rectangle bounds of the family's value set.
    """

    p11: RealPolynomial
    p12: RealPolynomial
    p21: RealPolynomial
    p22: RealPolynomial
    alpha1: EvenPolynomial
    alpha2: EvenPolynomial
    beta1: EvenPolynomial
    beta2: EvenPolynomial

    def vertex(self, i: int, j: int) -> RealPolynomial:
        if i not in (1, 2) or j not in (1, 2):
            raise ValueError(f"vertex indices must be 1 or 2, got ({i}, {j})")
        return getattr(self, f"p{i}{j}")

    def all_vertices(self) -> tuple[RealPolynomial, ...]:
        return (self.p11, self.p12, self.p21, self.p22)


def _alternating(bounds_lo, bounds_hi, start_lower: bool) -> tuple[float, ...]:
    # lower/upper alternation along one parity class: lower at k even when
    # start_lower, flipped at k odd.
    out = []
    for k in range(len(bounds_lo)):
        take_lower = start_lower if k % 2 == 0 else not start_lower
        out.append(bounds_lo[k] if take_lower else bounds_hi[k])
    return tuple(out)


def kharitonov_vertices(family: IntervalPolynomial) -> KharitonovSet:
    """Build the four Kharitonov vertex polynomials of a coefficient box.

    alpha^(1) takes lower, upper, lower, ... over the even coefficients
    starting at the constant term; alpha^(2) is its complement. beta^(1)
    and beta^(2) do the same over the odd coefficients.
    """
    even_lo, even_hi = family.lower[0::2], family.upper[0::2]
    odd_lo, odd_hi = family.lower[1::2], family.upper[1::2]
    alpha1 = EvenPolynomial(_alternating(even_lo, even_hi, True))
    alpha2 = EvenPolynomial(_alternating(even_lo, even_hi, False))
    beta1 = EvenPolynomial(_alternating(odd_lo, odd_hi, True))
    beta2 = EvenPolynomial(_alternating(odd_lo, odd_hi, False))

    def assemble(alpha: EvenPolynomial, beta: EvenPolynomial) -> RealPolynomial:
        coeffs = [0.0] * len(family.lower)
        for k, a in enumerate(alpha.coeffs):
            if 2 * k < len(coeffs):
                coeffs[2 * k] = a
        for k, b in enumerate(beta.coeffs):
            if 2 * k + 1 < len(coeffs):
                coeffs[2 * k + 1] = b
        return RealPolynomial(coeffs)

    return KharitonovSet(
        p11=assemble(alpha1, beta1),
        p12=assemble(alpha1, beta2),
        p21=assemble(alpha2, beta1),
        p22=assemble(alpha2, beta2),
        alpha1=alpha1,
        alpha2=alpha2,
        beta1=beta1,
        beta2=beta2,
    )


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned rectangle in the complex plane."""

    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float

    def corners(self) -> tuple[complex, complex, complex, complex]:
        return (
            complex(self.re_lo, self.im_lo),
            complex(self.re_hi, self.im_lo),
            complex(self.re_hi, self.im_hi),
            complex(self.re_lo, self.im_hi),
        )

    def contains(self, z: complex, slack: float = 0.0) -> bool:
        return (
            self.re_lo - slack <= z.real <= self.re_hi + slack
            and self.im_lo - slack <= z.imag <= self.im_hi + slack
        )


def value_rectangle(family: IntervalPolynomial, omega: float) -> Rectangle:
    """Value set of the family at s = j*omega.

    Real extent [alpha^(1)(-w^2), alpha^(2)(-w^2)]; imaginary extent
    omega * [beta^(1)(-w^2), beta^(2)(-w^2)], endpoints swapped for
    omega < 0 because the negative factor reverses the order. Corners
    coincide with the four vertex evaluations.
    """
    ks = kharitonov_vertices(family)
    u = -(omega * omega)
    re_lo, re_hi = ks.alpha1.eval(u), ks.alpha2.eval(u)
    b1, b2 = omega * ks.beta1.eval(u), omega * ks.beta2.eval(u)
    if omega >= 0:
        im_lo, im_hi = b1, b2
    else:
        im_lo, im_hi = b2, b1
    return Rectangle(re_lo=re_lo, re_hi=re_hi, im_lo=im_lo, im_hi=im_hi)


def sample(family: IntervalPolynomial, rng: np.random.Generator) -> RealPolynomial:
    """Draw one member uniformly from the coefficient box."""
    coeffs = [rng.uniform(lo, hi) if hi > lo else lo
              for lo, hi in zip(family.lower, family.upper)]
    return RealPolynomial(coeffs)


def sample_many(family: IntervalPolynomial, count: int,
                rng: np.random.Generator) -> np.ndarray:
    """(count, n+1) array of members; columns with zero width stay exact."""
    lo = np.asarray(family.lower)
    hi = np.asarray(family.upper)
    out = rng.uniform(lo, hi, size=(count, len(lo)))
    fixed = hi <= lo
    if fixed.any():
        out[:, fixed] = lo[fixed]
    return out


def sum_family(kg: IntervalPolynomial, kf: IntervalPolynomial) -> IntervalPolynomial:
    """Coefficientwise interval sum of a numerator and denominator family.

    Requires deg(kg) < deg(kf); the result's Kharitonov vertices equal the
    matched vertex sums g_ij + f_ij because the alternation patterns align
    position by position.
    """
    m, n = kg.degree, kf.degree
    if m >= n:
        raise DegreeOrderError(
            f"numerator family degree {m} must be below denominator degree {n}"
        )
    pad = n - m
    lo = tuple(a + b for a, b in zip(kg.lower + (0.0,) * pad, kf.lower))
    hi = tuple(a + b for a, b in zip(kg.upper + (0.0,) * pad, kf.upper))
    return IntervalPolynomial(lo, hi)


def vertex_sum(kg: IntervalPolynomial, kf: IntervalPolynomial,
               i: int, j: int) -> RealPolynomial:
    """Matched vertex sum g_ij + f_ij (zero-padded to the denominator degree)."""
    g = kharitonov_vertices(kg).vertex(i, j)
    f = kharitonov_vertices(kf).vertex(i, j)
    coeffs = list(f.coeffs)
    for k, c in enumerate(g.coeffs):
        coeffs[k] += c
    return RealPolynomial(coeffs)
