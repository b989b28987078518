"""Worst-case sensitivity peak of an interval feedback system.

The family maximum over the whole coefficient box reduces to twelve
vertex plant pairs. This module wires that reduction end to end: the
matched-vertex stability hypothesis, the twelve-norm maximum, and three
independent cross-checks (all sixteen tuples, Monte-Carlo box sampling,
and the gamma-bisection route).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import TheoremPreconditionGapError, UnstableFamilyError
from .hinf import RationalFunction, family_norm_bisection, hinf_norm_exact
from .interval import (
    IntervalPolynomial,
    kharitonov_vertices,
    sample_many,
    sum_family,
    vertex_sum,
)
from .poly import RealPolynomial
from .stability import is_hurwitz_real, max_real_parts_batch
from .valueset import ALL_SIXTEEN, TWELVE_TUPLES, VertexTuple

__all__ = [
    "AnalysisOptions",
    "AnalysisProblem",
    "AnalysisReport",
    "OracleResult",
    "closed_loop_family_stable",
    "twelve_tuples",
    "max_sensitivity_twelve",
    "max_sensitivity_sixteen",
    "monte_carlo_oracle",
    "analyze",
]

BORDERLINE_MARGIN = 1e-9  # closed-loop root margin below which a sample is skipped


@dataclass(frozen=True)
class AnalysisOptions:
    hurwitz_tol: float = 1e-9
    theta_points: int = 720
    oracle_samples: int = 2000
    seed: int = 0
    bisection_tol: float = 1e-4
    omega_max: float = 100.0
    grid_points: int = 100_000


@dataclass(frozen=True)
class AnalysisProblem:
    """Numerator family kg (degree m), denominator family kf (degree n), m < n."""

    kg: IntervalPolynomial
    kf: IntervalPolynomial
    options: AnalysisOptions = field(default_factory=AnalysisOptions)

    def __post_init__(self):
        if self.kg.degree >= self.kf.degree:
            raise ValueError(
                f"numerator family degree {self.kg.degree} must be strictly below "
                f"denominator family degree {self.kf.degree}"
            )
        if self.kf.lower[-1] <= 0.0:
            raise ValueError(
                "denominator family needs a strictly positive leading interval"
            )


@dataclass(frozen=True)
class OracleResult:
    oracle_max: float
    argmax_g: tuple[float, ...]
    argmax_f: tuple[float, ...]
    samples: int
    skipped: int
    seed: int


@dataclass(frozen=True)
class AnalysisReport:
    family_stable: bool
    seed: int
    worst_norm: float | None = None
    argmax_tuple: VertexTuple | None = None
    attained_omega: float | None = None
    per_tuple_norms: dict[VertexTuple, float] | None = None
    sixteen_tuple_max: float | None = None
    oracle: OracleResult | None = None
    bisection_norm: float | None = None


def twelve_tuples() -> tuple[VertexTuple, ...]:
    """The twelve index tuples whose vertex plants carry the family maximum."""
    return TWELVE_TUPLES


def closed_loop_family_stable(prob: AnalysisProblem) -> bool:
    """Hurwitz test of the four matched vertex sums g_ij + f_ij.

    Their stability certifies the whole sum family, because they are
    exactly the Kharitonov vertices of the coefficientwise interval sum;
    that identity is re-verified here on every call.
    """
    matched = {(i, j): vertex_sum(prob.kg, prob.kf, i, j)
               for i in (1, 2) for j in (1, 2)}
    summed = kharitonov_vertices(sum_family(prob.kg, prob.kf))
    for (i, j), p in matched.items():
        if p.coeffs != summed.vertex(i, j).coeffs:
            raise AssertionError(
                f"matched vertex sum ({i}{j}) disagrees with the sum family vertex"
            )
    return all(is_hurwitz_real(p).is_hurwitz for p in matched.values())


def _vertex_sensitivity(prob: AnalysisProblem, t: VertexTuple) -> RationalFunction:
    g = kharitonov_vertices(prob.kg).vertex(t.i1, t.j1)
    f = kharitonov_vertices(prob.kf).vertex(t.i2, t.j2)
    coeffs = list(f.coeffs)
    for k, c in enumerate(g.coeffs):
        coeffs[k] += c
    den = RealPolynomial(coeffs)
    if not is_hurwitz_real(den).is_hurwitz:
        raise TheoremPreconditionGapError(
            f"mixed vertex sum for tuple {t.label} is not Hurwitz although the "
            "matched sums are; the vertex reduction hypothesis does not extend"
        )
    return RationalFunction(num=f, den=den)


def _max_over_tuples(prob: AnalysisProblem,
                     tuples: tuple[VertexTuple, ...]) -> tuple[float, VertexTuple, float, dict]:
    norms: dict[VertexTuple, float] = {}
    attained: dict[VertexTuple, float] = {}
    for t in tuples:
        res = hinf_norm_exact(_vertex_sensitivity(prob, t))
        norms[t] = res.value
        attained[t] = res.attained_at
    best = tuples[0]
    for t in tuples[1:]:
        if norms[t] > norms[best]:
            best = t
    return norms[best], best, attained[best], norms


def max_sensitivity_twelve(prob: AnalysisProblem) -> AnalysisReport:
    """Family worst-case norm as the maximum over the twelve vertex tuples.

    Every tuple's closed loop is Hurwitz-checked first, including the
    mixed-index sums the stability hypothesis only implies indirectly.
    Ties resolve to the earliest tuple in the canonical listing.
    """
    if not closed_loop_family_stable(prob):
        raise UnstableFamilyError("matched vertex sums are not all Hurwitz")
    worst, argmax, at_omega, norms = _max_over_tuples(prob, TWELVE_TUPLES)
    return AnalysisReport(
        family_stable=True,
        seed=prob.options.seed,
        worst_norm=worst,
        argmax_tuple=argmax,
        attained_omega=at_omega,
        per_tuple_norms=norms,
    )


def max_sensitivity_sixteen(prob: AnalysisProblem) -> float:
    """Maximum over all sixteen tuples; must reproduce the twelve-tuple value."""
    if not closed_loop_family_stable(prob):
        raise UnstableFamilyError("matched vertex sums are not all Hurwitz")
    worst, _, _, _ = _max_over_tuples(prob, ALL_SIXTEEN)
    return worst


def _probe_pairs(prob: AnalysisProblem) -> list[tuple[np.ndarray, np.ndarray]]:
    """Deterministic oracle probes: 16 vertex pairs plus midpoint blends."""
    gs = [np.array(v.coeffs) for v in kharitonov_vertices(prob.kg).all_vertices()]
    fs = [np.array(v.coeffs) for v in kharitonov_vertices(prob.kf).all_vertices()]
    pairs = [(g, f) for g in gs for f in fs]
    g_mids = [0.5 * (gs[a] + gs[b]) for a in range(4) for b in range(a + 1, 4)]
    f_mids = [0.5 * (fs[a] + fs[b]) for a in range(4) for b in range(a + 1, 4)]
    pairs.extend((g, f) for g in g_mids for f in fs)
    pairs.extend((g, f) for g in gs for f in f_mids)
    center_g = 0.5 * (np.array(prob.kg.lower) + np.array(prob.kg.upper))
    center_f = 0.5 * (np.array(prob.kf.lower) + np.array(prob.kf.upper))
    pairs.append((center_g, center_f))
    return pairs


def monte_carlo_oracle(prob: AnalysisProblem, samples: int | None = None,
                       seed: int | None = None) -> OracleResult:
    """Box-sampling lower bound on the family maximum.

    Draws i.i.d. coefficient vectors from both boxes on top of the
    deterministic probes, so the certified maximum is always witnessed.
    Samples whose closed loop is borderline (root margin below 1e-9) are
    skipped and counted rather than trusted.
    """
    if samples is None:
        samples = prob.options.oracle_samples
    if seed is None:
        seed = prob.options.seed
    rng = np.random.default_rng(seed)
    n = prob.kf.degree

    pairs = _probe_pairs(prob)
    if samples > 0:
        g_draws = sample_many(prob.kg, samples, rng)
        f_draws = sample_many(prob.kf, samples, rng)
        pairs.extend((g_draws[k], f_draws[k]) for k in range(samples))

    dens = np.zeros((len(pairs), n + 1))
    for k, (g, f) in enumerate(pairs):
        dens[k, : len(f)] = f
        dens[k, : len(g)] += g
    margins = -max_real_parts_batch(dens.astype(complex))

    best = -np.inf
    best_pair = pairs[0]
    skipped = 0
    for k, (g, f) in enumerate(pairs):
        if margins[k] < BORDERLINE_MARGIN:
            skipped += 1
            continue
        rf = RationalFunction(num=RealPolynomial(f), den=RealPolynomial(dens[k]))
        value = hinf_norm_exact(rf).value
        if value > best:
            best = value
            best_pair = (g, f)
    return OracleResult(
        oracle_max=float(best),
        argmax_g=tuple(float(c) for c in best_pair[0]),
        argmax_f=tuple(float(c) for c in best_pair[1]),
        samples=samples,
        skipped=skipped,
        seed=seed,
    )


def analyze(prob: AnalysisProblem) -> AnalysisReport:
    """Full pipeline: stability gate, twelve-vertex maximum, all cross-checks."""
    if not closed_loop_family_stable(prob):
        return AnalysisReport(family_stable=False, seed=prob.options.seed)
    partial = max_sensitivity_twelve(prob)
    sixteen = max_sensitivity_sixteen(prob)
    oracle = monte_carlo_oracle(prob)
    bisect = family_norm_bisection(
        prob.kg, prob.kf,
        tol=prob.options.bisection_tol,
        theta_count=prob.options.theta_points,
    )
    return AnalysisReport(
        family_stable=True,
        seed=prob.options.seed,
        worst_norm=partial.worst_norm,
        argmax_tuple=partial.argmax_tuple,
        attained_omega=partial.attained_omega,
        per_tuple_norms=partial.per_tuple_norms,
        sixteen_tuple_max=sixteen,
        oracle=oracle,
        bisection_norm=bisect,
    )
