"""Shared generators for seeded random plants and interval families.

Family generation filters on closed-loop root margins computed with
numpy's companion-matrix roots, so the inputs to cross-route agreement
tests do not depend on the code paths under test.
"""

from __future__ import annotations

import numpy as np
import pytest

from intervalhinf.interval import IntervalPolynomial


def np_root_margin(coeffs_asc) -> float:
    """-max root real part via numpy, -inf for degenerate input."""
    arr = np.trim_zeros(np.asarray(coeffs_asc, dtype=float)[::-1], "f")
    if len(arr) < 2:
        return np.inf
    return float(-np.roots(arr).real.max())


def stable_center(rng: np.random.Generator, degree: int) -> np.ndarray:
    """Monic ascending coefficients with all roots in the open left half plane."""
    roots = []
    left = degree
    while left > 0:
        if left >= 2 and rng.random() < 0.4:
            re = -rng.uniform(0.3, 1.5)
            im = rng.uniform(0.2, 1.5)
            roots.extend([complex(re, im), complex(re, -im)])
            left -= 2
        else:
            roots.append(complex(-rng.uniform(0.3, 2.0), 0.0))
            left -= 1
    return np.real(np.poly(roots))[::-1].copy()


def random_stable_family(rng: np.random.Generator, *, n_min: int = 3, n_max: int = 6,
                         width_scale: float = 0.3,
                         margin: float = 1e-2) -> tuple[IntervalPolynomial, IntervalPolynomial]:
    """Interval family pair whose sixteen vertex closed loops all clear `margin`."""
    while True:
        n = int(rng.integers(n_min, n_max + 1))
        m = int(rng.integers(0, n))
        f0 = stable_center(rng, n)
        g0 = rng.uniform(-0.35, 0.35, m + 1) * max(np.abs(f0).max(), 1.0) * 0.5
        wf = rng.uniform(0.0, width_scale, n + 1) * np.abs(f0)
        wf[-1] = min(wf[-1], 0.5 * f0[-1])  # leading interval stays positive
        wg = rng.uniform(0.0, width_scale, m + 1) * np.maximum(np.abs(g0), 0.05)
        kf = IntervalPolynomial(f0 - 0.5 * wf, f0 + 0.5 * wf)
        kg = IntervalPolynomial(g0 - 0.5 * wg, g0 + 0.5 * wg)
        if _all_vertex_loops_clear(kg, kf, margin):
            return kg, kf


def _all_vertex_loops_clear(kg: IntervalPolynomial, kf: IntervalPolynomial,
                            margin: float) -> bool:
    from intervalhinf.interval import kharitonov_vertices

    n = kf.degree
    gs = kharitonov_vertices(kg).all_vertices()
    fs = kharitonov_vertices(kf).all_vertices()
    for g in gs:
        for f in fs:
            coeffs = np.zeros(n + 1)
            coeffs[: len(f.coeffs)] = f.coeffs
            coeffs[: len(g.coeffs)] += g.coeffs
            if np_root_margin(coeffs) < margin:
                return False
    return True


def random_stable_plant(rng: np.random.Generator, *, n_min: int = 2, n_max: int = 6,
                        margin: float = 1e-2):
    """A single (g, f) pair with f + g comfortably Hurwitz."""
    from intervalhinf.poly import RealPolynomial

    while True:
        n = int(rng.integers(n_min, n_max + 1))
        m = int(rng.integers(0, n))
        f0 = stable_center(rng, n)
        g0 = rng.uniform(-0.5, 0.5, m + 1) * max(np.abs(f0).max(), 1.0) * 0.5
        closed = f0.copy()
        closed[: m + 1] += g0
        if np_root_margin(closed) >= margin:
            return RealPolynomial(g0), RealPolynomial(f0)


def polygon_exterior_distance(points: np.ndarray, hull) -> np.ndarray:
    """Distance from each point to a clockwise convex hull; 0 when inside."""
    pts = np.asarray(points, dtype=complex)
    hull = list(hull)
    if len(hull) == 1:
        return np.abs(pts - hull[0])

    def seg_dist(a: complex, b: complex) -> np.ndarray:
        ab = b - a
        denom = abs(ab) ** 2
        if denom == 0.0:
            return np.abs(pts - a)
        t = np.clip(((pts - a) * np.conj(ab)).real / denom, 0.0, 1.0)
        return np.abs(pts - (a + t * ab))

    edge_dists = np.stack([seg_dist(hull[k], hull[(k + 1) % len(hull)])
                           for k in range(len(hull))])
    if len(hull) == 2:
        return edge_dists.min(axis=0)
    inside = np.ones(len(pts), dtype=bool)
    for k in range(len(hull)):
        a, b = hull[k], hull[(k + 1) % len(hull)]
        cross = ((pts - a) * np.conj(b - a)).imag  # cross(edge, p - a)
        inside &= cross <= 0.0  # clockwise: interior on the right of each edge
    out = edge_dists.min(axis=0)
    out[inside] = 0.0
    return out


@pytest.fixture(scope="session")
def acceptance_families():
    """25 seeded interval families shared by the theorem-level criteria."""
    rng = np.random.default_rng(20240823)
    return [random_stable_family(rng) for _ in range(25)]
