"""Brute-force lattice-counting oracle.

Validates the exact engine from the other direction: graded colengths of
Frobenius-style powers are counted directly as lattice points, with no
convex machinery involved.  A degree-m monomial of the (saturated) section
ring survives the q-th power of the maximal ideal iff its exponent vector w
lies in m*P and w - q*u lies outside (m-q)*P for every lattice point u of P.

Counts are dimension-agnostic (any base polytope the geometry module can
hold) and q ranges over all positive integers, not just prime powers; the
normalized counts converge to the density function either way.

Scans run on int64 numpy grids when the bounding box and half-space data
certify no overflow, with a pure-python exact fallback otherwise.  Work is
independent across degrees, and the final reduction is an ordered sum, so
results do not depend on evaluation order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import geometry as geo
from . import regions
from .errors import UnsupportedDimensionError
from .rationals import Rat, floor_rat, rat_str

_INT64_SAFE = 2 ** 62


@dataclass(frozen=True)
class OracleSample:
    """Normalized colength count at Frobenius level q and degree m."""

    q: int
    m: int
    count: int
    f_value: object  # Rat = count / q^{d-1}


@dataclass(frozen=True)
class ConvergenceReport:
    """Oracle samples against the exact engine value at one parameter.

    ``gaps[i]`` is |samples[i].f_value - exact_value| (exact rational);
    ``max_gap_tail`` is the largest gap over the second half of the sample
    list, the quantity that should shrink as q grows.  ``exact_value`` is
    None when the base dimension is out of reach of the exact engine.
    """

    lam: object
    exact_value: object
    samples: tuple
    gaps: tuple
    max_gap_tail: object

    def csv_rows(self):
        rows = [("q", "m", "count", "f_value", "exact_value", "gap")]
        for s, g in zip(self.samples, self.gaps):
            rows.append((
                str(s.q), str(s.m), str(s.count), rat_str(s.f_value),
                "" if self.exact_value is None else rat_str(self.exact_value),
                "" if g is None else rat_str(g),
            ))
        return rows


def _base(pair):
    poly = regions.base_polytope(pair)
    return regions.anchored(poly)


def _int_box(poly, m):
    lo, hi = poly.bounding_box()
    return ([int(c) * m for c in lo], [int(c) * m for c in hi])


def _numpy_safe(poly, bound: int) -> bool:
    mx = 0
    for normal, off in geo.integer_hrep(poly):
        row = sum(abs(n) for n in normal) * bound + abs(off) * bound
        mx = max(mx, row)
    return mx < _INT64_SAFE


def _grid(lo, hi):
    axes = [np.arange(a, b + 1, dtype=np.int64) for a, b in zip(lo, hi)]
    mesh = np.meshgrid(*axes, indexing="ij")
    return np.stack(mesh, axis=-1).reshape(-1, len(axes))


def _member_mask(points, hrep, m):
    """Mask of rows of ``points`` lying in the dilate m*P (m >= 0)."""
    mask = np.ones(len(points), dtype=bool)
    for normal, off in hrep:
        vals = points @ np.asarray(normal, dtype=np.int64)
        mask &= vals >= off * m
    return mask


def _dilate_points(poly, m):
    """Integer points of m*P as an int64 array (exact fallback included)."""
    if m == 0:
        return np.zeros((1, poly.dim), dtype=np.int64)
    lo, hi = _int_box(poly, m)
    hrep = geo.integer_hrep(poly)
    bound = max(max(abs(a) for a in lo), max(abs(b) for b in hi), 1)
    if _numpy_safe(poly, bound * max(m, 1)):
        pts = _grid(lo, hi)
        return pts[_member_mask(pts, hrep, m)]
    pts = [p for p in itertools.product(
        *[range(a, b + 1) for a, b in zip(lo, hi)])
        if all(sum(n * x for n, x in zip(normal, p)) >= off * m
               for normal, off in hrep)]
    return np.asarray(pts, dtype=np.int64).reshape(len(pts), poly.dim)


def ehrhart_count(poly, n: int) -> int:
    """#(n*P intersect Z^dim) for n >= 0."""
    if n < 0:
        raise ValueError("nonnegative dilation required")
    return len(_dilate_points(regions.base_polytope(poly), int(n)))


def slice_count(pair, q: int, m: int) -> int:
    """Degree-m colength count of the q-th Frobenius-style power.

    Counts w in m*P with no lattice point u of P such that w - q*u lies in
    (m-q)*P; for m < q the constraint is vacuous and every point counts.
    """
    if q < 1 or m < 0:
        raise ValueError("need q >= 1 and m >= 0")
    P = _base(pair)
    pts = _dilate_points(P, m)
    if m < q or len(pts) == 0:
        return len(pts)
    gens = geo.lattice_points(P)
    hrep = geo.integer_hrep(P)
    alive = np.ones(len(pts), dtype=bool)
    for u in gens:
        if not alive.any():
            break
        shift = np.asarray([int(c) * q for c in u], dtype=np.int64)
        alive[alive] &= ~_member_mask(pts[alive] - shift, hrep, m - q)
    return int(alive.sum())


def f_n(pair, q: int, lam) -> OracleSample:
    """Normalized count at parameter lam: m = floor(q*lam), f = count/q^{d-1}."""
    lam = Rat(lam)
    if lam < 0:
        raise ValueError("parameter must be nonnegative")
    m = floor_rat(Rat(q) * lam)
    count = slice_count(pair, q, m)
    dm1 = regions.base_polytope(pair).dim
    return OracleSample(q=int(q), m=m, count=count,
                        f_value=Rat(count, q ** dm1))


def oracle_ehk(pair, q: int):
    """Level-q estimate of the multiplicity: sum of all degree counts over
    q^d.  Degrees run to q*(1+l), beyond the support of the density."""
    P = regions.base_polytope(pair)
    l = len(P.vertices)
    d = P.dim + 1
    total = 0
    for m in range(0, int(q) * (1 + l) + 1):
        total += slice_count(pair, q, m)
    return Rat(total, int(q) ** d)


def convergence_report(pair, lam, q_list) -> ConvergenceReport:
    """Oracle samples at each q against the exact density value at lam."""
    lam = Rat(lam)
    samples = tuple(f_n(pair, q, lam) for q in q_list)
    try:
        from .analysis import hkd_function
        exact = hkd_function(pair)(lam)
    except UnsupportedDimensionError:
        exact = None
    gaps = tuple(None if exact is None else abs(s.f_value - exact)
                 for s in samples)
    tail = [g for g in gaps[len(gaps) // 2:] if g is not None]
    max_gap_tail = max(tail) if tail else None
    return ConvergenceReport(lam=lam, exact_value=exact, samples=samples,
                             gaps=gaps, max_gap_tail=max_gap_tail)
