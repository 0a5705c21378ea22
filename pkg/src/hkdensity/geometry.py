"""Exact rational convex-polytope primitives in ambient dimension <= 4.

Points are plain tuples of Rat.  A polytope always carries both a vertex
representation and an irredundant half-space representation; the two are
kept consistent by construction.  Vertex enumeration goes through all
dim-subsets of bounding hyperplanes, which is entirely adequate at the facet
counts this engine sees (a few dozen at most).

All values are immutable and every operation is a pure function, so the
module is safe to use from concurrent callers without locking.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd

from .errors import (
    DegenerateError,
    DimMismatchError,
    EmptyRegionError,
    NegativeScaleError,
    NonIntegralVertexError,
    UnboundedError,
)
from .rationals import Rat, as_integer, ceil_rat, floor_rat

Point = tuple  # tuple of Rat, length == ambient dimension


# ---------------------------------------------------------------------------
# small exact linear algebra
# ---------------------------------------------------------------------------

def dot(u, v):
    return sum((a * b for a, b in zip(u, v)), Rat(0))


def vadd(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vsub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vscale(u, t):
    return tuple(a * t for a in u)


def _rref(rows):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    rows = [list(r) for r in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = Rat(1) / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(vectors) -> int:
    return len(_rref(vectors)[1])


def solve_square(mat, rhs):
    """Unique solution of the square system mat . x = rhs, or None if singular."""
    n = len(mat)
    aug = [list(mat[i]) + [rhs[i]] for i in range(n)]
    rows, pivots = _rref(aug)
    if len(pivots) != n or n in pivots:
        return None
    sol = [Rat(0)] * n
    for row, c in zip(rows, pivots):
        sol[c] = row[-1]
    return tuple(sol)


def nullspace(vectors, dim):
    """Basis of the null space of the row span of ``vectors`` in R^dim."""
    rows, pivots = _rref(vectors)
    free = [c for c in range(dim) if c not in pivots]
    basis = []
    for f in free:
        v = [Rat(0)] * dim
        v[f] = Rat(1)
        for row, c in zip(rows, pivots):
            v[c] = -row[f]
        basis.append(tuple(v))
    return basis


def det(mat):
    """Exact determinant via fraction elimination (n <= 4 in practice)."""
    n = len(mat)
    a = [list(row) for row in mat]
    result = Rat(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return Rat(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            result = -result
        result *= a[c][c]
        inv = Rat(1) / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                for j in range(c, n):
                    a[i][j] -= f * a[c][j]
    return result


def affine_dim(points) -> int:
    """Dimension of the affine hull of a point set (-1 for the empty set)."""
    if not points:
        return -1
    base = points[0]
    return rank([vsub(p, base) for p in points[1:]])


# ---------------------------------------------------------------------------
# half-spaces and polytopes
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class HalfSpace:
    """Closed half-space {x : <normal, x> >= offset}."""

    normal: Point
    offset: object  # Rat

    def eval(self, x):
        return dot(self.normal, x) - self.offset

    def contains(self, x) -> bool:
        return self.eval(x) >= 0


def primitive_halfspace(normal, offset) -> HalfSpace:
    """Canonical form: primitive integer normal, orientation preserved.

    The offset is rescaled by the same positive factor and may stay rational.
    """
    entries = [Rat(c) for c in normal]
    lcm = 1
    for e in entries:
        d = int(e.denominator)
        lcm = lcm * d // gcd(lcm, d)
    ints = [int(e * lcm) for e in entries]
    g = 0
    for v in ints:
        g = gcd(g, abs(v))
    g = g or 1
    return HalfSpace(tuple(Rat(v // g) for v in ints),
                     Rat(offset) * lcm / g)


@dataclass(frozen=True)
class ConvexPolytope:
    """Bounded convex polytope with consistent V- and H-representations.

    ``dim`` is the ambient dimension, ``pdim`` the dimension of the affine
    hull; lower-dimensional polytopes are first-class values (their H-rep
    includes the affine-hull equations as paired half-spaces) and have
    volume 0.
    """

    dim: int
    vertices: tuple
    halfspaces: tuple
    pdim: int

    def __post_init__(self):
        if not self.vertices:
            raise EmptyRegionError("a polytope needs at least one vertex")
        if any(len(v) != self.dim for v in self.vertices):
            raise DimMismatchError("vertex of wrong dimension")

    def contains(self, x) -> bool:
        if len(x) != self.dim:
            raise DimMismatchError(
                f"point of dimension {len(x)} vs polytope in R^{self.dim}")
        x = tuple(Rat(c) for c in x)
        return all(h.contains(x) for h in self.halfspaces)

    def bounding_box(self):
        los = [min(v[i] for v in self.vertices) for i in range(self.dim)]
        his = [max(v[i] for v in self.vertices) for i in range(self.dim)]
        return tuple(los), tuple(his)

    @property
    def is_lattice(self) -> bool:
        return all(as_integer(c) is not None for v in self.vertices for c in v)

    def __repr__(self):  # compact, debugging aid
        return (f"ConvexPolytope(dim={self.dim}, pdim={self.pdim}, "
                f"{len(self.vertices)} vertices, {len(self.halfspaces)} halfspaces)")


class LatticePolytope(ConvexPolytope):
    """ConvexPolytope whose vertices all have integer coordinates."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_lattice:
            raise NonIntegralVertexError(
                "vertices are not all integral", polytope=self)


def _as_points(points):
    return [tuple(Rat(c) for c in p) for p in points]


def _extreme_points(points, halfspaces, dim):
    """Filter a closed point set down to the vertices of its hull."""
    out = []
    for p in points:
        active = [h.normal for h in halfspaces if h.eval(p) == 0]
        if rank(active) == dim:
            out.append(p)
    return out


def _facets_fulldim(points, dim):
    """Irredundant facets of a full-dimensional hull, with tight point sets.

    Returns a list of (HalfSpace, tight_index_tuple).
    """
    n = len(points)
    seen = {}
    for subset in itertools.combinations(range(n), dim):
        base = points[subset[0]]
        diffs = [vsub(points[i], base) for i in subset[1:]]
        if rank(diffs) != dim - 1:
            continue
        normal = nullspace(diffs, dim)
        if len(normal) != 1:
            continue
        hs = primitive_halfspace(normal[0], dot(normal[0], base))
        vals = [hs.eval(p) for p in points]
        if all(v >= 0 for v in vals):
            oriented = hs
        elif all(v <= 0 for v in vals):
            oriented = primitive_halfspace(vscale(hs.normal, -1), -hs.offset)
            vals = [-v for v in vals]
        else:
            continue
        key = (oriented.normal, oriented.offset)
        if key not in seen:
            tight = tuple(i for i, v in enumerate(vals) if v == 0)
            seen[key] = (oriented, tight)
    return list(seen.values())


def hrep_from_vrep(points) -> ConvexPolytope:
    """Convex hull of a finite point set, with canonical irredundant H-rep.

    For lower-dimensional hulls the H-rep starts with the affine-hull
    equations (as paired opposite half-spaces) followed by the facet
    inequalities computed inside the hull.
    """
    pts = _as_points(points)
    if not pts:
        raise EmptyRegionError("no points given")
    dim = len(pts[0])
    if any(len(p) != dim for p in pts):
        raise DimMismatchError("points of mixed dimension")
    pts = sorted(set(pts))
    base = pts[0]
    diffs = [vsub(p, base) for p in pts[1:]]
    _, pivots = _rref(diffs)
    pdim = len(pivots)

    halfspaces = []
    if pdim < dim:
        for e in nullspace(diffs, dim) if diffs else nullspace([[Rat(0)] * dim], dim):
            he = primitive_halfspace(e, dot(e, base))
            halfspaces.append(he)
            halfspaces.append(primitive_halfspace(vscale(he.normal, -1), -he.offset))
    if pdim == 0:
        return ConvexPolytope(dim, (base,), tuple(halfspaces), 0)

    if pdim == dim:
        facets = _facets_fulldim(pts, dim)
        halfspaces.extend(h for h, _ in facets)
    else:
        # project to the pivot coordinates, where the hull is full-dimensional
        proj = [tuple(p[c] for c in pivots) for p in pts]
        for h, _ in _facets_fulldim(proj, pdim):
            normal = [Rat(0)] * dim
            for j, c in enumerate(pivots):
                normal[c] = h.normal[j]
            halfspaces.append(HalfSpace(tuple(normal), h.offset))

    verts = _extreme_points(pts, halfspaces, dim)
    return ConvexPolytope(dim, tuple(sorted(verts)), tuple(halfspaces), pdim)


def _recession_nontrivial(halfspaces, dim) -> bool:
    normals = [h.normal for h in halfspaces]
    if rank(normals) < dim:
        return True
    for subset in itertools.combinations(range(len(normals)), dim - 1):
        sel = [normals[i] for i in subset]
        if rank(sel) != dim - 1:
            continue
        rays = nullspace(sel, dim)
        if len(rays) != 1:
            continue
        ray = rays[0]
        for r in (ray, vscale(ray, -1)):
            if all(dot(n, r) >= 0 for n in normals):
                return True
    return False


def vrep_from_hrep(halfspaces, dim) -> ConvexPolytope:
    """Vertices of a bounded half-space intersection.

    Raises UnboundedError when the recession cone is nontrivial and
    EmptyRegionError when the system is infeasible.  The returned polytope
    carries a canonical irredundant H-rep rebuilt from the vertices.
    """
    hs = [HalfSpace(tuple(Rat(c) for c in h.normal), Rat(h.offset))
          for h in halfspaces]
    if _recession_nontrivial(hs, dim):
        raise UnboundedError("half-space intersection is unbounded")
    verts = set()
    for subset in itertools.combinations(range(len(hs)), dim):
        mat = [hs[i].normal for i in subset]
        rhs = [hs[i].offset for i in subset]
        x = solve_square(mat, rhs)
        if x is None:
            continue
        if all(h.eval(x) >= 0 for h in hs):
            verts.add(x)
    if not verts:
        raise EmptyRegionError("half-space intersection is empty")
    return hrep_from_vrep(sorted(verts))


def polytope_from_divisor(rays, coeffs) -> LatticePolytope:
    """Lattice polytope {u : <u, ray_i> >= -coeff_i} of toric divisor data."""
    rays = _as_points(rays)
    if not rays:
        raise DegenerateError("no rays given")
    dim = len(rays[0])
    if len(coeffs) != len(rays):
        raise DimMismatchError("one coefficient per ray required")
    hs = [HalfSpace(r, Rat(-a)) for r, a in zip(rays, coeffs)]
    poly = vrep_from_hrep(hs, dim)
    if poly.pdim < dim:
        raise DegenerateError(
            f"divisor polytope has dimension {poly.pdim} < {dim}")
    if not poly.is_lattice:
        raise NonIntegralVertexError(
            "divisor polytope has non-integral vertices", polytope=poly)
    return LatticePolytope(poly.dim, poly.vertices, poly.halfspaces, poly.pdim)


def lattice_hull(points) -> LatticePolytope:
    """Convex hull of integer points, as a LatticePolytope."""
    poly = hrep_from_vrep(points)
    return LatticePolytope(poly.dim, poly.vertices, poly.halfspaces, poly.pdim)


def scale(poly: ConvexPolytope, t) -> ConvexPolytope:
    """The dilate t*P for t >= 0; t = 0 collapses to the origin point."""
    t = Rat(t)
    if t < 0:
        raise NegativeScaleError("negative scale factor")
    if t == 0:
        return hrep_from_vrep([tuple(Rat(0) for _ in range(poly.dim))])
    verts = tuple(vscale(v, t) for v in poly.vertices)
    hs = tuple(HalfSpace(h.normal, h.offset * t) for h in poly.halfspaces)
    out = ConvexPolytope(poly.dim, verts, hs, poly.pdim)
    if isinstance(poly, LatticePolytope) and out.is_lattice:
        return LatticePolytope(out.dim, out.vertices, out.halfspaces, out.pdim)
    return out


def translate(poly: ConvexPolytope, v) -> ConvexPolytope:
    v = tuple(Rat(c) for c in v)
    if len(v) != poly.dim:
        raise DimMismatchError("translation vector dimension mismatch")
    verts = tuple(vadd(p, v) for p in poly.vertices)
    hs = tuple(HalfSpace(h.normal, h.offset + dot(h.normal, v))
               for h in poly.halfspaces)
    out = ConvexPolytope(poly.dim, verts, hs, poly.pdim)
    if isinstance(poly, LatticePolytope) and out.is_lattice:
        return LatticePolytope(out.dim, out.vertices, out.halfspaces, out.pdim)
    return out


def intersect(p: ConvexPolytope, q: ConvexPolytope):
    """Exact intersection; returns None when empty."""
    if p.dim != q.dim:
        raise DimMismatchError("ambient dimensions differ")
    try:
        raw = vrep_from_hrep(list(p.halfspaces) + list(q.halfspaces), p.dim)
    except EmptyRegionError:
        return None
    return raw


def product(p: ConvexPolytope, q: ConvexPolytope) -> ConvexPolytope:
    """Cartesian product P x Q (used for products of toric pairs)."""
    dim = p.dim + q.dim
    zeros_q = tuple(Rat(0) for _ in range(q.dim))
    zeros_p = tuple(Rat(0) for _ in range(p.dim))
    verts = tuple(vp + vq for vp in p.vertices for vq in q.vertices)
    hs = tuple(HalfSpace(h.normal + zeros_q, h.offset) for h in p.halfspaces)
    hs += tuple(HalfSpace(zeros_p + h.normal, h.offset) for h in q.halfspaces)
    out = ConvexPolytope(dim, verts, hs, p.pdim + q.pdim)
    if out.is_lattice:
        return LatticePolytope(out.dim, out.vertices, out.halfspaces, out.pdim)
    return out


def contains(poly: ConvexPolytope, x) -> bool:
    return poly.contains(x)


# ---------------------------------------------------------------------------
# volume and lattice points
# ---------------------------------------------------------------------------

def _facet_vertex_sets(points, dim):
    return [tight for _, tight in _facets_fulldim(points, dim)]


def _triangulate_fulldim(points, dim):
    """Triangulation of a full-dimensional hull into index simplices.

    Cones the first vertex over a recursive triangulation of the facets not
    containing it.
    """
    if len(points) == dim + 1:
        return [tuple(range(dim + 1))]
    simplices = []
    for tight in _facet_vertex_sets(points, dim):
        if 0 in tight:
            continue
        fpts = [points[i] for i in tight]
        base = fpts[0]
        diffs = [vsub(p, base) for p in fpts[1:]]
        _, pivots = _rref(diffs)
        proj = [tuple(p[c] for c in pivots) for p in fpts]
        for sub in _triangulate_fulldim(proj, dim - 1):
            simplices.append((0,) + tuple(tight[i] for i in sub))
    return simplices


def volume(poly: ConvexPolytope):
    """Exact Lebesgue volume; 0 for polytopes below full ambient dimension."""
    if poly.pdim < poly.dim:
        return Rat(0)
    pts = list(poly.vertices)
    total = Rat(0)
    fact = 1
    for k in range(2, poly.dim + 1):
        fact *= k
    for simplex in _triangulate_fulldim(pts, poly.dim):
        base = pts[simplex[0]]
        mat = [vsub(pts[i], base) for i in simplex[1:]]
        total += abs(det(mat))
    return total / fact


def integer_hrep(poly: ConvexPolytope):
    """H-rep scaled to all-integer entries: list of (normal tuple, offset)."""
    out = []
    for h in poly.halfspaces:
        entries = [Rat(c) for c in h.normal] + [Rat(h.offset)]
        lcm = 1
        for e in entries:
            d = int(e.denominator)
            lcm = lcm * d // gcd(lcm, d)
        ints = [int(e * lcm) for e in entries]
        out.append((tuple(ints[:-1]), ints[-1]))
    return out


def lattice_points(poly: ConvexPolytope):
    """All integer points of the polytope, by bounding-box scan."""
    los, his = poly.bounding_box()
    ranges = [range(ceil_rat(lo), floor_rat(hi) + 1) for lo, hi in zip(los, his)]
    hs = integer_hrep(poly)
    out = []
    for p in itertools.product(*ranges):
        if all(sum(n * x for n, x in zip(normal, p)) >= off for normal, off in hs):
            out.append(p)
    return out
