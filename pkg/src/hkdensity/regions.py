"""Exact slices of the cone-difference regions and their area functions.

The density function of a toric pair at level z > 1 is the area of a dilate
of the base polytope minus lattice translates of a smaller dilate; the
unit-cell defect function is the uncovered area of a unit cell under lattice
translates of a dilate.  Both are instances of one parametric family: a
minuend polytope and subtrahend translates, every vertex and facet offset
affine in the parameter.  Slices are resolved by an exact 2D segment
arrangement (vertical decomposition with representative-point
classification); the parameterized area function is recovered per interval
by exact interpolation with a verification sample, enriched with extra
incidence events and bisection if verification ever fails.

Base polytopes of dimension 1 are handled by interval sweeps, dimension 2 by
the arrangement; higher dimensions are rejected here (products and the
counting oracle cover them).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cmp_to_key

from . import geometry as geo
from .errors import BreakpointVerificationError, UnsupportedDimensionError
from .piecewise import PiecewisePoly, Poly, lagrange_interpolate
from .rationals import Rat, ceil_rat, floor_rat


# ---------------------------------------------------------------------------
# moving polytopes: vertices and facet offsets affine in one parameter
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MovingPolytope:
    """Polytope family t -> P(t) with vertices p_i + t q_i and facets
    <n_j, x> >= a_j + t b_j.  Valid on parameter ranges where the listed
    vertices are exactly the vertex set (dilations and translations of a
    fixed polytope, which is all this engine needs)."""

    dim: int
    vbase: tuple
    vdir: tuple
    normals: tuple
    off0: tuple
    off1: tuple

    @staticmethod
    def affine_dilate(poly, c0, c1) -> "MovingPolytope":
        """(c0 + c1*t) * poly, for parameters with c0 + c1*t >= 0."""
        c0, c1 = Rat(c0), Rat(c1)
        ih = geo.integer_hrep(poly)
        return MovingPolytope(
            dim=poly.dim,
            vbase=tuple(geo.vscale(v, c0) for v in poly.vertices),
            vdir=tuple(geo.vscale(v, c1) for v in poly.vertices),
            normals=tuple(tuple(Rat(c) for c in n) for n, _ in ih),
            off0=tuple(Rat(b) * c0 for _, b in ih),
            off1=tuple(Rat(b) * c1 for _, b in ih),
        )

    @staticmethod
    def fixed(poly) -> "MovingPolytope":
        return MovingPolytope.affine_dilate(poly, 1, 0)

    @staticmethod
    def dilating(poly) -> "MovingPolytope":
        return MovingPolytope.affine_dilate(poly, 0, 1)

    def translated(self, u) -> "MovingPolytope":
        u = tuple(Rat(c) for c in u)
        return MovingPolytope(
            dim=self.dim,
            vbase=tuple(geo.vadd(v, u) for v in self.vbase),
            vdir=self.vdir,
            normals=self.normals,
            off0=tuple(a + geo.dot(n, u) for n, a in zip(self.normals, self.off0)),
            off1=self.off1,
        )

    def body(self, t) -> "_Body":
        t = Rat(t)
        verts = sorted({geo.vadd(p, geo.vscale(q, t))
                        for p, q in zip(self.vbase, self.vdir)})
        offs = tuple(a + b * t for a, b in zip(self.off0, self.off1))
        return _Body(verts, self.normals, offs)


class _Body:
    """Evaluated polytope: vertex list plus half-space data for fast tests."""

    __slots__ = ("verts", "normals", "offs", "lo", "hi")

    def __init__(self, verts, normals, offs):
        self.verts = verts
        self.normals = normals
        self.offs = offs
        dim = len(verts[0])
        self.lo = tuple(min(v[i] for v in verts) for i in range(dim))
        self.hi = tuple(max(v[i] for v in verts) for i in range(dim))

    @staticmethod
    def of_polytope(poly) -> "_Body":
        offs = []
        normals = []
        for h in poly.halfspaces:
            normals.append(h.normal)
            offs.append(h.offset)
        return _Body(list(poly.vertices), tuple(normals), tuple(offs))

    def contains(self, x) -> bool:
        return all(geo.dot(n, x) >= c for n, c in zip(self.normals, self.offs))

    def strictly_contains(self, x) -> bool:
        return all(geo.dot(n, x) > c for n, c in zip(self.normals, self.offs))

    def aff_dim(self) -> int:
        return geo.affine_dim(self.verts)

    def bbox_overlaps(self, other) -> bool:
        return all(self.lo[i] <= other.hi[i] and other.lo[i] <= self.hi[i]
                   for i in range(len(self.lo)))

    def edges(self):
        """Edges of a 2D body, from the counterclockwise vertex cycle."""
        ring = _ccw_ring(self.verts)
        return [(ring[i], ring[(i + 1) % len(ring)]) for i in range(len(ring))]


def _ccw_ring(points):
    """Counterclockwise cycle of the extreme points of a 2D convex set."""
    n = len(points)
    cx = sum((p[0] for p in points), Rat(0)) / n
    cy = sum((p[1] for p in points), Rat(0)) / n

    def halfplane(p):
        dx, dy = p[0] - cx, p[1] - cy
        return 0 if (dy > 0 or (dy == 0 and dx > 0)) else 1

    def cmp(a, b):
        ha, hb = halfplane(a), halfplane(b)
        if ha != hb:
            return -1 if ha < hb else 1
        cross = (a[0] - cx) * (b[1] - cy) - (a[1] - cy) * (b[0] - cx)
        if cross > 0:
            return -1
        if cross < 0:
            return 1
        return 0

    return sorted(points, key=cmp_to_key(cmp))


# ---------------------------------------------------------------------------
# exact 2D segment arrangement via vertical decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Face:
    """Convex cell of the decomposition with an interior representative."""

    vertices: tuple
    rep: tuple
    area: object  # Rat


@dataclass(frozen=True)
class Arrangement2D:
    """Vertical decomposition of a segment set inside a bounding box.

    Faces are trapezoids/triangles with pairwise disjoint interiors whose
    areas sum to the box area exactly.
    """

    segments: tuple
    faces: tuple

    @staticmethod
    def build(segments, box_lo, box_hi) -> "Arrangement2D":
        box_lo = tuple(Rat(c) for c in box_lo)
        box_hi = tuple(Rat(c) for c in box_hi)
        segs = []
        for p, q in segments:
            clipped = _clip_segment(tuple(Rat(c) for c in p),
                                    tuple(Rat(c) for c in q), box_lo, box_hi)
            if clipped is not None:
                segs.append(clipped)
        # box edges close every slab from above and below
        blx, bly = box_lo
        bhx, bhy = box_hi
        segs.append(((blx, bly), (bhx, bly)))
        segs.append(((blx, bhy), (bhx, bhy)))
        faces = tuple(_decompose(segs, blx, bhx))
        return Arrangement2D(tuple(segs), faces)


def _clip_segment(p, q, lo, hi):
    t0, t1 = Rat(0), Rat(1)
    d = geo.vsub(q, p)
    for i in range(2):
        for sign, bound in ((1, hi[i]), (-1, lo[i])):
            num = sign * (bound - p[i])
            den = sign * d[i]
            if den == 0:
                if num < 0:
                    return None
                continue
            t = num / den
            if den > 0:
                if t < t1:
                    t1 = t
            else:
                if t > t0:
                    t0 = t
    if t0 > t1:
        return None
    a = geo.vadd(p, geo.vscale(d, t0))
    b = geo.vadd(p, geo.vscale(d, t1))
    if a == b:
        return None
    return (a, b)


def _cross2(u, v):
    return u[0] * v[1] - u[1] * v[0]


def _crossing_x(s1, s2):
    (p1, p2), (q1, q2) = s1, s2
    r = geo.vsub(p2, p1)
    s = geo.vsub(q2, q1)
    denom = _cross2(r, s)
    if denom == 0:
        return None
    w = geo.vsub(q1, p1)
    t = _cross2(w, s) / denom
    u = _cross2(w, r) / denom
    if 0 <= t <= 1 and 0 <= u <= 1:
        return p1[0] + t * r[0]
    return None


def _y_at(seg, x):
    (a, b) = seg
    return a[1] + (x - a[0]) * (b[1] - a[1]) / (b[0] - a[0])


def _decompose(segs, x_min, x_max):
    events = {x_min, x_max}
    for (a, b) in segs:
        events.add(a[0])
        events.add(b[0])
    for s1, s2 in itertools.combinations(segs, 2):
        x = _crossing_x(s1, s2)
        if x is not None:
            events.add(x)
    xs = sorted(x for x in events if x_min <= x <= x_max)
    faces = []
    for xa, xb in zip(xs, xs[1:]):
        xm = (xa + xb) / 2
        spans = [s for s in segs
                 if min(s[0][0], s[1][0]) <= xa and max(s[0][0], s[1][0]) >= xb]
        spans.sort(key=lambda s: _y_at(s, xm))
        for sb, st in zip(spans, spans[1:]):
            yb_a, yb_b = _y_at(sb, xa), _y_at(sb, xb)
            yt_a, yt_b = _y_at(st, xa), _y_at(st, xb)
            area = ((yt_a - yb_a) + (yt_b - yb_b)) * (xb - xa) / 2
            if area == 0:
                continue
            corners = []
            for c in ((xa, yb_a), (xb, yb_b), (xb, yt_b), (xa, yt_a)):
                if c not in corners:
                    corners.append(c)
            rep = (xm, (_y_at(sb, xm) + _y_at(st, xm)) / 2)
            faces.append(Face(tuple(corners), rep, area))
    return faces


# ---------------------------------------------------------------------------
# region slices
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RegionSlice:
    """Finite union of interior-disjoint convex pieces at one level."""

    pieces: tuple
    level: object  # Rat


def area_of_slice(s: RegionSlice):
    return sum((geo.volume(p) for p in s.pieces), Rat(0))


def _difference_faces(minuend: _Body, subs):
    """Decomposition faces inside the minuend and outside every subtrahend."""
    live = [s for s in subs if s.bbox_overlaps(minuend) and s.aff_dim() == 2]
    segments = list(minuend.edges())
    for s in live:
        segments.extend(s.edges())
    arr = Arrangement2D.build(segments, minuend.lo, minuend.hi)
    kept = []
    for face in arr.faces:
        if not minuend.contains(face.rep):
            continue
        if any(s.contains(face.rep) for s in live):
            continue
        kept.append(face)
    return kept


def _interval_of(body: _Body):
    return body.lo[0], body.hi[0]


def _difference_intervals(minuend: _Body, subs):
    a, b = _interval_of(minuend)
    covered = []
    for s in subs:
        lo, hi = _interval_of(s)
        lo, hi = max(lo, a), min(hi, b)
        if lo < hi:
            covered.append((lo, hi))
    covered.sort()
    out = []
    cursor = a
    for lo, hi in covered:
        if lo > cursor:
            out.append((cursor, lo))
        cursor = max(cursor, hi)
    if cursor < b:
        out.append((cursor, b))
    return out


def _difference_slice(minuend: _Body, subs, dim, level) -> RegionSlice:
    if minuend.aff_dim() < dim:
        piece = geo.hrep_from_vrep(minuend.verts)
        return RegionSlice((piece,), Rat(level))
    if dim == 1:
        pieces = tuple(geo.hrep_from_vrep([(a,), (b,)])
                       for a, b in _difference_intervals(minuend, subs))
    else:
        pieces = tuple(geo.hrep_from_vrep(face.vertices)
                       for face in _difference_faces(minuend, subs))
    return RegionSlice(pieces, Rat(level))


def _difference_area(minuend: _Body, subs, dim):
    if minuend.aff_dim() < dim:
        return Rat(0)
    if dim == 1:
        return sum((b - a for a, b in _difference_intervals(minuend, subs)),
                   Rat(0))
    return sum((f.area for f in _difference_faces(minuend, subs)), Rat(0))


def base_polytope(pair):
    """Base polytope of a pair-like object (or the polytope itself)."""
    return getattr(pair, "polytope", pair)


def anchored(poly):
    """Translate so the lexicographically smallest vertex sits at the origin.

    Every invariant computed here is translation-invariant; anchoring makes
    the dilates of the base polytope nested, which the support bounds and
    the vanishing-tail trim rely on.
    """
    v0 = min(poly.vertices)
    return geo.translate(poly, geo.vscale(v0, -1))


def _check_dim(poly):
    if poly.pdim not in (1, 2):
        raise UnsupportedDimensionError(
            f"exact slicing supports base dimension 1 or 2, got {poly.pdim}; "
            "use products or the counting oracle")
    if poly.pdim != poly.dim:
        raise UnsupportedDimensionError(
            "base polytope must be full-dimensional in its ambient space")


def _nondegenerate_bodies(polys, dim):
    out = []
    for p in polys:
        if p.pdim == dim:
            out.append(_Body.of_polytope(p))
    return out


def hk_slice(pair, z) -> RegionSlice:
    """Slice of the density region at level z.

    For z <= 1 this is the dilate z*P; for z = 1 + t it is the closure of
    (1+t)P minus the translates u + tP over the lattice points u of P.
    """
    P = anchored(base_polytope(pair))
    _check_dim(P)
    z = Rat(z)
    if z < 0:
        raise ValueError("level must be nonnegative")
    if z <= 1:
        return RegionSlice((geo.scale(P, z),), z)
    t = z - 1
    minuend = _Body.of_polytope(geo.scale(P, z))
    small = geo.scale(P, t)
    subs = _nondegenerate_bodies(
        [geo.translate(small, u) for u in geo.lattice_points(P)], P.dim)
    return _difference_slice(minuend, subs, P.dim, z)


def _unit_cell(dim):
    return geo.lattice_hull(list(itertools.product((0, 1), repeat=dim)))


def cell_translates(poly, lam_max):
    """Integer translates u with (u + t*P) possibly meeting the unit cell
    for some 0 <= t <= lam_max (bounding-box superset; exact tests happen
    at classification time)."""
    big = geo.scale(poly, lam_max) if lam_max > 0 else poly
    lo, hi = big.bounding_box()
    out = []
    ranges = [range(ceil_rat(-hi[i]), floor_rat(1 - lo[i]) + 1)
              for i in range(poly.dim)]
    for u in itertools.product(*ranges):
        out.append(tuple(Rat(c) for c in u))
    return out


def phi_slice(pair, lam) -> RegionSlice:
    """Uncovered part of the unit cell under translates of the dilate t*P."""
    P = anchored(base_polytope(pair))
    _check_dim(P)
    lam = Rat(lam)
    if lam < 0:
        raise ValueError("parameter must be nonnegative")
    cell = _unit_cell(P.dim)
    minuend = _Body.of_polytope(cell)
    if lam == 0:
        return RegionSlice((cell,), lam)
    small = geo.scale(P, lam)
    subs = _nondegenerate_bodies(
        [geo.translate(small, u) for u in cell_translates(P, lam)], P.dim)
    return _difference_slice(minuend, subs, P.dim, lam)


# ---------------------------------------------------------------------------
# parameterized family -> exact piecewise polynomial
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SliceFamily:
    """Minuend M(t) minus translates u_i + S(t) of a common moving shape."""

    dim: int
    minuend: MovingPolytope
    translates: tuple
    shape: MovingPolytope

    def bodies(self):
        return [self.minuend] + [self.shape.translated(u)
                                 for u in self.translates]


def _window_in_minuend(minuend: MovingPolytope, p, q, lo, hi):
    """Parameter window where the moving point p + t q stays in M(t)."""
    wlo, whi = lo, hi
    for n, a, b in zip(minuend.normals, minuend.off0, minuend.off1):
        c = geo.dot(n, q) - b
        r = a - geo.dot(n, p)
        if c == 0:
            if r > 0:
                return None
        elif c > 0:
            t = r / c
            if t > wlo:
                wlo = t
        else:
            t = r / c
            if t < whi:
                whi = t
        if wlo > whi:
            return None
    return wlo, whi


def _visible(witness, t, bodies, skip):
    """A pairwise/triple event is invisible when its witness point is
    strictly inside some uninvolved subtrahend."""
    for k, mb in enumerate(bodies):
        if k in skip or k == 0:
            continue
        offs = [a + b * t for a, b in zip(mb.off0, mb.off1)]
        if all(geo.dot(n, witness) > c for n, c in zip(mb.normals, offs)):
            return False
    return True


def _on_body(witness, t, body: MovingPolytope) -> bool:
    """Whether the witness lies in the closed body at parameter t.

    An incidence with a facet line matters for the area function only when
    the witness sits on the owner's actual boundary: away from the closed
    body the line carries no boundary of the union."""
    for n, a, b in zip(body.normals, body.off0, body.off1):
        if geo.dot(n, witness) < a + b * t:
            return False
    return True


def _pair_events(bodies, lo, hi):
    """Parameters where a vertex of one body crosses a facet line of another,
    witnessed inside the (closed) minuend."""
    minuend = bodies[0]
    events = set()
    for ai, A in enumerate(bodies):
        for p, q in zip(A.vbase, A.vdir):
            window = _window_in_minuend(minuend, p, q, lo, hi)
            if window is None:
                continue
            wlo, whi = window
            for bi, B in enumerate(bodies):
                if bi == ai:
                    continue
                for n, a, b in zip(B.normals, B.off0, B.off1):
                    c = geo.dot(n, q) - b
                    if c == 0:
                        continue
                    t = (a - geo.dot(n, p)) / c
                    if not (wlo <= t <= whi and lo < t < hi):
                        continue
                    witness = geo.vadd(p, geo.vscale(q, t))
                    if not _on_body(witness, t, B):
                        continue
                    if _visible(witness, t, bodies, {ai, bi}):
                        events.add(t)
    return events


def _triple_events(bodies, lo, hi):
    """Concurrency of facet lines from three distinct bodies, witnessed
    inside the closed minuend and not smothered by an uninvolved body.

    Together with the pairwise vertex-on-line events this makes the
    candidate set complete: a combinatorial change of the arrangement
    restricted to the minuend is a concurrence of three moving lines (two of
    them from one body being the vertex case, coinciding lines being caught
    by the vertex case as well).  In dimension 1 the pairwise events already
    cover everything.
    """
    minuend = bodies[0]
    if minuend.dim == 1:
        return set()
    lines = []
    for i, B in enumerate(bodies):
        for n, a, b in zip(B.normals, B.off0, B.off1):
            lines.append((i, n, a, b))
    events = set()
    for j1 in range(len(lines)):
        i1, n1, a1, b1 = lines[j1]
        for j2 in range(j1 + 1, len(lines)):
            i2, n2, a2, b2 = lines[j2]
            if i1 == i2:
                continue
            den = _cross2(n1, n2)
            if den == 0:
                continue
            # moving intersection point x(t) = x0 + t*x1 of the two lines
            x0 = ((a1 * n2[1] - a2 * n1[1]) / den,
                  (a2 * n1[0] - a1 * n2[0]) / den)
            x1 = ((b1 * n2[1] - b2 * n1[1]) / den,
                  (b2 * n1[0] - b1 * n2[0]) / den)
            window = _window_in_minuend(minuend, x0, x1, lo, hi)
            if window is None:
                continue
            wlo, whi = window
            # each unordered triple once; parallel pairs are coincidence
            # events, already witnessed by vertices landing on the line
            for j3 in range(j2 + 1, len(lines)):
                i3, n3, a3, b3 = lines[j3]
                if i3 in (i1, i2):
                    continue
                c = geo.dot(n3, x1) - b3
                if c == 0:
                    continue
                t = (a3 - geo.dot(n3, x0)) / c
                if not (wlo <= t <= whi and lo < t < hi):
                    continue
                witness = geo.vadd(x0, geo.vscale(x1, t))
                if not (_on_body(witness, t, bodies[i1])
                        and _on_body(witness, t, bodies[i2])
                        and _on_body(witness, t, bodies[i3])):
                    continue
                if _visible(witness, t, bodies, {i1, i2, i3}):
                    events.add(t)
    return events


class _FamilyEvaluator:
    def __init__(self, family: SliceFamily):
        self.family = family
        self.moving = family.bodies()
        self.dim = family.dim

    def area(self, t):
        t = Rat(t)
        minuend = self.moving[0].body(t)
        if minuend.aff_dim() < self.dim:
            return Rat(0)
        subs = []
        for mp in self.moving[1:]:
            b = mp.body(t)
            if b.aff_dim() == self.dim and b.bbox_overlaps(minuend):
                subs.append(b)
        return _difference_area(minuend, subs, self.dim)

    def interpolate(self, a, b):
        """Exact polynomial on [a, b], or None if verification fails."""
        deg = self.dim  # area of an affine family has degree <= dim
        step = (b - a) / (deg + 2)
        samples = [(a + j * step, self.area(a + j * step))
                   for j in range(1, deg + 2)]
        poly = lagrange_interpolate(samples)
        check = a + step / 2
        if poly(check) != self.area(check):
            return None
        return poly


def family_volume_function(family: SliceFamily, lo, hi, *,
                           vanish_monotone=False,
                           max_depth=40) -> PiecewisePoly:
    """Exact t -> area(M(t) minus union of translates of S(t)) on [lo, hi].

    Candidate breakpoints are the vertex-on-facet-line incidences over all
    body pairs together with the triple-line concurrences of distinct
    bodies, both filtered to witnesses inside the closed minuend; this set
    is complete for the combinatorial changes an affine family can undergo.
    Each candidate interval is then interpolated at dim+1 samples and
    verified at one extra sample; a failure (which would indicate a missed
    event) is bisected up to ``max_depth`` times and is a hard error beyond
    that.

    With ``vanish_monotone=True`` (valid when an empty slice stays empty for
    all larger parameters, as holds for these cone families with anchored
    base polytope) the identically-zero tail is located by bisection over the
    candidates and skipped.
    """
    lo, hi = Rat(lo), Rat(hi)
    if lo >= hi:
        raise ValueError("empty parameter interval")
    ev = _FamilyEvaluator(family)
    events = _pair_events(ev.moving, lo, hi) | _triple_events(ev.moving, lo, hi)
    cuts = sorted(set(events) | {lo, hi})

    tail_from = None
    if vanish_monotone:
        if ev.area(lo) == 0:
            return PiecewisePoly.zero(lo)
        if ev.area(hi) == 0:
            # first candidate with vanished area, by bisection
            i, j = 0, len(cuts) - 1
            while j - i > 1:
                m = (i + j) // 2
                if ev.area(cuts[m]) == 0:
                    j = m
                else:
                    i = m
            tail_from = j
            # the zero tail is certified at its midpoint as well
            mid = (cuts[j] + hi) / 2
            if ev.area(mid) != 0:
                raise BreakpointVerificationError(
                    "vanishing tail is not identically zero")
            cuts = cuts[:j + 1]

    def resolve(a, b, depth):
        poly = ev.interpolate(a, b)
        if poly is not None:
            return [(a, b, poly)]
        if depth <= 0:
            raise BreakpointVerificationError(
                f"could not certify a polynomial piece on [{a}, {b}]")
        m = (a + b) / 2
        return resolve(a, m, depth - 1) + resolve(m, b, depth - 1)

    resolved = []
    for a, b in zip(cuts, cuts[1:]):
        resolved.extend(resolve(a, b, max_depth))
    if tail_from is not None and cuts[-1] < hi:
        resolved.append((cuts[-1], hi, Poly(())))

    bps = [resolved[0][0]] + [t[1] for t in resolved]
    out = PiecewisePoly.build(bps, [t[2] for t in resolved])
    if not out.is_continuous():
        raise BreakpointVerificationError(
            "assembled area function fails exact continuity")
    return out


def hk_family(poly) -> SliceFamily:
    """Family for density levels z = 1 + t: (1+t)P minus u + tP over the
    lattice points u of P."""
    P = anchored(poly)
    return SliceFamily(
        dim=P.dim,
        minuend=MovingPolytope.affine_dilate(P, 1, 1),
        translates=tuple(tuple(Rat(c) for c in u)
                         for u in geo.lattice_points(P)),
        shape=MovingPolytope.dilating(P),
    )


def phi_family(poly, lam_max) -> SliceFamily:
    """Family for the unit-cell defect: cell minus u + tP over the integer
    translates that can meet the cell for t <= lam_max."""
    P = anchored(poly)
    return SliceFamily(
        dim=P.dim,
        minuend=MovingPolytope.fixed(_unit_cell(P.dim)),
        translates=tuple(cell_translates(P, lam_max)),
        shape=MovingPolytope.dilating(P),
    )
