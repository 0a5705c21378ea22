"""Exact polynomials and piecewise polynomials over the rationals.

A PiecewisePoly is a list of strictly increasing breakpoints with one
polynomial per open interval; the function is 0 outside its domain.  This is
the common value type for sectional volume functions, density functions and
unit-cell defect functions, all of which are continuous on their support.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

from .errors import DegenerateError, FacetParallelToBaseError, UnboundedError
from .rationals import Rat, parse_rat, rat_str


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def _strip(coeffs):
    coeffs = [Rat(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Poly:
    """Polynomial with exact rational coefficients, ascending order.

    The zero polynomial has an empty coefficient tuple.
    """

    coeffs: tuple

    @staticmethod
    def of(*coeffs) -> "Poly":
        return Poly(_strip(coeffs))

    @staticmethod
    def const(c) -> "Poly":
        return Poly(_strip([c]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1  # -1 for the zero polynomial

    def __call__(self, x):
        x = Rat(x)
        acc = Rat(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        a, b = self.coeffs, other.coeffs
        n = max(len(a), len(b))
        return Poly(_strip([
            (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)
            for i in range(n)]))

    def __neg__(self):
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not self.coeffs or not other.coeffs:
            return Poly(())
        out = [Rat(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Poly(_strip(out))

    def antiderivative(self) -> "Poly":
        return Poly(_strip([Rat(0)] + [c / (i + 1) for i, c in enumerate(self.coeffs)]))

    def integrate(self, a, b):
        f = self.antiderivative()
        return f(b) - f(a)

    def compose_affine(self, scale, shift) -> "Poly":
        """p(scale*x + shift)."""
        arg = Poly.of(shift, scale)
        acc = Poly(())
        for c in reversed(self.coeffs):
            acc = acc * arg + Poly.const(c)
        return acc


ZERO_POLY = Poly(())


def poly_add(p: Poly, q: Poly) -> Poly:
    return p + q


def poly_mul(p: Poly, q: Poly) -> Poly:
    return p * q


def poly_eval(p: Poly, x):
    return p(x)


def poly_integrate(p: Poly, a, b):
    return p.integrate(a, b)


def lagrange_interpolate(points) -> Poly:
    """Exact interpolating polynomial through (x_i, y_i) with distinct x_i."""
    result = Poly(())
    for i, (xi, yi) in enumerate(points):
        xi, yi = Rat(xi), Rat(yi)
        if yi == 0:
            continue
        term = Poly.const(yi)
        for j, (xj, _) in enumerate(points):
            if j == i:
                continue
            xj = Rat(xj)
            term = term * Poly.of(-xj / (xi - xj), Rat(1) / (xi - xj))
        result = result + term
    return result


# ---------------------------------------------------------------------------
# piecewise polynomials
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PiecewisePoly:
    """Piecewise polynomial, implicitly 0 outside [breakpoints[0], breakpoints[-1]].

    Breakpoints are strictly increasing; pieces[i] lives on
    [breakpoints[i], breakpoints[i+1]].  A single breakpoint and no pieces
    is the canonical identically-zero function.
    """

    breakpoints: tuple
    pieces: tuple

    @staticmethod
    def build(breakpoints, pieces) -> "PiecewisePoly":
        bps = tuple(Rat(b) for b in breakpoints)
        ps = tuple(p if isinstance(p, Poly) else Poly(_strip(p)) for p in pieces)
        if len(bps) != len(ps) + 1 and not (len(bps) == 1 and not ps):
            raise ValueError("need one piece per interval")
        if any(bps[i] >= bps[i + 1] for i in range(len(bps) - 1)):
            raise ValueError("breakpoints must be strictly increasing")
        return PiecewisePoly(bps, ps)._normalized()

    @staticmethod
    def zero(at=0) -> "PiecewisePoly":
        return PiecewisePoly((Rat(at),), ())

    def _normalized(self) -> "PiecewisePoly":
        bps, ps = list(self.breakpoints), list(self.pieces)
        # merge adjacent intervals carrying the same polynomial
        i = 0
        while i + 1 < len(ps):
            if ps[i] == ps[i + 1]:
                del ps[i + 1]
                del bps[i + 1]
            else:
                i += 1
        # trim identically-zero ends
        while ps and ps[0] == ZERO_POLY:
            del ps[0]
            del bps[0]
        while ps and ps[-1] == ZERO_POLY:
            del ps[-1]
            del bps[-1]
        if not ps:
            return PiecewisePoly((Rat(0),), ())
        return PiecewisePoly(tuple(bps), tuple(ps))

    @property
    def support(self):
        return self.breakpoints[0], self.breakpoints[-1]

    def __call__(self, x):
        x = Rat(x)
        bps = self.breakpoints
        if not self.pieces or x < bps[0] or x > bps[-1]:
            return Rat(0)
        i = bisect.bisect_right(bps, x) - 1
        if i == len(self.pieces):  # x == right end of the domain
            i -= 1
        return self.pieces[i](x)

    def integral(self):
        total = Rat(0)
        for i, p in enumerate(self.pieces):
            total += p.integrate(self.breakpoints[i], self.breakpoints[i + 1])
        return total

    def scale_arg(self, k) -> "PiecewisePoly":
        """The function x -> f(k*x) for k > 0."""
        k = Rat(k)
        if k <= 0:
            raise ValueError("positive scale required")
        bps = tuple(b / k for b in self.breakpoints)
        ps = tuple(p.compose_affine(k, 0) for p in self.pieces)
        return PiecewisePoly(bps, ps)._normalized()

    def is_continuous(self) -> bool:
        for i in range(1, len(self.pieces)):
            b = self.breakpoints[i]
            if self.pieces[i - 1](b) != self.pieces[i](b):
                return False
        return True

    def piece_at(self, x) -> Poly:
        """Polynomial on the interval containing x (0 outside the domain)."""
        x = Rat(x)
        if not self.pieces or x < self.breakpoints[0] or x >= self.breakpoints[-1]:
            return ZERO_POLY
        i = bisect.bisect_right(self.breakpoints, x) - 1
        return self.pieces[min(i, len(self.pieces) - 1)]


def pw_combine(f: PiecewisePoly, g: PiecewisePoly, op: str) -> PiecewisePoly:
    """Pointwise add/sub/mul with implicit 0 outside each domain."""
    if op not in ("add", "sub", "mul"):
        raise ValueError(f"unknown op {op!r}")
    cuts = sorted(set(f.breakpoints) | set(g.breakpoints))
    if len(cuts) == 1:
        return PiecewisePoly.zero(cuts[0])
    pieces = []
    for a, b in zip(cuts, cuts[1:]):
        mid = (a + b) / 2
        pf = f.piece_at(mid)
        pg = g.piece_at(mid)
        if op == "add":
            pieces.append(pf + pg)
        elif op == "sub":
            pieces.append(pf - pg)
        else:
            pieces.append(pf * pg)
    return PiecewisePoly(tuple(cuts), tuple(pieces))._normalized()


def pw_equal(f: PiecewisePoly, g: PiecewisePoly) -> bool:
    """Exact equality as functions on all of R."""
    diff = pw_combine(f, g, "sub")
    return not diff.pieces


def pw_to_json(f: PiecewisePoly) -> dict:
    return {
        "breakpoints": [rat_str(b) for b in f.breakpoints],
        "pieces": [[rat_str(c) for c in p.coeffs] for p in f.pieces],
    }


def pw_from_json(data: dict) -> PiecewisePoly:
    bps = [parse_rat(b) for b in data["breakpoints"]]
    ps = [Poly(_strip([parse_rat(c) for c in piece])) for piece in data["pieces"]]
    return PiecewisePoly.build(bps, ps)


# ---------------------------------------------------------------------------
# sectional volume of a polytope along its last coordinate
# ---------------------------------------------------------------------------

def sectional_volume_function(poly, *, allow_base_facets=False) -> PiecewisePoly:
    """t -> Vol_{d-1}(P intersect {z = t}) for a full-dimensional polytope.

    Breakpoints are the distinct last coordinates of the vertices; between
    consecutive breakpoints the slice volume is a polynomial of degree at
    most d-1, recovered exactly by interpolation at d interior rational
    samples and verified at one extra sample.

    A facet lying in a hyperplane {z = c} makes the slice function jump at
    that end of the support, so by default such polytopes are rejected with
    FacetParallelToBaseError.  Pass ``allow_base_facets=True`` to compute the
    (still piecewise-polynomial) function on the closed support anyway; the
    endpoint values are then not guaranteed to vanish.
    """
    from . import geometry  # local import to keep module layering flat

    dim = poly.dim
    if poly.pdim < dim:
        raise DegenerateError("sectional volume needs a full-dimensional polytope")
    if not allow_base_facets:
        for h in poly.halfspaces:
            if all(c == 0 for c in h.normal[:-1]):
                raise FacetParallelToBaseError(
                    "facet parallel to the slicing hyperplane; decompose first")

    def slice_volume(t):
        cut = []
        for h in poly.halfspaces:
            cut.append(geometry.HalfSpace(h.normal[:-1], h.offset - h.normal[-1] * t))
        try:
            sliced = geometry.vrep_from_hrep(cut, dim - 1)
        except (geometry.EmptyRegionError, UnboundedError):
            return Rat(0)
        return geometry.volume(sliced)

    levels = sorted(set(v[-1] for v in poly.vertices))
    pieces = []
    for a, b in zip(levels, levels[1:]):
        step = (b - a) / (dim + 1)
        samples = [(a + j * step, slice_volume(a + j * step)) for j in range(1, dim + 1)]
        piece = lagrange_interpolate(samples)
        check = a + step / 2
        if piece(check) != slice_volume(check):
            raise ArithmeticError(
                "sectional volume interpolation failed verification")
        pieces.append(piece)
    out = PiecewisePoly.build(levels, pieces)
    if not out.is_continuous():
        raise ArithmeticError("sectional volume function discontinuous")
    return out
