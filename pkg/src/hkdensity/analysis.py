"""Named invariants of toric pairs.

A toric pair is modelled by its base lattice polytope P of dimension d-1;
the associated graded ring never has to be touched, because every length
that enters the density function is a lattice count.  This module assembles:

* ``hkd_function`` -- the density function, equal to Vol(P) * z^{d-1} on
  [0, 1] and to the exact area of the sliced cone difference on [1, 1+l];
* ``e_hk`` -- its integral, the Hilbert-Kunz multiplicity;
* ``phi_function`` -- the unit-cell defect function, compactly supported and
  continuous, which controls the second-order growth of e_HK over powers of
  the maximal ideal;
* ``limit_A`` -- the growth coefficient Vol(P) * integral(phi);
* ``is_tiler`` / ``tiling_gap_B`` -- the exact translate-tiling criterion:
  the pair attains the minimal renormalized growth iff phi coincides with
  max(0, 1 - Vol(P) * t^{d-1});
* ``segre_phi`` -- the product rule (1 - phi_{XxY}) = (1 - phi_X)(1 - phi_Y).

Everything is exact; the only float in sight is the reported gap B, whose
fractional exponents force floating point for d >= 3 (its zero test is still
decided exactly).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import factorial

from . import geometry as geo
from . import regions
from .errors import DegenerateError, UnsupportedDimensionError
from .piecewise import PiecewisePoly, Poly, pw_combine, pw_equal
from .rationals import Rat, ceil_rat, floor_rat


@dataclass(frozen=True)
class ToricPair:
    """A projective toric pair, given by its base lattice polytope.

    ``d`` is the dimension of the associated graded ring (base dimension
    plus one) and ``l`` the number of vertices of the base polytope.
    """

    polytope: geo.LatticePolytope
    provenance: str = "vertices"

    def __post_init__(self):
        P = self.polytope
        if P.pdim != P.dim:
            raise DegenerateError("base polytope must be full-dimensional")
        if P.dim < 1 or P.dim > 4:
            raise UnsupportedDimensionError(
                f"base polytope dimension {P.dim} outside 1..4")

    @staticmethod
    def from_vertices(points, provenance="vertices") -> "ToricPair":
        return ToricPair(geo.lattice_hull(points), provenance)

    @staticmethod
    def from_fan(rays, coeffs) -> "ToricPair":
        return ToricPair(geo.polytope_from_divisor(rays, coeffs), "fan")

    @property
    def d(self) -> int:
        return self.polytope.dim + 1

    @property
    def l(self) -> int:
        return len(self.polytope.vertices)

    def scaled(self, k: int) -> "ToricPair":
        """The pair of the dilated polytope k*P (the k-th multiple divisor)."""
        if int(k) != k or k < 1:
            raise ValueError("positive integer multiple required")
        return ToricPair(geo.scale(self.polytope, Rat(int(k))), self.provenance)


@dataclass(frozen=True)
class SegrePair:
    """Product of toric pairs; invariants multiply along the factors."""

    factors: tuple

    def __post_init__(self):
        if len(self.factors) < 2:
            raise ValueError("a product needs at least two factors")

    @property
    def polytope(self):
        polys = [f.polytope for f in self.factors]
        return reduce(geo.product, polys)

    @property
    def d(self) -> int:
        return sum(f.d - 1 for f in self.factors) + 1

    @property
    def l(self) -> int:
        out = 1
        for f in self.factors:
            out *= f.l
        return out


def segre(*pairs) -> SegrePair:
    return SegrePair(tuple(pairs))


def pair_volume(pair):
    """Base-polytope volume; multiplicative over products."""
    if isinstance(pair, SegrePair):
        out = Rat(1)
        for f in pair.factors:
            out *= pair_volume(f)
        return out
    return geo.volume(pair.polytope)


def e0(pair):
    """Embedding degree (d-1)! * Vol(P), the Hilbert-Samuel multiplicity."""
    return factorial(pair.d - 1) * pair_volume(pair)


def h0(pair) -> int:
    """Number of lattice points of the base polytope (section count)."""
    if isinstance(pair, SegrePair):
        out = 1
        for f in pair.factors:
            out *= h0(f)
        return out
    return len(geo.lattice_points(pair.polytope))


def _as_direct_pair(pair):
    """Materialize a product as a direct pair when its base fits dim 1..2."""
    if isinstance(pair, ToricPair):
        if pair.polytope.dim > 2:
            raise UnsupportedDimensionError(
                "density function needs base dimension 1 or 2; "
                "use a product form or the counting oracle")
        return pair
    P = pair.polytope
    if P.dim > 2:
        raise UnsupportedDimensionError(
            "density function of a product with base dimension >= 3; "
            "only phi/limit are available (via the product rule)")
    return ToricPair(P, "segre")


@lru_cache(maxsize=256)
def _hkd_cached(pair: ToricPair) -> PiecewisePoly:
    P = pair.polytope
    dm1 = P.dim
    vol = geo.volume(P)
    head = Poly(tuple([Rat(0)] * dm1 + [vol]))  # vol * z^{d-1}
    fam = regions.hk_family(P)
    tail = regions.family_volume_function(fam, 0, pair.l, vanish_monotone=True)
    if tail(0) != vol:
        raise ArithmeticError("density function discontinuous at level 1")
    bps = [Rat(0), Rat(1)]
    pieces = [head]
    for i, piece in enumerate(tail.pieces):
        # reparameterize the tail from t to z = 1 + t
        bps.append(tail.breakpoints[i + 1] + 1)
        pieces.append(piece.compose_affine(1, -1))
    out = PiecewisePoly.build(bps, pieces)
    if not out.is_continuous():
        raise ArithmeticError("density function fails exact continuity")
    return out


def hkd_function(pair) -> PiecewisePoly:
    """Exact density function on [0, 1+l] (identically 0 afterwards)."""
    return _hkd_cached(_as_direct_pair(pair))


def e_hk(pair):
    """Hilbert-Kunz multiplicity: the exact integral of the density."""
    return hkd_function(pair).integral()


def cell_cover_scale(pair) -> int:
    """Least positive integer r such that r*P contains some integer
    translate of the unit cell; phi vanishes at and beyond r."""
    pair = _as_direct_pair(pair)
    P = regions.anchored(pair.polytope)
    dim = P.dim
    corners = list(itertools.product((0, 1), repeat=dim))
    for r in range(1, 65):
        big = geo.scale(P, Rat(r))
        lo, hi = big.bounding_box()
        ranges = [range(ceil_rat(lo[i]), floor_rat(hi[i]) + 1) for i in range(dim)]
        for v in itertools.product(*ranges):
            if all(big.contains(tuple(Rat(v[i] + c[i]) for i in range(dim)))
                   for c in corners):
                return r
    raise ArithmeticError("no reasonable cell-covering multiple found")


@lru_cache(maxsize=256)
def _phi_cached(pair: ToricPair) -> PiecewisePoly:
    P = pair.polytope
    r = cell_cover_scale(pair)
    fam = regions.phi_family(P, Rat(r))
    phi = regions.family_volume_function(fam, 0, Rat(r), vanish_monotone=True)
    if phi(0) != 1:
        raise ArithmeticError("defect function must start at 1")
    return phi


def phi_function(pair) -> PiecewisePoly:
    """Unit-cell defect function phi: compactly supported, continuous,
    with phi(0) = 1.  For products it is combined multiplicatively."""
    if isinstance(pair, SegrePair):
        return reduce(segre_phi, (phi_function(f) for f in pair.factors))
    if pair.polytope.dim > 2:
        raise UnsupportedDimensionError(
            "direct defect function needs base dimension 1 or 2; "
            "express the pair as a product or use the counting oracle")
    return _phi_cached(pair)


def phi_scaled(pair, k: int) -> PiecewisePoly:
    """Defect function of the k-th multiple divisor: t -> phi(k*t)."""
    if int(k) != k or k < 1:
        raise ValueError("positive integer multiple required")
    return phi_function(pair).scale_arg(Rat(int(k)))


def phi_integral(pair):
    return phi_function(pair).integral()


def limit_A(pair):
    """Second-order growth coefficient of e_HK over powers of the maximal
    ideal: Vol(P) times the integral of phi."""
    return pair_volume(pair) * phi_integral(pair)


def segre_phi(f: PiecewisePoly, g: PiecewisePoly) -> PiecewisePoly:
    """Product rule: phi of a product pair is f + g - f*g."""
    return pw_combine(pw_combine(f, g, "add"), pw_combine(f, g, "mul"), "sub")


def is_tiler(pair) -> bool:
    """Whether translates of a dilate of P tile space with the integer
    lattice.  Decided exactly: phi >= max(0, 1 - Vol * t^{d-1}) always
    holds, with equality (as functions) precisely in the tiling case, so it
    suffices to compare phi with 1 - Vol * t^{d-1} on phi's support."""
    phi = phi_function(pair)
    dm1 = pair.d - 1
    vol = pair_volume(pair)
    support_end = phi.breakpoints[-1]
    bound = Poly(tuple([Rat(1)] + [Rat(0)] * (dm1 - 1) + [-vol]))
    return pw_equal(phi, PiecewisePoly.build(
        [Rat(0), support_end], [bound]))


def tiling_gap_B(pair) -> float:
    """Distance of the renormalized growth coefficient from its universal
    lower bound: e0^((2-d)/(d-1)) * A - ((d-1)/d) * ((d-1)!)^((2-d)/(d-1)).

    Exactly 0.0 in the tiling case (decided by the exact phi identity);
    otherwise a positive float (the fractional exponents force floating
    point once d >= 3).
    """
    if is_tiler(pair):
        return 0.0
    d = pair.d
    a = float(limit_A(pair))
    expo = (2 - d) / (d - 1)
    return (float(e0(pair)) ** expo) * a - ((d - 1) / d) * float(
        factorial(d - 1)) ** expo


def veronese_expansion(pair, k: int = 1):
    """Leading coefficients (e0/d!, A) of the growth of e_HK over the k-th
    power of the maximal ideal: e_HK = (e0/d!)*k^d + A*k^{d-1} + o(k^{d-1}).

    The coefficients do not depend on k; the argument is validated for
    interface symmetry with the exact power computation ``ehk_power``.
    """
    if int(k) != k or k < 1:
        raise ValueError("positive integer power required")
    return e0(pair) / factorial(pair.d), limit_A(pair)


def ehk_power(pair, k: int):
    """Exact e_HK of the ring with respect to the k-th power of the maximal
    ideal, via the multiple-divisor identity e_HK(R, m^k) = k * e_HK(X, kD)."""
    if int(k) != k or k < 1:
        raise ValueError("positive integer power required")
    direct = _as_direct_pair(pair)
    return Rat(int(k)) * e_hk(direct.scaled(int(k)))


@dataclass(frozen=True)
class HKReport:
    """All computed invariants of one pair."""

    d: int
    l: int
    e0: object           # Rat
    h0: int
    hkd: PiecewisePoly   # None when the base dimension exceeds 2
    e_hk: object         # Rat or None
    phi: PiecewisePoly
    phi_integral: object
    limit_A: object
    tiling_gap_B: float
    is_tiler: bool


def hk_report(pair) -> HKReport:
    phi = phi_function(pair)
    try:
        hkd = hkd_function(pair)
        ehk = hkd.integral()
    except UnsupportedDimensionError:
        hkd, ehk = None, None
    return HKReport(
        d=pair.d,
        l=pair.l,
        e0=e0(pair),
        h0=h0(pair),
        hkd=hkd,
        e_hk=ehk,
        phi=phi,
        phi_integral=phi.integral(),
        limit_A=limit_A(pair),
        tiling_gap_B=tiling_gap_B(pair),
        is_tiler=is_tiler(pair),
    )
