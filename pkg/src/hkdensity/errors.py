"""Engine error hierarchy.

Every error carries a stable machine-readable ``code`` that the CLI emits in
its error JSON; exit status is nonzero exactly when one of these is raised.
"""

from __future__ import annotations


class EngineError(Exception):
    """Base class for all engine errors."""

    code = "engine_error"


class UnboundedError(EngineError):
    """Half-space intersection has a nontrivial recession cone."""

    code = "unbounded"


class EmptyRegionError(EngineError):
    """Half-space system is infeasible."""

    code = "empty"


class DegenerateError(EngineError):
    """Polytope is not full-dimensional where full dimension is required."""

    code = "degenerate"


class NonIntegralVertexError(EngineError):
    """Divisor data produced a rational, non-lattice polytope.

    The rational polytope is attached so the caller may still proceed.
    """

    code = "non_integral_vertex"

    def __init__(self, message, polytope=None):
        super().__init__(message)
        self.polytope = polytope


class NegativeScaleError(EngineError):
    code = "negative_scale"


class DimMismatchError(EngineError):
    code = "dim_mismatch"


class FacetParallelToBaseError(EngineError):
    """A facet lies in a hyperplane parallel to the slicing hyperplane."""

    code = "facet_parallel_to_base"


class UnsupportedDimensionError(EngineError):
    """Exact slicing engine only covers base polytopes of dimension 1 or 2."""

    code = "unsupported_dimension"


class BreakpointVerificationError(EngineError):
    """Interpolation self-check failed even after event enrichment/bisection."""

    code = "breakpoint_verification_failed"


class SpecParseError(EngineError):
    """Malformed input describing a toric pair."""

    code = "parse_error"
