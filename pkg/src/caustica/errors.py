"""Exception types raised by the public API.

Every domain failure maps to one of these; the CLI prints
``<ClassName>: <message>`` and exits 1 when it catches a CausticaError.
"""


class CausticaError(Exception):
    """Base class for all domain errors."""


class PointInsideBody(CausticaError):
    """A construction point lies inside (or on) a body where it must be outside."""


class DegenerateBody(CausticaError):
    """The convex body is too degenerate for the requested operation."""


class StringTooShort(CausticaError):
    """String parameter does not exceed the caustic perimeter."""


class RootBracketFailure(CausticaError):
    """A root could not be bracketed; signals a geometry bug, not user error."""


class CausticNotInside(CausticaError):
    """A caustic sample lies outside the table it should be inscribed in."""


class AlphaOutOfRange(CausticaError):
    """Corner half-angle parameter outside its admissible interval."""


class InfeasibleAlpha(CausticaError):
    """alpha violates one of the two feasibility inequalities."""

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class MixingFailure(CausticaError):
    """The displacement integrals of the two mollified profiles do not straddle the target."""


class QuadratureNonConvergence(CausticaError):
    """Two quadrature resolutions disagree beyond tolerance."""


class DerivativeVanishes(CausticaError):
    """|p'(s)| fell below tolerance on a branch; branch extent is misconfigured."""


class OracleMismatch(CausticaError):
    """Strict-mode cross-check against an independent construction failed."""


class InsufficientResolution(CausticaError):
    """Table too coarse for the requested finite-difference stencils."""


class GrazingRay(CausticaError):
    """Launch angle within cutoff of the tangent direction."""


class NoIntersection(CausticaError):
    """A ray failed to hit the boundary; signals geometry corruption."""
