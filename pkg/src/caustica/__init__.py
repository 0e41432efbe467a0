"""Convex billiards from the caustic side.

Build convex tables whose billiard dynamics admits a prescribed caustic (the
taut-string construction over any convex body), simulate the billiard map
with rotation-number and caustic-tangency diagnostics, and construct an
explicit C2-smooth table possessing a caustic with four corners.

Hot loops run through numba-compiled kernels when numba is importable; set
``CAUSTICA_BACKEND=numpy`` to force the pure-numpy fallback and
``CAUSTICA_THREADS`` to cap compiled-kernel parallelism.
"""

from .billiard import (OrbitRecord, PhaseState, billiard_map,
                       caustic_tangent_state, orbit, rotation_number,
                       verify_caustic)
from .curves import SampledCurve, sup_distance
from .errors import (AlphaOutOfRange, CausticNotInside, CausticaError,
                     DegenerateBody, DerivativeVanishes, GrazingRay,
                     InfeasibleAlpha, InsufficientResolution, MixingFailure,
                     NoIntersection, OracleMismatch, PointInsideBody,
                     QuadratureNonConvergence, RootBracketFailure,
                     StringTooShort)
from .geom import (ConvexBody, as_point, cap_body_perimeter,
                   cap_body_perimeters, convex_hull, half_dot,
                   tangent_points_from)
from .kernels import BACKEND
from .stringtable import StringParams, string_invariant, string_table
from .switched import (FeasibilityResult, GammaCurve, PhiFunction,
                       SmoothnessRow, SwitchedConfig, SwitchedTable,
                       build_gamma, build_phi, explicit_table, feasibility,
                       feasibility_window, germ_coeffs, smoothness_report,
                       string_lengths)

__version__ = "0.1.0"

__all__ = [
    "AlphaOutOfRange", "BACKEND", "CausticNotInside", "CausticaError",
    "ConvexBody", "DegenerateBody", "DerivativeVanishes", "FeasibilityResult",
    "GammaCurve", "GrazingRay", "InfeasibleAlpha", "InsufficientResolution",
    "MixingFailure", "NoIntersection", "OracleMismatch", "OrbitRecord",
    "PhaseState", "PhiFunction", "PointInsideBody",
    "QuadratureNonConvergence", "RootBracketFailure", "SampledCurve",
    "SmoothnessRow", "StringParams", "StringTooShort", "SwitchedConfig",
    "SwitchedTable", "as_point", "billiard_map", "build_gamma", "build_phi",
    "cap_body_perimeter", "cap_body_perimeters", "caustic_tangent_state",
    "convex_hull", "explicit_table", "feasibility", "feasibility_window",
    "germ_coeffs", "half_dot", "orbit", "rotation_number",
    "smoothness_report", "string_invariant", "string_lengths",
    "string_table", "sup_distance", "tangent_points_from", "verify_caustic",
]
