"""Table with a square-symmetric 4-corner caustic, built by switched branches.

The caustic gamma is a closed convex curve with corners at the four points
i^k * A, A = (-1, -1), assembled from rotated copies of one quarter arc
gamma0.  The quarter is the antiderivative of exp{i(phi(t) - alpha)} where
phi is a C-infinity strictly increasing tangent-angle profile with a
prescribed 2-jet at 0, total turn 2*alpha, mirror symmetry about its
midpoint, and a displacement normalization that closes the quarter exactly
onto the next corner.

The table is evaluated in closed form from the caustic: between switching
events the taut string pins one tangency at a corner while the other rolls
along the quarter, which gives a tangent-line parametrization
point = gamma - (p/p') * gamma' with p an explicit quadratic in arc length.
Two branch kinds alternate (corner pinned behind vs. ahead of the rolling
tangency); eight rotated branch pieces assemble into the closed table, and
the junctions between pieces are the switching points whose smoothness
`smoothness_report` measures.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curves import SampledCurve, sup_distance
from .errors import (AlphaOutOfRange, DerivativeVanishes, InfeasibleAlpha,
                     InsufficientResolution, MixingFailure, OracleMismatch,
                     QuadratureNonConvergence)
from .quadrature import PanelQuadrature

__all__ = [
    "CORNER_A", "CORNER_B", "FeasibilityResult", "SwitchedConfig",
    "PhiFunction", "GammaCurve", "SwitchedTable", "SmoothnessRow",
    "string_lengths", "germ_coeffs", "feasibility", "feasibility_window",
    "build_phi", "build_gamma", "explicit_table", "smoothness_report",
]

CORNER_A = -1.0 - 1.0j
CORNER_B = 1.0 - 1.0j  # = i * CORNER_A

# second kind: corner term B, base s + 2*ell, pinned tangency behind the roll
# first kind:  corner term A, base s - 2*ell_hat, pinned tangency ahead
KIND_SECOND = 0
KIND_FIRST = 1
_KIND_NAMES = ("second", "first")

# counterclockwise piece order starting on the lower-right diagonal:
# (kind, k) evaluates as i^k * branch_kind(s), s in [0, s_hat]
_PIECES = ((1, 0), (0, 2), (1, 1), (0, 3), (1, 2), (0, 0), (1, 3), (0, 1))

_BISECT_ITERS = 80


def _check_alpha(alpha: float, hi: float) -> float:
    alpha = float(alpha)
    if not np.isfinite(alpha) or not 0.0 < alpha < hi:
        raise AlphaOutOfRange(f"alpha = {alpha!r} outside (0, {hi:.6g})")
    return alpha


def string_lengths(alpha: float) -> tuple[float, float, float]:
    """Tangent-segment lengths (ell, ell_hat) and quarter length s_hat.

    ell is the distance from the table's axis crossing to the corner it is
    tangent from; ell_hat the same for the diagonal crossing. s_hat may come
    out non-positive; callers gate on `feasibility`.
    """
    alpha = _check_alpha(alpha, np.pi / 4)
    ell = 1.0 / np.sin(alpha)
    ell_hat = np.sqrt(2.0) / np.sin(np.pi / 4 - alpha)
    return ell, ell_hat, 2.0 * ell_hat - 2.0 * ell


def germ_coeffs(alpha: float) -> tuple[float, float]:
    """Taylor jet (phi1, phi2) of phi at 0 making both switch kinds order-2 clean.

    phi(s) = phi1*s + phi2*s^2 + O(s^3). These are the unique nonzero
    coefficients for which the one-sided second derivatives of the table in
    the construction parameter agree at both junction kinds:
        phi1*(1 - phi1/cos a) + 2*phi2/sin a = 0
        phi1*(1 - 2*phi1/(cos a + sin a)) - 4*phi2/(cos a - sin a) = 0
    Closed form: phi1 = cos(a)(1 + sin 2a)/2, phi2 = -cos^2(2a) sin(2a)/16.
    Note phi1 = kappa(0) and 2*phi2 = kappa'(0) of the quarter arc.
    """
    alpha = _check_alpha(alpha, np.pi / 2)
    phi1 = 0.5 * np.cos(alpha) * (1.0 + np.sin(2.0 * alpha))
    phi2 = -np.cos(2.0 * alpha) ** 2 * np.sin(2.0 * alpha) / 16.0
    return phi1, phi2


@dataclass(frozen=True)
class FeasibilityResult:
    feasible: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.feasible


def _upper_margin(alpha):
    # corner cone must fit both switch events: pi/2 - 2a > 2a
    return np.pi / 2 - 4.0 * alpha


def _lower_margin(alpha):
    # quarter length exceeds the corner-to-corner distance: s_hat > 2
    sa, ca = np.sin(alpha), np.cos(alpha)
    return (3.0 * sa - ca) - (ca * sa - sa * sa)


def feasibility(alpha: float) -> FeasibilityResult:
    """Whether the construction admits this alpha, with the violated bound."""
    alpha = _check_alpha(alpha, np.pi / 4)
    if _upper_margin(alpha) <= 0.0:
        return FeasibilityResult(False, "alpha >= pi/8")
    if _lower_margin(alpha) <= 0.0:
        return FeasibilityResult(
            False,
            "3*sin(alpha) - cos(alpha) <= cos(alpha)*sin(alpha) - sin(alpha)^2")
    return FeasibilityResult(True)


def _bisect_root(fn, lo: float, hi: float) -> float:
    flo = fn(lo)
    if flo * fn(hi) > 0.0:
        raise ValueError("feasibility bisection bracket does not straddle a root")
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        if flo * fn(mid) <= 0.0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


def feasibility_window() -> tuple[float, float]:
    """(lo, hi) alpha interval where `feasibility` holds, by bisection."""
    lo = _bisect_root(_lower_margin, 0.3, 0.45)
    hi = _bisect_root(_upper_margin, 0.3, 0.6)
    return lo, hi


@dataclass(frozen=True)
class SwitchedConfig:
    alpha: float
    ell: float
    ell_hat: float
    s_hat: float
    phi1: float
    phi2: float
    A: complex = CORNER_A
    B: complex = CORNER_B

    @classmethod
    def from_alpha(cls, alpha: float) -> "SwitchedConfig":
        result = feasibility(alpha)
        if not result.feasible:
            raise InfeasibleAlpha(result.reason)
        ell, ell_hat, s_hat = string_lengths(alpha)
        phi1, phi2 = germ_coeffs(alpha)
        return cls(float(alpha), ell, ell_hat, s_hat, phi1, phi2)

    @property
    def string_parameter(self) -> float:
        """Total string length S of the construction: 2*ell + 3*s_hat."""
        return 2.0 * self.ell + 3.0 * self.s_hat


# -- phi profile -----------------------------------------------------------

def _exp_tail(x):
    x = np.asarray(x, dtype=np.float64)
    out = np.zeros_like(x)
    pos = x > 0.0
    np.exp(-1.0 / np.where(pos, x, 1.0), where=pos, out=out)
    return out


def _smooth_step(x):
    """C-infinity step: 0 for x <= 0, 1 for x >= 1, flat at both ends."""
    a = _exp_tail(x)
    return a / (a + _exp_tail(1.0 - x))


def _bump(x):
    """C-infinity bump supported on (0, 1)."""
    x = np.asarray(x, dtype=np.float64)
    inside = (x > 0.0) & (x < 1.0)
    t = np.where(inside, x * (1.0 - x), 1.0)
    return np.where(inside, np.exp(-1.0 / t), 0.0)


class _WProfile:
    """Closed-form phi' on the half interval [0, mid], mid = s_hat/2.

    Zones: exact germ density phi1 + 2*phi2*s on [0, eps/2]; C-infinity blend
    down to a small constant floor on [eps/2, eps]; an early bump on
    [eps, eps+delta] and a late bump on [mid-2*delta, mid-delta] whose
    weights u_plus/u_minus are set by the caller; constant floor elsewhere,
    including a flat tail at mid so the mirrored extension is C-infinity.
    """

    def __init__(self, germ, kappa_base, eps, delta, mid):
        self.phi1, self.phi2 = germ
        self.kappa_base = kappa_base
        self.eps = eps
        self.delta = delta
        self.mid = mid
        self.u_plus = 0.0
        self.u_minus = 0.0

    @property
    def zone_edges(self):
        e, d, m = self.eps, self.delta, self.mid
        return np.array([0.0, 0.5 * e, e, e + d, m - 2.0 * d, m - d, m])

    def base(self, s):
        s = np.asarray(s, dtype=np.float64)
        germ = self.phi1 + 2.0 * self.phi2 * s
        step = _smooth_step((s - 0.5 * self.eps) / (0.5 * self.eps))
        return germ * (1.0 - step) + self.kappa_base * step

    def bump_plus(self, s):
        s = np.asarray(s, dtype=np.float64)
        return _bump((s - self.eps) / self.delta)

    def bump_minus(self, s):
        s = np.asarray(s, dtype=np.float64)
        return _bump((s - (self.mid - 2.0 * self.delta)) / self.delta)

    def __call__(self, s):
        return (self.base(s) + self.u_plus * self.bump_plus(s)
                + self.u_minus * self.bump_minus(s))


def _half_rule(profile: _WProfile) -> PanelQuadrature:
    z = profile.zone_edges
    counts = (1, 2, 12, 8, 12, 2)
    edges = [np.array([0.0])]
    for (a, b), cnt in zip(zip(z[:-1], z[1:]), counts):
        edges.append(np.linspace(a, b, cnt + 1)[1:])
    return PanelQuadrature(np.concatenate(edges))


class PhiFunction:
    """Tangent-angle profile phi on [0, s_hat] with its derivative.

    phi(0) = 0, phi(s_hat) = 2*alpha, phi(s_hat - s) = 2*alpha - phi(s),
    strictly increasing, C-infinity, with phi'(0) = germ[0] and
    phi''(0) = 2*germ[1]; the half-arc horizontal displacement
    integral of cos(phi - alpha) over [0, s_hat/2] equals 1.
    """

    def __init__(self, profile: _WProfile, quad: PanelQuadrature, alpha: float,
                 s_hat: float, germ, mixing_weight: float):
        self._profile = profile
        self._quad = quad
        self._prefix = quad.prefix(profile(quad.nodes))
        self.alpha = alpha
        self.s_hat = s_hat
        self.germ = (float(germ[0]), float(germ[1]))
        self.mixing_weight = float(mixing_weight)
        self.eps = profile.eps
        self.delta = profile.delta
        self.grid_s = np.linspace(0.0, s_hat, 2049)
        self.grid_phi = self(self.grid_s)

    def _fold(self, s):
        s = np.asarray(s, dtype=np.float64)
        if np.any(s < -1e-12) or np.any(s > self.s_hat + 1e-12):
            raise ValueError("phi evaluated outside [0, s_hat]")
        s = np.clip(s, 0.0, self.s_hat)
        hi = s > 0.5 * self.s_hat
        return np.where(hi, self.s_hat - s, s), hi

    def __call__(self, s):
        scalar = np.isscalar(s)
        u, hi = self._fold(s)
        val = self._quad.cumulative(self._profile, u, self._prefix)
        out = np.where(hi, 2.0 * self.alpha - val, val)
        return float(out[0]) if scalar and out.ndim == 1 else out

    def derivative(self, s):
        scalar = np.isscalar(s)
        u, _hi = self._fold(s)
        out = self._profile(u)
        return float(out[0]) if scalar and out.ndim == 1 else out


def build_phi(config: SwitchedConfig, eps: float | None = None,
              delta: float | None = None, germ=None) -> PhiFunction:
    """Construct the C-infinity profile phi for the caustic quarter.

    Two admissible profiles are mixed: one spends the turn budget right
    after the germ zone, one right before the midpoint. The mixing weight
    is found by bisection so the half-arc lands exactly on the mirror axis
    (horizontal displacement 1). `germ` overrides the config jet, used for
    probing how the table degrades when the jet is detuned.
    """
    result = feasibility(config.alpha)
    if not result.feasible:
        raise InfeasibleAlpha(result.reason)
    mid = 0.5 * config.s_hat
    eps = config.s_hat / 100.0 if eps is None else float(eps)
    delta = config.s_hat / 50.0 if delta is None else float(delta)
    if not (0.0 < eps and 0.0 < delta):
        raise ValueError("eps and delta must be positive")
    if eps + delta >= mid - 2.0 * delta:
        raise ValueError("mollifier zones overlap: shrink eps/delta")
    if germ is None:
        germ = (config.phi1, config.phi2)
    phi1 = float(germ[0])
    if phi1 <= 0.0:
        raise ValueError("germ slope must be positive")

    profile = _WProfile((phi1, float(germ[1])), 0.01 * phi1, eps, delta, mid)
    quad = _half_rule(profile)
    base_vals = profile.base(quad.nodes)
    bp_vals = profile.bump_plus(quad.nodes)
    bm_vals = profile.bump_minus(quad.nodes)
    area_base = quad.integrate(base_vals)
    area_bp = quad.integrate(bp_vals)
    area_bm = quad.integrate(bm_vals)
    budget = config.alpha - area_base
    if budget <= 0.0:
        raise MixingFailure(
            f"germ and floor already turn {area_base:.6f} >= alpha")

    # phi_l at the nodes is linear in the mixing weight l
    flat = quad.flat_nodes
    cum_base = quad.cumulative(profile.base, flat, quad.prefix(base_vals))
    cum_bp = quad.cumulative(profile.bump_plus, flat, quad.prefix(bp_vals))
    cum_bm = quad.cumulative(profile.bump_minus, flat, quad.prefix(bm_vals))

    def displacement(l):
        phi_vals = (cum_base + (1.0 - l) * budget / area_bp * cum_bp
                    + l * budget / area_bm * cum_bm)
        return quad.integrate(np.cos(phi_vals - config.alpha)) - 1.0

    d_plus, d_minus = displacement(0.0), displacement(1.0)
    if not d_plus > 0.0 > d_minus:
        raise MixingFailure(
            f"displacements {d_plus + 1.0:.6f} (early) and {d_minus + 1.0:.6f} "
            "(late) do not straddle 1")
    lo, hi = 0.0, 1.0
    for _ in range(_BISECT_ITERS):
        l = 0.5 * (lo + hi)
        if displacement(l) > 0.0:
            lo = l
        else:
            hi = l
    l = 0.5 * (lo + hi)
    profile.u_plus = (1.0 - l) * budget / area_bp
    profile.u_minus = l * budget / area_bm

    phi = PhiFunction(profile, quad, config.alpha, config.s_hat, germ, l)
    _verify_phi(phi, profile, quad, config)
    return phi


def _verify_phi(phi, profile, quad, config):
    fine = quad.refined(2)
    total = fine.integrate(profile(fine.nodes))
    if abs(total - config.alpha) > 1e-10:
        raise QuadratureNonConvergence(
            f"half-turn integral off by {total - config.alpha:.3e} on refinement")
    disp = fine.integrate(np.cos(fine.cumulative(
        profile, fine.flat_nodes, fine.prefix(profile(fine.nodes)))
        - config.alpha))
    if abs(disp - 1.0) > 1e-10:
        raise QuadratureNonConvergence(
            f"displacement off by {disp - 1.0:.3e} on refinement")
    if profile(quad.flat_nodes).min() <= 0.0:
        raise MixingFailure("phi' not strictly positive after mixing")


# -- caustic ---------------------------------------------------------------

class GammaCurve(SampledCurve):
    """Sampled caustic carrying its exact quarter evaluators."""

    def __init__(self, *args, config=None, phi=None, gamma0=None,
                 dgamma0=None, **kwargs):
        super().__init__(*args, **kwargs)
        self.config = config
        self.phi = phi
        self.gamma0 = gamma0
        self.dgamma0 = dgamma0


def build_gamma(phi: PhiFunction, config: SwitchedConfig,
                samples_per_quarter: int = 1024) -> GammaCurve:
    """Integrate the tangent field into the quarter arc and assemble the caustic.

    The quarter runs from corner A to corner i*A; the full closed caustic is
    the four rotated copies i^k * quarter with corner turning angle
    pi/2 - 2*alpha at each corner.
    """
    s_hat = config.s_hat
    half = _half_rule(phi._profile)
    edges = np.concatenate([half.edges, s_hat - half.edges[-2::-1]])
    quad = PanelQuadrature(edges)

    def tangent_field(t):
        return np.exp(1j * (phi(t) - config.alpha))

    prefix = quad.prefix(tangent_field(quad.nodes))

    def gamma0(s):
        return config.A + quad.cumulative(tangent_field, s, prefix)

    closure = gamma0(s_hat) - config.B
    fine = quad.refined(2)
    closure_fine = (config.A + fine.cumulative(
        tangent_field, np.array([s_hat]),
        fine.prefix(tangent_field(fine.nodes)))[0]) - config.B
    if abs(closure - closure_fine) > 1e-10:
        raise QuadratureNonConvergence(
            f"quarter endpoint moved {abs(closure - closure_fine):.3e} on refinement")
    if abs(closure) > 1e-8:
        raise QuadratureNonConvergence(
            f"quarter endpoint misses the next corner by {abs(closure):.3e}")

    m = int(samples_per_quarter)
    if m < 8:
        raise ValueError("samples_per_quarter must be >= 8")
    grid = s_hat * np.arange(m) / m
    pts_q = gamma0(grid)
    tan_q = tangent_field(grid)
    rots = 1j ** np.arange(4)
    points = np.concatenate([r * pts_q for r in rots])
    tangents = np.concatenate([r * tan_q for r in rots])
    s_all = np.concatenate([k * s_hat + grid for k in range(4)])
    corner_idx = np.arange(4) * m
    # incoming tangent at corner k is the previous quarter's end tangent
    corner_in = rots * (-1j) * np.exp(1j * config.alpha)
    curve = GammaCurve(
        s_all, points, tangents / np.abs(tangents), 4.0 * s_hat,
        closed=True, corner_indices=corner_idx, corner_in_tangents=corner_in,
        config=config, phi=phi, gamma0=gamma0, dgamma0=tangent_field)
    turns = curve.turning_angles()
    off_corner = np.delete(turns, corner_idx)
    if off_corner.min() < -1e-12:
        raise QuadratureNonConvergence("caustic lost convexity between corners")
    return curve


# -- table -----------------------------------------------------------------

class _Branch:
    """One switch branch: tangent-line points off the rolling tangency."""

    def __init__(self, kind: int, gamma: GammaCurve, config: SwitchedConfig):
        self.kind = kind
        self.gamma = gamma
        self.config = config
        if kind == KIND_SECOND:
            self.corner = config.B
            self.base0 = 2.0 * config.ell
        else:
            self.corner = config.A
            self.base0 = -2.0 * config.ell_hat

    def __call__(self, s):
        """(point, unit_tangent, speed, t) arrays at quarter parameters s."""
        s = np.asarray(s, dtype=np.float64)
        g = self.gamma.gamma0(s)
        dg = self.gamma.dgamma0(s)
        v = g + self.corner
        base = s + self.base0
        p = 0.5 * (base * base - (v * v.conjugate()).real)
        pp = base - (dg * v.conjugate()).real
        if np.abs(pp).min() < 1e-6:
            raise DerivativeVanishes(
                f"|p'| = {np.abs(pp).min():.3e} on the {_KIND_NAMES[self.kind]} branch")
        t = p / pp
        point = g - t * dg
        c = (1j * dg * v.conjugate()).real / pp
        root = np.sqrt(1.0 + c * c)
        dphi = self.gamma.phi.derivative(s)
        speed = np.abs(t) * dphi * root
        tangent = np.sign(t) * dg * (-c - 1j) / root
        return point, tangent, speed, t


class SwitchedTable(SampledCurve):
    """Assembled table carrying its branch evaluators and junction layout."""

    def __init__(self, *args, config=None, gamma_curve=None, branches=None,
                 piece_layout=None, junction_arcs=None, junction_kinds=None,
                 **kwargs):
        super().__init__(*args, **kwargs)
        self.config = config
        self.gamma_curve = gamma_curve
        self._branches = branches
        self.piece_layout = piece_layout
        self.junction_arcs = junction_arcs
        self.junction_kinds = junction_kinds

    def piece_point(self, piece: int, s):
        """Exact branch point(s) of piece `piece` at quarter parameter(s) s."""
        kind, k = self.piece_layout[piece % len(self.piece_layout)]
        point, _t, _sp, _tt = self._branches[kind](s)
        return 1j ** k * point

    def branch(self, kind: int) -> _Branch:
        return self._branches[kind]


def _tangent_weighted_knots(branches, s_hat, m):
    """Construction-parameter knots for one piece, concentrated where the
    tangent's third arc-derivative is large: the germ and bump tails push
    |T'''| to ~1e5 while the rest of the piece sits near 1e-3, and uniform
    placement would starve the cubic interpolant exactly where billiard
    reflections need it. The first-kind knots are the exact mirror of the
    second-kind ones, matching the mirror relation between the branches."""
    n_probe = max(4096, min(16 * m, 65536))
    s_grid = s_hat * np.arange(n_probe + 1) / n_probe
    h = s_hat / n_probe
    w = {}
    speed0 = None
    for kind in (KIND_SECOND, KIND_FIRST):
        _pt, T, speed, _t = branches[kind](s_grid)
        fd = np.abs(T[4:] - 2.0 * T[3:-1] + 2.0 * T[1:-3] - T[:-4]) / (2.0 * h**3)
        d3 = np.concatenate([fd[:1], fd[:1], fd, fd[-1:], fd[-1:]])
        w[kind] = np.cbrt(d3 / speed**3 + 3.0)
        if kind == KIND_SECOND:
            speed0 = speed
    wsym = np.maximum(w[KIND_SECOND], w[KIND_FIRST][::-1])
    dens = wsym * speed0
    w_cum = np.concatenate([[0.0], np.cumsum(0.5 * (dens[1:] + dens[:-1]) * h)])
    levels = w_cum[-1] * np.arange(m + 1) / m
    s0 = np.interp(levels, w_cum, s_grid)
    return {KIND_SECOND: s0[:m], KIND_FIRST: (s_hat - s0[::-1])[:m]}


def explicit_table(gamma: GammaCurve, config: SwitchedConfig,
                   samples_per_piece: int = 1024,
                   strict: bool = False) -> SwitchedTable:
    """Assemble the closed table from the eight rotated branch pieces.

    Pieces alternate first/second kind counterclockwise starting at the
    lower-right diagonal crossing; every piece spans one quarter parameter
    range [0, s_hat] and carries samples_per_piece samples placed along the
    piece's arc with density following the tangent's third derivative, so the
    Hermite interpolant holds its accuracy through the narrow high-curvature-
    variation zones. With strict=True the result is checked against the
    generic taut-string construction on the same caustic.
    """
    if gamma.config is not config and gamma.config != config:
        raise ValueError("gamma was built with a different config")
    m = int(samples_per_piece)
    if m < 16:
        raise ValueError("samples_per_piece must be >= 16")
    s_hat = config.s_hat
    branches = (_Branch(KIND_SECOND, gamma, config),
                _Branch(KIND_FIRST, gamma, config))

    half = _half_rule(gamma.phi._profile)
    edges = np.concatenate([half.edges, s_hat - half.edges[-2::-1]])
    quad = PanelQuadrature(edges)

    knots = _tangent_weighted_knots(branches, s_hat, m)
    per_kind = {}
    for kind in (KIND_SECOND, KIND_FIRST):
        br = branches[kind]

        def speed_fn(s, br=br):
            return br(s)[2]

        prefix = quad.prefix(speed_fn(quad.nodes))
        s_j = knots[kind]
        targets = quad.cumulative(speed_fn, s_j, prefix)
        targets[0] = 0.0
        point, tangent, _sp, _t = br(s_j)
        per_kind[kind] = (targets, point, tangent, prefix[-1])

    # junction closure: every piece must end where the next begins
    end_pts = {k: branches[k](np.array([s_hat]))[0][0] for k in (0, 1)}
    start_pts = {k: branches[k](np.array([0.0]))[0][0] for k in (0, 1)}
    worst = 0.0
    for j, (kind, k) in enumerate(_PIECES):
        pk, pr = _PIECES[j - 1]
        gap = abs(1j ** pr * end_pts[pk] - 1j ** k * start_pts[kind])
        worst = max(worst, gap)
    if worst > 1e-9:
        raise QuadratureNonConvergence(f"pieces fail to meet by {worst:.3e}")

    s_parts, pt_parts, tan_parts = [], [], []
    junction_arcs = [0.0]
    offset = 0.0
    for kind, k in _PIECES:
        targets, point, tangent, total = per_kind[kind]
        rot = 1j ** k
        s_parts.append(offset + targets)
        pt_parts.append(rot * point)
        tan_parts.append(rot * tangent)
        offset += total
        junction_arcs.append(offset)
    junction_kinds = [_KIND_NAMES[kind] for kind, _k in _PIECES]

    table = SwitchedTable(
        np.concatenate(s_parts), np.concatenate(pt_parts),
        np.concatenate(tan_parts), offset, closed=True,
        config=config, gamma_curve=gamma, branches=branches,
        piece_layout=_PIECES, junction_arcs=np.array(junction_arcs),
        junction_kinds=junction_kinds)

    if strict:
        _strict_oracle_check(table, gamma, config)
    return table


def _strict_oracle_check(table, gamma, config):
    from . import stringtable
    from .geom import ConvexBody

    body = ConvexBody.from_curve(gamma)
    oracle = stringtable.string_table(body, config.string_parameter,
                                      n_samples=512)
    dev = sup_distance(table, oracle)
    if dev > 1e-4:
        raise OracleMismatch(
            f"switched table deviates {dev:.3e} from the taut-string oracle")


# -- junction smoothness ---------------------------------------------------

# one-sided 5-point stencils at offsets 0..4h; accuracy orders 4, 3, 2
_STENCILS = {
    1: (np.array([-25.0, 48.0, -36.0, 16.0, -3.0]) / 12.0, 4),
    2: (np.array([35.0, -104.0, 114.0, -56.0, 11.0]) / 12.0, 3),
    3: (np.array([-5.0, 18.0, -24.0, 14.0, -3.0]) / 2.0, 2),
}


@dataclass(frozen=True)
class SmoothnessRow:
    junction: float
    kind: str
    order: int
    jump: float
    jump_coarse: float
    ratio: float
    richardson: float


def _junction_jump(table: SwitchedTable, piece: int, order: int,
                   h: float) -> float:
    coef, _acc = _STENCILS[order]
    offs = h * np.arange(5)
    right = table.piece_point(piece, offs)
    left = table.piece_point(piece - 1, table.config.s_hat - offs)
    d_right = coef.dot(right) / h ** order
    d_left = (-1.0) ** order * coef.dot(left) / h ** order
    return abs(d_right - d_left)


def smoothness_report(table: SwitchedTable, junctions=None, max_order: int = 3,
                      h: float | None = None) -> list[SmoothnessRow]:
    """One-sided derivative jumps of the table at its switching points.

    Derivatives are taken in the construction parameter (the caustic arc
    length feeding each branch), the parametrization in which the table's
    smoothness across a switch is meaningful: in pure arc length the two
    sides of every junction are exact mirror images, so jumps below order 3
    vanish identically no matter the germ. Each (junction, order) row holds
    the jump at stencil spacings h and h/2 and the Richardson limit.
    """
    if not isinstance(table, SwitchedTable):
        raise TypeError("smoothness_report needs the table's branch evaluators")
    if not 1 <= int(max_order) <= 3:
        raise ValueError("max_order must be in 1..3")
    eps = table.gamma_curve.phi.eps
    if h is None:
        h = 0.45 * eps / 4.0
    if 4.0 * h > 0.95 * (0.5 * eps):
        raise InsufficientResolution(
            f"stencil span {4 * h:.3e} leaves the germ zone (eps/2 = {eps / 2:.3e})")
    if h < 1e3 * np.finfo(float).eps:
        raise InsufficientResolution("stencil spacing at rounding level")
    if junctions is None:
        junctions = table.junction_arcs[:-1]
    spacing = np.diff(table.junction_arcs).min()
    rows = []
    for q in np.atleast_1d(np.asarray(junctions, dtype=np.float64)):
        gaps = np.abs(table.junction_arcs[:-1] - q)
        piece = int(np.argmin(gaps))
        if gaps[piece] > 0.25 * spacing:
            raise ValueError(f"arc position {q!r} is not a switching point")
        for order in range(1, int(max_order) + 1):
            coarse = _junction_jump(table, piece, order, h)
            fine = _junction_jump(table, piece, order, 0.5 * h)
            ratio = coarse / fine if fine > 0.0 else np.inf
            acc = _STENCILS[order][1]
            w = 2.0 ** acc
            rows.append(SmoothnessRow(
                junction=float(table.junction_arcs[piece]),
                kind=table.junction_kinds[piece], order=order,
                jump=fine, jump_coarse=coarse, ratio=ratio,
                richardson=abs((w * fine - coarse) / (w - 1.0))))
    return rows
