"""Billiard ball map on a convex C1 table, rotation numbers, caustic checks.

Phase coordinates are (sigma, theta): arc-length position on the boundary and
the angle of the outgoing ray against the forward (counterclockwise) tangent.
With this orientation forward orbits advance in sigma and rotation numbers of
caustic-tangent orbits land in (0, 1/2].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import CausticNotInside, GrazingRay, NoIntersection
from .geom import ConvexBody

_GRAZE_EPS = 1e-9


@dataclass(frozen=True)
class PhaseState:
    """Arc position sigma (any real; used modulo the table length) and
    outgoing angle theta, strictly inside (0, pi)."""

    sigma: float
    theta: float

    def __post_init__(self):
        if not (np.isfinite(self.sigma) and 0.0 < self.theta < np.pi):
            raise ValueError(
                f"phase state ({self.sigma!r}, {self.theta!r}) outside the open cylinder")


class OrbitRecord:
    """Forward orbit: states, the monotone arc-length lift, launched chords."""

    def __init__(self, sigma, theta, lift, chord_points, chord_dirs,
                 total_length):
        if np.any(np.diff(lift) <= 0.0):
            raise ValueError("orbit lift must be strictly increasing")
        self.sigma = sigma
        self.theta = theta
        self.lift = lift
        self.chord_points = chord_points
        self.chord_dirs = chord_dirs
        self.total_length = float(total_length)

    @property
    def n_bounces(self) -> int:
        return self.sigma.shape[0] - 1

    @property
    def states(self):
        return [PhaseState(float(s), float(t))
                for s, t in zip(self.sigma, self.theta)]

    def rotation_estimate(self) -> float:
        """Birkhoff average of the advance per bounce with a 1/n tail correction."""
        n = self.n_bounces
        m = n // 2
        L = self.total_length
        rho_full = (self.lift[n] - self.lift[0]) / (n * L)
        if m < 1:
            return float(rho_full)
        rho_half = (self.lift[m] - self.lift[0]) / (m * L)
        return float(2.0 * rho_full - rho_half)


def _chord_eps(table) -> float:
    return 1e-12 * max(1.0, table.total_length)


def orbit(table, initial: PhaseState, n_iters: int) -> OrbitRecord:
    """Iterate the billiard map n_iters times from `initial`."""
    n = int(n_iters)
    if n < 1:
        raise ValueError("n_iters must be >= 1")
    status, sig, th, lift, cx, cy, cdx, cdy = kernels.orbit(
        table.chain, initial.sigma, initial.theta, n, _GRAZE_EPS,
        _chord_eps(table))
    if status == 1:
        raise GrazingRay("launch angle within 1e-9 of the tangent direction")
    if status == 2:
        raise NoIntersection("chord found no forward boundary crossing")
    return OrbitRecord(sig, th, lift, cx + 1j * cy, cdx + 1j * cdy,
                       table.total_length)


def billiard_map(table, state: PhaseState) -> PhaseState:
    """One reflection: next boundary hit of the outgoing ray, equal angles."""
    rec = orbit(table, state, 1)
    return PhaseState(float(rec.sigma[1]), float(rec.theta[1]))


def rotation_number(table, initial: PhaseState, n_iters: int) -> float:
    """Average boundary fraction advanced per bounce along the orbit."""
    n = int(n_iters)
    if n < 100:
        raise ValueError("n_iters must be >= 100 for a stable average")
    return orbit(table, initial, n).rotation_estimate()


def caustic_tangent_state(table, body: ConvexBody, psi: float) -> PhaseState:
    """State launching along the supporting line of `body` with outward
    normal e^{i psi}, traversed counterclockwise."""
    n_dir = np.exp(1j * float(psi))
    _h, touch = body.support(n_dir)
    d = 1j * n_dir
    # previous bounce point: the boundary exit backwards along the line
    status, sig, _r = kernels.interior_exits(
        table.chain, touch.real, touch.imag,
        np.array([-d.real]), np.array([-d.imag]))
    if status[0] != 0:
        raise NoIntersection("supporting line does not cross the table")
    sigma0 = float(sig[0])
    _px, _py, tx, ty = kernels.curve_eval(table.chain, np.array([sigma0]))
    theta = float(np.angle(d / (tx[0] + 1j * ty[0])))
    if not _GRAZE_EPS < theta < np.pi - _GRAZE_EPS:
        raise GrazingRay("supporting line grazes the table boundary")
    return PhaseState(sigma0, theta)


def _require_inside(table, body: ConvexBody):
    pts = table.points
    edges = np.roll(pts, -1) - pts
    band = 1e-9 * max(float(np.abs(pts).max()), 1.0)
    q = body.boundary
    for a in range(0, q.shape[0], 256):
        w = q[a:a + 256, None] - pts[None, :]
        side = (np.conj(edges)[None, :] * w).imag / np.abs(edges)[None, :]
        if side.min(axis=1).min() < -band:
            raise CausticNotInside("a caustic sample lies outside the table")


def _support_values(body: ConvexBody, normals: np.ndarray) -> np.ndarray:
    if body.variant == "point":
        p = body.boundary[0]
        return (p * np.conj(normals)).real
    hv, _sx, _sy, _ss = kernels.support_points(
        body.chain, normals.real.copy(), normals.imag.copy())
    return hv


def verify_caustic(table, body: ConvexBody, n_starts: int, n_iters: int):
    """(max_tangency_error, rho_est) over orbits launched tangent to `body`.

    After every reflection the chord line is compared against tangency to the
    body by the support gap h(m) - <P, m>, m the chord normal pointing away
    from the body; the gap is zero exactly when the line supports the body,
    corners included.
    """
    n_starts = int(n_starts)
    n_iters = int(n_iters)
    if n_starts < 1:
        raise ValueError("n_starts must be >= 1")
    if n_iters < 2:
        raise ValueError("n_iters must be >= 2")
    _require_inside(table, body)
    worst = 0.0
    rhos = np.empty(n_starts)
    for j in range(n_starts):
        psi = 2.0 * np.pi * j / n_starts
        rec = orbit(table, caustic_tangent_state(table, body, psi), n_iters)
        m = -1j * rec.chord_dirs
        gap = _support_values(body, m) - (rec.chord_points * np.conj(m)).real
        worst = max(worst, float(np.abs(gap).max()))
        rhos[j] = rec.rotation_estimate()
    return worst, float(rhos.mean())
