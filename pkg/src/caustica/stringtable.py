"""Taut-string construction of a billiard table around a convex caustic.

Given a convex body K and a string parameter S > perimeter(K), the table is
the locus of points P with cap-body perimeter |Conv({P} u K)| = S.  Along any
outward ray from an interior anchor the cap perimeter is strictly increasing,
so each table point is found by bisection in the ray radius.  The inverse
check `string_invariant` measures how constant the cap perimeter is over an
alleged (table, caustic) pair.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import kernels
from .curves import SampledCurve
from .errors import CausticNotInside, RootBracketFailure, StringTooShort
from .geom import ConvexBody, as_point, cap_body_perimeters, tangent_points_from

_BISECT_ITERS = 64


@dataclass(frozen=True)
class StringParams:
    """String parameter S and its slack L over the caustic perimeter."""

    S: float
    L: float

    @classmethod
    def for_body(cls, S: float, body: ConvexBody) -> "StringParams":
        S = float(S)
        if not np.isfinite(S):
            raise StringTooShort(f"string parameter {S!r} is not finite")
        L = S - body.perimeter
        if L <= 0.0:
            raise StringTooShort(
                f"string parameter {S} does not exceed the caustic perimeter "
                f"{body.perimeter}")
        return cls(S, L)


def _exit_radii(body: ConvexBody, center: complex, dirs: np.ndarray) -> np.ndarray:
    """Radius along each unit direction past which center + r*dirs is outside."""
    if body.variant == "point":
        return np.zeros(dirs.shape[0])
    if body.variant == "segment":
        a, b = body.boundary
        u = (b - a) / abs(b - a)
        # beyond the projection of the far endpoint the ray clears the segment
        proj = np.abs((dirs * np.conj(u)).real) * (0.5 * abs(b - a))
        off = np.abs((center - 0.5 * (a + b)))
        return proj + off
    status, _sig, r = kernels.interior_exits(
        body.chain, center.real, center.imag,
        dirs.real.copy(), dirs.imag.copy())
    if np.any(status != 0):
        raise RootBracketFailure("anchor ray does not cross the caustic boundary")
    return r


def _tangency_points(body: ConvexBody, pts: np.ndarray):
    """Left and right tangency points from each exterior point of `pts`."""
    if body.variant == "point":
        q = np.full(pts.shape[0], body.boundary[0])
        return q, q.copy()
    st, _sR, xR, yR, _cR, _sL, xL, yL, _cL = kernels.tangency_pairs(
        body.chain, pts.real.copy(), pts.imag.copy(), body.eps)
    zL = xL + 1j * yL
    zR = xR + 1j * yR
    for k in np.nonzero(st != 0)[0]:
        zL[k], zR[k] = tangent_points_from(complex(pts[k]), body)
    return zL, zR


def string_table(body: ConvexBody, S: float, n_samples: int = 512,
                 center=None) -> SampledCurve:
    """Table whose taut string of length S wraps the caustic `body`.

    Points are solved on a uniform grid of ray angles from the caustic
    centroid by fixed-count bisection in the radius (the cap perimeter is
    monotone there, and at radius S it already exceeds S, so the bracket
    always straddles).  The output is parametrized by chord-accumulated arc
    length; tangents bisect the two string directions, which is the string
    construction's reflection property.
    """
    if not isinstance(body, ConvexBody):
        raise TypeError("caustic must be a ConvexBody")
    n = int(n_samples)
    if n < 16:
        raise ValueError("n_samples must be >= 16")
    params = StringParams.for_body(S, body)
    center = body.centroid() if center is None else as_point(center)

    theta = 2.0 * np.pi * np.arange(n) / n
    dirs = np.exp(1j * theta)
    lo = _exit_radii(body, center, dirs)
    hi = np.full(n, params.S)
    if np.any(lo >= hi):
        raise RootBracketFailure("ray bracket collapsed before bisection")
    for _ in range(_BISECT_ITERS):
        mid = 0.5 * (lo + hi)
        caps = cap_body_perimeters(body, center + mid * dirs)
        above = caps > params.S
        hi = np.where(above, mid, hi)
        lo = np.where(above, lo, mid)
    pts = center + 0.5 * (lo + hi) * dirs

    zL, zR = _tangency_points(body, pts)
    uL = zL - pts
    uR = zR - pts
    uL /= np.abs(uL)
    uR /= np.abs(uR)
    inward = uL + uR
    norms = np.abs(inward)
    if norms.min() < 1e-12:
        raise RootBracketFailure("string directions cancel; tangent undefined")
    tangents = -1j * inward / norms  # i * outward normal

    chords = np.abs(np.roll(pts, -1) - pts)
    s = np.concatenate(([0.0], np.cumsum(chords[:-1])))
    return SampledCurve(s, pts, tangents, float(chords.sum()), closed=True)


def string_invariant(table: SampledCurve, body: ConvexBody):
    """(S_est, max_dev): mean cap perimeter over table samples and max deviation.

    A true (table, caustic) pair gives max_dev at discretization level; the
    spread is the working definition of "is a caustic of this table".
    """
    pts = table.points
    edges = np.roll(pts, -1) - pts
    band = 1e-9 * max(float(np.abs(pts).max()), 1.0)
    q = body.boundary
    for a in range(0, q.shape[0], 256):
        w = q[a:a + 256, None] - pts[None, :]
        side = (np.conj(edges)[None, :] * w).imag / np.abs(edges)[None, :]
        if side.min(axis=1).min() < -band:
            raise CausticNotInside("a caustic sample lies outside the table")
    caps = cap_body_perimeters(body, pts)
    S_est = float(caps.mean())
    return S_est, float(np.abs(caps - S_est).max())
