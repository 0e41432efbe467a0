"""Arc-length sampled plane curves.

A ``SampledCurve`` stores samples ``(s_k, point_k, tangent_k)`` with ``s`` the
arc-length parameter, plus optional corner data: at a corner sample the stored
tangent is the outgoing one and the incoming tangent is kept separately.
Between samples the curve is the cubic Hermite interpolant in ``s``.
"""

from __future__ import annotations

import numpy as np
from scipy.special import ellipeinc
from scipy.optimize import brentq

from . import kernels

_TANGENT_TOL = 1e-12


class SampledCurve:
    """Closed or open curve given by arc-length samples with unit tangents."""

    def __init__(self, s, points, tangents, total_length, closed=True,
                 corner_indices=None, corner_in_tangents=None):
        s = np.ascontiguousarray(s, dtype=np.float64)
        points = np.ascontiguousarray(points, dtype=np.complex128)
        tangents = np.ascontiguousarray(tangents, dtype=np.complex128)
        if not (np.all(np.isfinite(s)) and np.all(np.isfinite(points))
                and np.all(np.isfinite(tangents))):
            raise ValueError("non-finite curve data")
        if s[0] != 0.0 or np.any(np.diff(s) <= 0) or s[-1] >= total_length:
            raise ValueError("arc positions must start at 0, increase strictly, stay < total_length")
        norms = np.abs(tangents)
        if np.max(np.abs(norms - 1.0)) > _TANGENT_TOL:
            raise ValueError("tangents must be unit vectors")
        self.s = s
        self.points = points
        self.tangents = tangents
        self.total_length = float(total_length)
        self.closed = bool(closed)
        if corner_indices is None:
            corner_indices = np.empty(0, dtype=np.intp)
            corner_in_tangents = np.empty(0, dtype=np.complex128)
        self.corner_indices = np.asarray(corner_indices, dtype=np.intp)
        self.corner_in_tangents = np.asarray(corner_in_tangents, dtype=np.complex128)
        self._chain = None

    @property
    def n(self) -> int:
        return self.s.shape[0]

    @property
    def chain(self):
        """Kernel-facing arrays (s, x, y, otx, oty, itx, ity, L)."""
        if self._chain is None:
            ot = self.tangents
            it = ot.copy()
            if self.corner_indices.size:
                it[self.corner_indices] = self.corner_in_tangents
            self._chain = (self.s, np.ascontiguousarray(self.points.real),
                           np.ascontiguousarray(self.points.imag),
                           np.ascontiguousarray(ot.real), np.ascontiguousarray(ot.imag),
                           np.ascontiguousarray(it.real), np.ascontiguousarray(it.imag),
                           self.total_length)
        return self._chain

    def point_at(self, q):
        """Hermite-interpolated point(s) at arc position(s) q (wrapped mod length)."""
        scalar = np.isscalar(q)
        px, py, _tx, _ty = kernels.curve_eval(self.chain, np.atleast_1d(np.asarray(q, float)))
        z = px + 1j * py
        return z[0] if scalar else z

    def tangent_at(self, q):
        """Unit tangent(s) at arc position(s) q; the outgoing one at corners."""
        scalar = np.isscalar(q)
        _px, _py, tx, ty = kernels.curve_eval(self.chain, np.atleast_1d(np.asarray(q, float)))
        z = tx + 1j * ty
        return z[0] if scalar else z

    def turning_angles(self):
        """Angle turned from each sample tangent to the next (wrapped to (-pi, pi])."""
        t = self.tangents
        nxt = np.roll(t, -1)
        return np.angle(nxt / t)

    def chord_turning_angles(self):
        """Angle turned between consecutive chords; entry k is the turn at sample k+1."""
        p = self.points
        ch = np.roll(p, -1) - p
        return np.angle(np.roll(ch, -1) / ch)

    def chord_perimeter(self, richardson=True):
        """Perimeter from chord sums; Richardson-extrapolated at two resolutions."""
        p = self.points
        fine = float(np.sum(np.abs(np.roll(p, -1) - p)))
        if not richardson or self.n < 8:
            return fine
        q = p[::2]
        coarse = float(np.sum(np.abs(np.roll(q, -1) - q)))
        # chord sum underestimates arc length by O(h^2): eliminate the leading term
        return fine + (fine - coarse) / 3.0

    def arclength_deviation(self):
        """Max relative deviation of chord lengths from their Delta-s, off corners."""
        p = self.points
        s = self.s
        ds = np.empty(self.n)
        ds[:-1] = np.diff(s)
        ds[-1] = self.total_length - s[-1]
        chord = np.abs(np.roll(p, -1) - p)
        rel = np.abs(chord - ds) / ds
        if self.corner_indices.size:
            mask = np.ones(self.n, bool)
            # segment k ends at sample k+1; drop segments touching a corner
            mask[(self.corner_indices - 1) % self.n] = False
            mask[self.corner_indices] = False
            rel = rel[mask]
        return float(np.max(rel)) if rel.size else 0.0

    # -- constructors ------------------------------------------------------

    @classmethod
    def circle(cls, radius, center=0j, n=1024):
        if radius <= 0:
            raise ValueError("radius must be positive")
        th = 2.0 * np.pi * np.arange(n) / n
        e = np.exp(1j * th)
        return cls(radius * th, center + radius * e, 1j * e, 2.0 * np.pi * radius)

    @classmethod
    def ellipse(cls, a, b, center=0j, n=1024):
        """Axis-aligned ellipse sampled uniformly in arc length."""
        if a <= 0 or b <= 0:
            raise ValueError("semi-axes must be positive")
        if a < b:
            raise ValueError("expect a >= b")
        m = 1.0 - (b / a) ** 2

        def arclen(t):
            return a * (ellipeinc(np.pi / 2, m) - ellipeinc(np.pi / 2 - t, m))

        total = arclen(2.0 * np.pi)
        targets = total * np.arange(n) / n
        ts = np.empty(n)
        ts[0] = 0.0
        for k in range(1, n):
            ts[k] = brentq(lambda t, g=targets[k]: arclen(t) - g, 0.0, 2.0 * np.pi,
                           xtol=1e-14, rtol=8.9e-16)
        pts = a * np.cos(ts) + 1j * b * np.sin(ts)
        vel = -a * np.sin(ts) + 1j * b * np.cos(ts)
        return cls(targets, center + pts, vel / np.abs(vel), total)


def sup_distance(curve: SampledCurve, reference: SampledCurve,
                 densify: int = 8) -> float:
    """max over samples of `curve` of the distance to `reference`.

    The reference is densified through its Hermite interpolant so the
    polyline sagitta does not swamp deviations below the sample spacing.
    """
    p = curve.points
    if densify > 1:
        s = reference.s
        s_next = np.append(s[1:], reference.total_length)
        frac = np.arange(densify) / densify
        qs = (s[:, None] + frac[None, :] * (s_next - s)[:, None]).ravel()
        q = reference.point_at(qs)
    else:
        q = reference.points
    q2 = np.roll(q, -1)
    seg = q2 - q
    len2 = (seg * seg.conjugate()).real
    best = np.full(p.shape[0], np.inf)
    for a in range(0, p.shape[0], 256):
        b = min(p.shape[0], a + 256)
        w = p[a:b, None] - q[None, :]
        t = np.clip((w * seg.conjugate()[None, :]).real / len2[None, :], 0.0, 1.0)
        d = np.abs(w - t * seg[None, :])
        best[a:b] = d.min(axis=1)
    return float(best.max())
