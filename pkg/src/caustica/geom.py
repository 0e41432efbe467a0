"""Plane geometry: points as complex numbers, convex bodies, tangent lines, cap bodies.

Points are complex numbers (re + 1j*im); every public constructor validates
finiteness.  Bodies store their boundary counterclockwise.  Geometric
predicates use absolute tolerance 1e-12 scaled by the body diameter.
"""

from __future__ import annotations

import numpy as np

from . import kernels
from .curves import SampledCurve
from .errors import DegenerateBody, PointInsideBody, RootBracketFailure

EPS_REL = 1e-12


def as_point(p) -> complex:
    """Validate and convert a point-like value (complex or (x, y)) to complex."""
    if isinstance(p, (tuple, list)) and len(p) == 2:
        z = complex(p[0], p[1])
    else:
        z = complex(p)
    if not (np.isfinite(z.real) and np.isfinite(z.imag)):
        raise ValueError(f"non-finite point {p!r}")
    return z


def half_dot(z1, z2) -> float:
    """The half-weight dot product (1/2) Re(z1 * conj(z2)); bilinear, symmetric."""
    z1 = as_point(z1)
    z2 = as_point(z2)
    return 0.5 * (z1 * z2.conjugate()).real


def convex_hull(points):
    """Counterclockwise convex hull (monotone chain) of a complex point array."""
    pts = np.unique(np.asarray(points, dtype=np.complex128))
    pts = pts[np.lexsort((pts.imag, pts.real))]
    if pts.size <= 2:
        return pts

    def build(seq):
        out = []
        for p in seq:
            while len(out) >= 2 and ((out[-1] - out[-2]).conjugate() * (p - out[-2])).imag <= 0:
                out.pop()
            out.append(p)
        return out

    lower = build(pts)
    upper = build(pts[::-1])
    return np.array(lower[:-1] + upper[:-1])


class ConvexBody:
    """Convex caustic body: point, segment, polygon, or sampled curve.

    The segment variant is a closed 2-sample chain traversed both ways, so its
    perimeter is twice its length and the string construction over it reduces
    to the gardener's construction.
    """

    def __init__(self, variant, boundary, perimeter, chain, curve=None):
        self.variant = variant
        self.boundary = boundary
        self.perimeter = float(perimeter)
        self.chain = chain
        self.curve = curve
        xs = boundary.real
        ys = boundary.imag
        self.diameter = float(np.hypot(xs.max() - xs.min(), ys.max() - ys.min()))
        self.eps = EPS_REL * max(self.diameter, 1.0)

    @classmethod
    def point(cls, p):
        p = as_point(p)
        return cls("point", np.array([p]), 0.0, None)

    @classmethod
    def segment(cls, a, b):
        a = as_point(a)
        b = as_point(b)
        length = abs(b - a)
        if length == 0.0:
            raise DegenerateBody("segment endpoints coincide; use a point body")
        u = (b - a) / length
        s = np.array([0.0, length])
        x = np.array([a.real, b.real])
        y = np.array([a.imag, b.imag])
        otx = np.array([u.real, -u.real])
        oty = np.array([u.imag, -u.imag])
        itx = -otx
        ity = -oty
        chain = (s, x, y, otx, oty, itx, ity, 2.0 * length)
        return cls("segment", np.array([a, b]), 2.0 * length, chain)

    @classmethod
    def polygon(cls, vertices):
        v = np.array([as_point(p) for p in vertices], dtype=np.complex128)
        if v.size < 3:
            raise DegenerateBody("polygon needs at least 3 vertices")
        area2 = np.sum((v * np.roll(v, -1).conjugate()).imag)
        if area2 > 0:  # stored clockwise by the shoelace sign convention below
            v = v[::-1]
        area2 = float(np.sum((np.roll(v, -1) * v.conjugate()).imag))
        if area2 <= 0:
            raise DegenerateBody("polygon has no area")
        edges = np.roll(v, -1) - v
        lengths = np.abs(edges)
        if np.any(lengths == 0.0):
            raise DegenerateBody("repeated polygon vertex")
        turn = np.angle(edges / np.roll(edges, 1))
        if np.any(turn < -EPS_REL) or np.any(turn > np.pi - 1e-9):
            raise DegenerateBody("polygon is not convex")
        u = edges / lengths
        s = np.concatenate(([0.0], np.cumsum(lengths[:-1])))
        chain = (s, np.ascontiguousarray(v.real), np.ascontiguousarray(v.imag),
                 np.ascontiguousarray(u.real), np.ascontiguousarray(u.imag),
                 np.ascontiguousarray(np.roll(u, 1).real), np.ascontiguousarray(np.roll(u, 1).imag),
                 float(lengths.sum()))
        return cls("polygon", v, float(lengths.sum()), chain)

    @classmethod
    def from_curve(cls, curve: SampledCurve):
        if not curve.closed:
            raise DegenerateBody("body boundary must be a closed curve")
        p = curve.points
        ch = np.roll(p, -1) - p
        turn = np.angle(ch / np.roll(ch, 1))
        eps = EPS_REL * max(float(np.abs(ch).sum()), 1.0)
        if np.any(turn < -1e-9) or np.any(np.abs(ch) < eps):
            raise DegenerateBody("sampled boundary is not convex counterclockwise")
        return cls("sampled", p, curve.total_length, curve.chain, curve)

    @classmethod
    def circle(cls, radius, center=0j, n=2048):
        return cls.from_curve(SampledCurve.circle(radius, as_point(center), n))

    @classmethod
    def ellipse(cls, a, b, center=0j, n=2048):
        return cls.from_curve(SampledCurve.ellipse(a, b, as_point(center), n))

    # -- geometry helpers --------------------------------------------------

    def centroid(self) -> complex:
        v = self.boundary
        if self.variant in ("point", "segment"):
            return complex(v.mean())
        w = np.roll(v, -1)
        cr = (v.conjugate() * w).imag
        area = cr.sum() / 2.0
        c = np.sum((v + w) * cr) / (6.0 * area)
        return complex(c)

    def _bulge(self) -> float:
        """Max sagitta of the Hermite arcs over the sample polygon."""
        if self.variant in ("point", "segment", "polygon"):
            return 0.0
        s, x, y, otx, oty, itx, ity, L = self.chain
        h = np.empty(s.shape[0])
        h[:-1] = np.diff(s)
        h[-1] = L - s[-1]
        ot = otx + 1j * oty
        it_next = np.roll(itx + 1j * ity, -1)
        turn = np.abs(np.angle(it_next / ot))
        return float(np.max(h * turn) / 8.0)

    def locate(self, p) -> str:
        """'inside' | 'boundary' | 'outside', with a boundary band of width eps + bulge."""
        z = as_point(p)
        band = self.eps + self._bulge()
        if self.variant == "point":
            return "boundary" if abs(z - self.boundary[0]) <= band else "outside"
        if self.variant == "segment":
            a, b = self.boundary
            u = (b - a) / abs(b - a)
            w = (z - a) * u.conjugate()
            t = min(max(w.real, 0.0), abs(b - a))
            return "boundary" if abs(z - (a + t * u)) <= band else "outside"
        v = self.boundary
        e = np.roll(v, -1) - v
        d = (e.conjugate() * (z - v)).imag / np.abs(e)  # signed distance, + toward inside
        dmin = float(d.min())
        if dmin > band:
            return "inside"
        if dmin < -band:
            return "outside"
        return "boundary"

    def support(self, direction):
        """Support value and point: max over the body of <X, n> for unit n."""
        nd = as_point(direction)
        nd /= abs(nd)
        if self.variant == "point":
            p = self.boundary[0]
            return (p * nd.conjugate()).real, p
        hv, sx, sy, _ss = kernels.support_points(
            self.chain, np.array([nd.real]), np.array([nd.imag]))
        return float(hv[0]), complex(sx[0], sy[0])


def tangent_points_from(P, K: ConvexBody):
    """The two tangency points of the supporting lines from exterior P.

    Returns (left, right): walking counterclockwise along the boundary, the far
    arc (the one kept by the cap body) runs from `right` to `left`.  Facing the
    body from P, `left` lies to the left hand.  At a corner of K whose support
    cone contains the line, the corner itself is returned.
    """
    z = as_point(P)
    if K.variant == "point":
        q = K.boundary[0]
        if abs(z - q) <= K.eps:
            raise DegenerateBody("tangency from the point body itself is undefined")
        return q, q
    where = K.locate(z)
    if where != "outside":
        raise PointInsideBody(f"point {z} is {where} of the body")
    res = _tangency(K, z)
    if res is None:
        raise RootBracketFailure(f"tangency scan failed from {z}")
    (_sR, zR), (_sL, zL) = res
    return zL, zR


def _tangency(K: ConvexBody, z):
    """((sR, right), (sL, left)) or None; handles collinear segment fallback."""
    st, sR, xR, yR, _cR, sL, xL, yL, _cL = kernels.tangency_pairs(
        K.chain, np.array([z.real]), np.array([z.imag]), K.eps)
    if st[0] == 0:
        return (float(sR[0]), complex(xR[0], yR[0])), (float(sL[0]), complex(xL[0], yL[0]))
    # batch scan can punt (snapped zeros); the scalar walk resolves most of those
    st1, sR1, xR1, yR1, _c1, sL1, xL1, yL1, _c2 = kernels.tangency_pair_scalar(
        K.chain, z.real, z.imag, K.eps)
    if st1 == 0:
        return (float(sR1), complex(xR1, yR1)), (float(sL1), complex(xL1, yL1))
    if K.variant == "segment":
        a, b = K.boundary
        u = (b - a) / abs(b - a)
        if abs(((z - a) * u.conjugate()).imag) <= K.eps:
            # collinear exterior point: support lines coincide with the segment line
            near, far = (a, b) if abs(z - a) < abs(z - b) else (b, a)
            s_of = {a: 0.0, b: abs(b - a)}
            return (s_of[near], near), (s_of[far], far)
    return None


def cap_body_perimeter(P, K: ConvexBody) -> float:
    """Perimeter of Conv({P} u K): both tangent segments plus the far boundary arc."""
    z = as_point(P)
    if K.variant == "point":
        return 2.0 * abs(z - K.boundary[0])
    where = K.locate(z)
    if where == "inside":
        raise PointInsideBody(f"point {z} is inside the body")
    if where == "boundary":
        return K.perimeter
    res = _tangency(K, z)
    if res is None:
        raise RootBracketFailure(f"cap-body tangency scan failed from {z}")
    (sR, zR), (sL, zL) = res
    arc = (sL - sR) % K.chain[7]
    return abs(z - zR) + abs(z - zL) + arc


def cap_body_perimeters(K: ConvexBody, points) -> np.ndarray:
    """Vectorized cap_body_perimeter over an array of exterior complex points."""
    pts = np.asarray(points, dtype=np.complex128)
    if K.variant == "point":
        return 2.0 * np.abs(pts - K.boundary[0])
    st, out = kernels.cap_perimeters(K.chain, pts.real.copy(), pts.imag.copy(), K.eps)
    bad = np.nonzero(st != 0)[0]
    for k in bad:
        out[k] = cap_body_perimeter(pts[k], K)
    return out
