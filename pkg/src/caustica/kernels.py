"""Hot-loop kernels over sampled boundary chains.

A *chain* is a closed convex boundary stored as parallel float64 arrays
``(s, x, y, otx, oty, itx, ity, L)``: arc-length positions ``s`` (``s[0] = 0``,
strictly increasing, ``s[i] < L``), sample coordinates, unit tangents leaving
each sample (``ot*``) and arriving at it (``it*``), and the total length ``L``.
At a corner the two tangents differ; elsewhere they coincide.  Between samples
the boundary is the cubic Hermite interpolant in arc length, which reproduces
straight polygon edges exactly when the end tangents are the edge direction.

Every kernel exists twice: a scalar-loop version compiled with numba ``@njit``
and a vectorized pure-numpy version.  ``CAUSTICA_BACKEND=numpy`` (or a missing
numba install) selects the fallback; the default is numba.  Both are exercised
against each other in the test suite; a benchmark comparing them lives in
``benchmarks/``.

All kernels are deterministic: fixed-count bisection refinement, sequential
reduction, no RNG.
"""

from __future__ import annotations

import math
import os

import numpy as np

_BISECT_ITERS = 64  # fixed-count bisection: deterministic, converges past float64 resolution

_env = os.environ.get("CAUSTICA_BACKEND", "").strip().lower()
if _env not in ("", "numba", "numpy"):
    raise ValueError(f"CAUSTICA_BACKEND must be 'numba' or 'numpy', got {_env!r}")

_numba = None
if _env != "numpy":
    try:
        import numba as _numba
    except ImportError:
        _numba = None

BACKEND = "numba" if _numba is not None else "numpy"

if _numba is not None:
    _threads = os.environ.get("CAUSTICA_THREADS", "").strip()
    if _threads:
        try:
            _numba.set_num_threads(max(1, min(int(_threads), _numba.config.NUMBA_NUM_THREADS)))
        except (ValueError, RuntimeError):
            pass
    njit = _numba.njit(cache=True)
else:
    def njit(func):
        return func


# ---------------------------------------------------------------------------
# scalar core (numba-compiled when available)
# ---------------------------------------------------------------------------

@njit
def _seg_of(s, L, q):
    """Segment index i with s[i] <= q < s[i+1] (last segment wraps to L)."""
    n = s.shape[0]
    lo, hi = 0, n
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if s[mid] <= q:
            lo = mid
        else:
            hi = mid
    return lo


@njit
def _seg_geom(s, x, y, otx, oty, itx, ity, L, i):
    """Endpoint data of segment i: (x0,y0,tx0,ty0, x1,y1,tx1,ty1, s0, h)."""
    n = s.shape[0]
    j = i + 1
    if j == n:
        j = 0
        h = L - s[i]
    else:
        h = s[j] - s[i]
    return x[i], y[i], otx[i], oty[i], x[j], y[j], itx[j], ity[j], s[i], h


@njit
def _hermite(x0, y0, tx0, ty0, x1, y1, tx1, ty1, h, t):
    """Point and d/dsigma (unnormalized) of the Hermite segment at local t."""
    t2 = t * t
    t3 = t2 * t
    h00 = 2.0 * t3 - 3.0 * t2 + 1.0
    h10 = t3 - 2.0 * t2 + t
    h01 = -2.0 * t3 + 3.0 * t2
    h11 = t3 - t2
    px = h00 * x0 + h10 * h * tx0 + h01 * x1 + h11 * h * tx1
    py = h00 * y0 + h10 * h * ty0 + h01 * y1 + h11 * h * ty1
    d00 = 6.0 * t2 - 6.0 * t
    d10 = 3.0 * t2 - 4.0 * t + 1.0
    d01 = -6.0 * t2 + 6.0 * t
    d11 = 3.0 * t2 - 2.0 * t
    dx = (d00 * x0 + d10 * h * tx0 + d01 * x1 + d11 * h * tx1) / h
    dy = (d00 * y0 + d10 * h * ty0 + d01 * y1 + d11 * h * ty1) / h
    return px, py, dx, dy


@njit
def _eval_one(s, x, y, otx, oty, itx, ity, L, q):
    q = q % L
    i = _seg_of(s, L, q)
    x0, y0, tx0, ty0, x1, y1, tx1, ty1, s0, h = _seg_geom(s, x, y, otx, oty, itx, ity, L, i)
    t = (q - s0) / h
    return _hermite(x0, y0, tx0, ty0, x1, y1, tx1, ty1, h, t)


@njit
def _curve_eval_impl(s, x, y, otx, oty, itx, ity, L, q, px, py, tx, ty):
    for k in range(q.shape[0]):
        a, b, dx, dy = _eval_one(s, x, y, otx, oty, itx, ity, L, q[k])
        nrm = math.hypot(dx, dy)
        px[k] = a
        py[k] = b
        tx[k] = dx / nrm
        ty[k] = dy / nrm


@njit
def _bisect_tangency(s, x, y, otx, oty, itx, ity, L, i, Px, Py, glo_pos):
    """Root of cross(H(t)-P, H'(t)) on segment i; glo_pos: sign of g at t=0."""
    x0, y0, tx0, ty0, x1, y1, tx1, ty1, s0, h = _seg_geom(s, x, y, otx, oty, itx, ity, L, i)
    a, b = 0.0, 1.0
    for _ in range(_BISECT_ITERS):
        m = 0.5 * (a + b)
        hx, hy, dx, dy = _hermite(x0, y0, tx0, ty0, x1, y1, tx1, ty1, h, m)
        g = (hx - Px) * dy - (hy - Py) * dx
        if (g > 0.0) == glo_pos:
            a = m
        else:
            b = m
    m = 0.5 * (a + b)
    hx, hy, dx, dy = _hermite(x0, y0, tx0, ty0, x1, y1, tx1, ty1, h, m)
    return s0 + m * h, hx, hy


@njit
def _tangency_one(s, x, y, otx, oty, itx, ity, L, Px, Py, eps):
    """Both tangency points from exterior P.

    Walking counterclockwise, g(sigma) = cross(X(sigma) - P, T(sigma)) is < 0 on
    the near side and > 0 on the far side.  The - -> + transition begins the
    retained (far) arc; + -> - ends it.  Either transition may sit at a corner
    sample (one-sided tangents straddle zero) or inside a smooth segment.

    Returns (status, sR, xR, yR, cR, sL, xL, yL, cL); status 0 = ok.
    """
    n = s.shape[0]
    n_begin = 0
    n_end = 0
    sR = xR = yR = sL = xL = yL = 0.0
    cR = cL = False
    for i in range(n):
        gi = (x[i] - Px) * ity[i] - (y[i] - Py) * itx[i]
        go = (x[i] - Px) * oty[i] - (y[i] - Py) * otx[i]
        if abs(gi) <= eps:
            gi = 0.0
        if abs(go) <= eps:
            go = 0.0
        if gi == 0.0 and go == 0.0:
            # tangency exactly at a smooth sample: classify by neighbor signs
            ip = i - 1 if i > 0 else n - 1
            iq = i + 1 if i < n - 1 else 0
            gp = (x[ip] - Px) * oty[ip] - (y[ip] - Py) * otx[ip]
            gq = (x[iq] - Px) * ity[iq] - (y[iq] - Py) * itx[iq]
            if gp < -eps and gq > eps:
                n_begin += 1
                sR, xR, yR, cR = s[i], x[i], y[i], False
            elif gp > eps and gq < -eps:
                n_end += 1
                sL, xL, yL, cL = s[i], x[i], y[i], False
        # corner (or snapped-zero) transition at the sample itself
        elif gi < 0.0 and go >= 0.0 or gi <= 0.0 and go > 0.0:
            n_begin += 1
            sR, xR, yR, cR = s[i], x[i], y[i], True
        elif gi > 0.0 and go <= 0.0 or gi >= 0.0 and go < 0.0:
            n_end += 1
            sL, xL, yL, cL = s[i], x[i], y[i], True
        # transition inside the smooth segment i -> i+1
        j = i + 1
        if j == n:
            j = 0
        gj = (x[j] - Px) * ity[j] - (y[j] - Py) * itx[j]
        if abs(gj) <= eps:
            gj = 0.0
        if go < 0.0 and gj > 0.0:
            n_begin += 1
            sR, xR, yR = _bisect_tangency(s, x, y, otx, oty, itx, ity, L, i, Px, Py, False)
            cR = False
        elif go > 0.0 and gj < 0.0:
            n_end += 1
            sL, xL, yL = _bisect_tangency(s, x, y, otx, oty, itx, ity, L, i, Px, Py, True)
            cL = False
    if n_begin != 1 or n_end != 1:
        return 1, sR, xR, yR, cR, sL, xL, yL, cL
    return 0, sR, xR, yR, cR, sL, xL, yL, cL


@njit
def _tangency_pairs_impl(s, x, y, otx, oty, itx, ity, L, Px, Py, eps,
                         status, sR, xR, yR, cR, sL, xL, yL, cL):
    for k in range(Px.shape[0]):
        st, a, b, c, cc, d, e, f, cd = _tangency_one(
            s, x, y, otx, oty, itx, ity, L, Px[k], Py[k], eps)
        status[k] = st
        sR[k] = a
        xR[k] = b
        yR[k] = c
        cR[k] = 1 if cc else 0
        sL[k] = d
        xL[k] = e
        yL[k] = f
        cL[k] = 1 if cd else 0


@njit
def _cap_perimeters_impl(s, x, y, otx, oty, itx, ity, L, Px, Py, eps, status, out):
    for k in range(Px.shape[0]):
        st, sR, xR, yR, _cR, sL, xL, yL, _cL = _tangency_one(
            s, x, y, otx, oty, itx, ity, L, Px[k], Py[k], eps)
        status[k] = st
        if st == 0:
            arc = (sL - sR) % L
            out[k] = math.hypot(Px[k] - xR, Py[k] - yR) + math.hypot(Px[k] - xL, Py[k] - yL) + arc
        else:
            out[k] = np.nan


@njit
def _support_one(s, x, y, otx, oty, itx, ity, L, nx, ny):
    """max <X, n> over the chain, with Hermite refinement off corners."""
    n = s.shape[0]
    best = -1.0e300
    bi = 0
    for i in range(n):
        v = x[i] * nx + y[i] * ny
        if v > best:
            best = v
            bi = i
    # corner sample: the one-sided tangent dots straddle zero and the sample is the support point
    fi = itx[bi] * nx + ity[bi] * ny
    fo = otx[bi] * nx + oty[bi] * ny
    if fi >= 0.0 and fo <= 0.0:
        return best, x[bi], y[bi], s[bi]
    # smooth maximum: f(sigma) = <T(sigma), n> crosses + -> - in one of the two adjacent segments
    for i in (bi - 1 if bi > 0 else n - 1, bi):
        x0, y0, tx0, ty0, x1, y1, tx1, ty1, s0, h = _seg_geom(s, x, y, otx, oty, itx, ity, L, i)
        f0 = tx0 * nx + ty0 * ny
        f1 = tx1 * nx + ty1 * ny
        if f0 > 0.0 and f1 < 0.0:
            a, b = 0.0, 1.0
            for _ in range(_BISECT_ITERS):
                m = 0.5 * (a + b)
                _hx, _hy, dx, dy = _hermite(x0, y0, tx0, ty0, x1, y1, tx1, ty1, h, m)
                if dx * nx + dy * ny > 0.0:
                    a = m
                else:
                    b = m
            m = 0.5 * (a + b)
            hx, hy, _dx, _dy = _hermite(x0, y0, tx0, ty0, x1, y1, tx1, ty1, h, m)
            v = hx * nx + hy * ny
            if v >= best:
                return v, hx, hy, s0 + m * h
    return best, x[bi], y[bi], s[bi]


@njit
def _support_points_impl(s, x, y, otx, oty, itx, ity, L, nx, ny, hv, sx, sy, ss):
    for k in range(nx.shape[0]):
        a, b, c, d = _support_one(s, x, y, otx, oty, itx, ity, L, nx[k], ny[k])
        hv[k] = a
        sx[k] = b
        sy[k] = c
        ss[k] = d


@njit
def _bisect_line(s, x, y, otx, oty, itx, ity, L, i, Qx, Qy, dx, dy, glo_pos):
    """Root of cross(d, H(t)-Q) on segment i, bracketed by a sign change."""
    x0, y0, tx0, ty0, x1, y1, tx1, ty1, s0, h = _seg_geom(s, x, y, otx, oty, itx, ity, L, i)
    a, b = 0.0, 1.0
    for _ in range(_BISECT_ITERS):
        m = 0.5 * (a + b)
        hx, hy, _dx, _dy = _hermite(x0, y0, tx0, ty0, x1, y1, tx1, ty1, h, m)
        g = dx * (hy - Qy) - dy * (hx - Qx)
        if (g > 0.0) == glo_pos:
            a = m
        else:
            b = m
    m = 0.5 * (a + b)
    hx, hy, _dx, _dy = _hermite(x0, y0, tx0, ty0, x1, y1, tx1, ty1, h, m)
    return s0 + m * h, hx, hy


@njit
def _interior_exit_one(s, x, y, otx, oty, itx, ity, L, Cx, Cy, dx, dy):
    """Boundary crossing of the ray C + t*d, t > 0, from interior C.

    Returns (status, sigma, r) with r the ray parameter at the crossing.
    """
    n = s.shape[0]
    for i in range(n):
        j = i + 1
        if j == n:
            j = 0
        gi = dx * (y[i] - Cy) - dy * (x[i] - Cx)
        gj = dx * (y[j] - Cy) - dy * (x[j] - Cx)
        if gi == 0.0:
            ri = (x[i] - Cx) * dx + (y[i] - Cy) * dy
            if ri > 0.0:
                return 0, s[i], ri
            continue
        if (gi > 0.0) != (gj > 0.0):
            mx = 0.5 * (x[i] + x[j])
            my = 0.5 * (y[i] + y[j])
            if (mx - Cx) * dx + (my - Cy) * dy > 0.0:
                sig, hx, hy = _bisect_line(s, x, y, otx, oty, itx, ity, L, i,
                                           Cx, Cy, dx, dy, gi > 0.0)
                return 0, sig, (hx - Cx) * dx + (hy - Cy) * dy
    return 2, 0.0, 0.0


@njit
def _interior_exits_impl(s, x, y, otx, oty, itx, ity, L, Cx, Cy, dx, dy, status, sig, r):
    for k in range(dx.shape[0]):
        st, a, b = _interior_exit_one(s, x, y, otx, oty, itx, ity, L, Cx, Cy, dx[k], dy[k])
        status[k] = st
        sig[k] = a
        r[k] = b


@njit
def _next_hit_one(s, x, y, otx, oty, itx, ity, L, sig0, X0x, X0y, dx, dy, eps):
    """The other boundary crossing of the chord line through X0 = X(sig0) along d.

    The crossing at sig0 itself is excluded by the forward-distance test;
    returns (status, sigma1).  A chord shorter than the sample spacing is
    recovered by subdividing the segments adjacent to sig0.
    """
    n = s.shape[0]
    best_t = eps
    best_sig = -1.0
    found = False
    for i in range(n):
        j = i + 1
        if j == n:
            j = 0
        gi = dx * (y[i] - X0y) - dy * (x[i] - X0x)
        gj = dx * (y[j] - X0y) - dy * (x[j] - X0x)
        if abs(gi) <= eps:
            gi = 0.0
        if abs(gj) <= eps:
            gj = 0.0
        if gi == 0.0:
            t = (x[i] - X0x) * dx + (y[i] - X0y) * dy
            if t > best_t:
                best_t = t
                best_sig = s[i]
                found = True
            continue
        if gj == 0.0:
            continue
        if (gi > 0.0) != (gj > 0.0):
            sig, hx, hy = _bisect_line(s, x, y, otx, oty, itx, ity, L, i,
                                       X0x, X0y, dx, dy, gi > 0.0)
            t = (hx - X0x) * dx + (hy - X0y) * dy
            if t > best_t:
                best_t = t
                best_sig = sig
                found = True
    if found:
        return 0, best_sig
    # tiny chord: both crossings inside one sample segment; subdivide near sig0
    i0 = _seg_of(s, L, sig0 % L)
    for i in (i0, (i0 + 1) % n):
        x0, y0, tx0, ty0, x1, y1, tx1, ty1, s0, h = _seg_geom(s, x, y, otx, oty, itx, ity, L, i)
        sub = 512
        gp = 0.0
        started = False
        for k in range(sub + 1):
            t = k / sub
            hx, hy, _dx, _dy = _hermite(x0, y0, tx0, ty0, x1, y1, tx1, ty1, h, t)
            fwd = (hx - X0x) * dx + (hy - X0y) * dy
            g = dx * (hy - X0y) - dy * (hx - X0x)
            if fwd <= eps:
                started = False
                continue
            if started and (g > 0.0) != (gp > 0.0):
                lo = s0 + (k - 1) / sub * h
                hi = s0 + t * h
                for _ in range(_BISECT_ITERS):
                    m = 0.5 * (lo + hi)
                    hx, hy, _a, _b = _eval_one(s, x, y, otx, oty, itx, ity, L, m)
                    g2 = dx * (hy - X0y) - dy * (hx - X0x)
                    if (g2 > 0.0) == (gp > 0.0):
                        lo = m
                    else:
                        hi = m
                return 0, 0.5 * (lo + hi)
            gp = g
            started = True
    return 2, 0.0


@njit
def _orbit_impl(s, x, y, otx, oty, itx, ity, L, sig0, th0, niter, graze_eps, eps,
                sig, th, lift, cx, cy, cdx, cdy):
    """Iterate the billiard map niter times from (sig0, th0).

    Fills states (niter+1 entries), the monotone lift, and the chord launch
    data (position + unit direction) for each of the niter chords.
    Returns status: 0 ok, 1 grazing, 2 no intersection.
    """
    sg = sig0 % L
    t = th0
    lf = sg
    sig[0] = sg
    th[0] = t
    lift[0] = lf
    for k in range(niter):
        if t < graze_eps or t > math.pi - graze_eps:
            return 1
        px, py, dx0, dy0 = _eval_one(s, x, y, otx, oty, itx, ity, L, sg)
        nrm = math.hypot(dx0, dy0)
        tx0 = dx0 / nrm
        ty0 = dy0 / nrm
        ct = math.cos(t)
        st_ = math.sin(t)
        dx = tx0 * ct - ty0 * st_
        dy = tx0 * st_ + ty0 * ct
        cx[k] = px
        cy[k] = py
        cdx[k] = dx
        cdy[k] = dy
        status, sg1 = _next_hit_one(s, x, y, otx, oty, itx, ity, L, sg, px, py, dx, dy, eps)
        if status != 0:
            return 2
        qx, qy, dx1, dy1 = _eval_one(s, x, y, otx, oty, itx, ity, L, sg1)
        nrm = math.hypot(dx1, dy1)
        tx1 = dx1 / nrm
        ty1 = dy1 / nrm
        # reflect d about the tangent: d' = T^2 * conj(d) in complex form
        a = tx1 * tx1 - ty1 * ty1
        b = 2.0 * tx1 * ty1
        rx = a * dx + b * dy
        ry = b * dx - a * dy
        t = math.atan2(tx1 * ry - ty1 * rx, tx1 * rx + ty1 * ry)
        adv = (sg1 - sg) % L
        lf += adv
        sg = sg1
        sig[k + 1] = sg
        th[k + 1] = t
        lift[k + 1] = lf
    return 0


# ---------------------------------------------------------------------------
# vectorized numpy fallback
# ---------------------------------------------------------------------------

def _np_chunks(m, n):
    step = max(1, 4_000_000 // max(n, 1))
    for a in range(0, m, step):
        yield a, min(m, a + step)


def _np_seg_arrays(s, x, y, otx, oty, itx, ity, L):
    n = s.shape[0]
    j = np.roll(np.arange(n), -1)
    h = np.empty(n)
    h[:-1] = np.diff(s)
    h[-1] = L - s[-1]
    return (x, y, otx, oty, x[j], y[j], itx[j], ity[j], h)


def _np_hermite(seg, i, t, deriv=False):
    x0, y0, tx0, ty0, x1, y1, tx1, ty1, h = (a[i] for a in seg)
    t2 = t * t
    t3 = t2 * t
    px = ((2 * t3 - 3 * t2 + 1) * x0 + (t3 - 2 * t2 + t) * h * tx0
          + (-2 * t3 + 3 * t2) * x1 + (t3 - t2) * h * tx1)
    py = ((2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * h * ty0
          + (-2 * t3 + 3 * t2) * y1 + (t3 - t2) * h * ty1)
    if not deriv:
        return px, py
    dx = ((6 * t2 - 6 * t) * x0 + (3 * t2 - 4 * t + 1) * h * tx0
          + (-6 * t2 + 6 * t) * x1 + (3 * t2 - 2 * t) * h * tx1) / h
    dy = ((6 * t2 - 6 * t) * y0 + (3 * t2 - 4 * t + 1) * h * ty0
          + (-6 * t2 + 6 * t) * y1 + (3 * t2 - 2 * t) * h * ty1) / h
    return px, py, dx, dy


def _np_locate(s, L, q):
    q = np.asarray(q, dtype=np.float64) % L
    i = np.searchsorted(s, q, side="right") - 1
    return q, i


def _curve_eval_numpy(chain, q):
    s, x, y, otx, oty, itx, ity, L = chain
    seg = _np_seg_arrays(*chain)
    q, i = _np_locate(s, L, q)
    t = (q - s[i]) / seg[8][i]
    px, py, dx, dy = _np_hermite(seg, i, t, deriv=True)
    nrm = np.hypot(dx, dy)
    return px, py, dx / nrm, dy / nrm


def _np_bisect(seg, i, lo, hi, sign_fn, lo_sign):
    """Vector bisection on local parameter in [lo, hi] per row.

    sign_fn(i, t) -> bool array of signs; lo_sign is the sign at the lower end
    (scalar or per-row).  Rows where the midpoint matches lo_sign move lo.
    """
    for _ in range(_BISECT_ITERS):
        m = 0.5 * (lo + hi)
        same = sign_fn(i, m) == lo_sign
        lo = np.where(same, m, lo)
        hi = np.where(same, hi, m)
    return 0.5 * (lo + hi)


def _tangency_pairs_numpy(chain, Px, Py, eps):
    s, x, y, otx, oty, itx, ity, L = chain
    n = s.shape[0]
    m = Px.shape[0]
    seg = _np_seg_arrays(*chain)
    h = seg[8]
    jn = np.roll(np.arange(n), -1)
    status = np.zeros(m, np.int8)
    sR = np.zeros(m)
    xR = np.zeros(m)
    yR = np.zeros(m)
    cR = np.zeros(m, np.int8)
    sL = np.zeros(m)
    xL = np.zeros(m)
    yL = np.zeros(m)
    cL = np.zeros(m, np.int8)
    for a, b in _np_chunks(m, n):
        px = Px[a:b, None]
        py = Py[a:b, None]
        gi = (x[None, :] - px) * ity[None, :] - (y[None, :] - py) * itx[None, :]
        go = (x[None, :] - px) * oty[None, :] - (y[None, :] - py) * otx[None, :]
        gi[np.abs(gi) <= eps] = 0.0
        go[np.abs(go) <= eps] = 0.0
        gin_next = gi[:, jn]
        both_zero = (gi == 0) & (go == 0)
        corner_beg = (((gi < 0) & (go >= 0)) | ((gi <= 0) & (go > 0))) & ~both_zero
        corner_end = (((gi > 0) & (go <= 0)) | ((gi >= 0) & (go < 0))) & ~both_zero
        seg_beg = (go < 0) & (gin_next > 0)
        seg_end = (go > 0) & (gin_next < 0)
        nb = corner_beg.sum(axis=1) + seg_beg.sum(axis=1)
        ne = corner_end.sum(axis=1) + seg_end.sum(axis=1)
        # rows with a snapped double zero (tangency exactly at a smooth sample)
        # are handed to the scalar resolver by the caller
        bad = (nb != 1) | (ne != 1) | both_zero.any(axis=1)
        status[a:b][bad] = 1
        for cmask, smask, so, xo, yo, co, lo_sign in (
            (corner_beg, seg_beg, sR, xR, yR, cR, False),
            (corner_end, seg_end, sL, xL, yL, cL, True),
        ):
            at_corner = cmask.any(axis=1)
            ci = np.argmax(cmask, axis=1)
            rows = np.nonzero(at_corner & ~bad)[0]
            so[a + rows] = s[ci[rows]]
            xo[a + rows] = x[ci[rows]]
            yo[a + rows] = y[ci[rows]]
            co[a + rows] = 1
            rows = np.nonzero(~at_corner & ~bad)[0]
            if rows.size:
                si = np.argmax(smask[rows], axis=1)
                ppx = Px[a + rows]
                ppy = Py[a + rows]

                def gsign(i, t, ppx=ppx, ppy=ppy):
                    hx, hy, dx, dy = _np_hermite(seg, i, t, deriv=True)
                    return (hx - ppx) * dy - (hy - ppy) * dx > 0

                tt = _np_bisect(seg, si, np.zeros(rows.size), np.ones(rows.size),
                                gsign, lo_sign)
                hx, hy = _np_hermite(seg, si, tt)
                so[a + rows] = s[si] + tt * h[si]
                xo[a + rows] = hx
                yo[a + rows] = hy
    return status, sR, xR, yR, cR, sL, xL, yL, cL


def _cap_perimeters_numpy(chain, Px, Py, eps):
    L = chain[7]
    status, sR, xR, yR, _cR, sL, xL, yL, _cL = _tangency_pairs_numpy(chain, Px, Py, eps)
    arc = (sL - sR) % L
    out = np.hypot(Px - xR, Py - yR) + np.hypot(Px - xL, Py - yL) + arc
    out[status != 0] = np.nan
    return status, out


def _support_points_numpy(chain, nx, ny):
    s, x, y, otx, oty, itx, ity, L = chain
    n = s.shape[0]
    m = nx.shape[0]
    seg = _np_seg_arrays(*chain)
    h = seg[8]
    hv = np.empty(m)
    sx = np.empty(m)
    sy = np.empty(m)
    ss = np.empty(m)
    for a, b in _np_chunks(m, n):
        vals = x[None, :] * nx[a:b, None] + y[None, :] * ny[a:b, None]
        bi = np.argmax(vals, axis=1)
        hv[a:b] = vals[np.arange(b - a), bi]
        sx[a:b] = x[bi]
        sy[a:b] = y[bi]
        ss[a:b] = s[bi]
        fi = itx[bi] * nx[a:b] + ity[bi] * ny[a:b]
        fo = otx[bi] * nx[a:b] + oty[bi] * ny[a:b]
        smooth = ~((fi >= 0) & (fo <= 0))
        rows = np.nonzero(smooth)[0]
        if not rows.size:
            continue
        # f = <T, n> crosses + -> - in the segment before or after the argmax sample
        for off in (-1, 0):
            i = (bi[rows] + off) % n
            f0 = (otx[i] * nx[a + rows] + oty[i] * ny[a + rows])
            i1 = (i + 1) % n
            f1 = (itx[i1] * nx[a + rows] + ity[i1] * ny[a + rows])
            ok = (f0 > 0) & (f1 < 0)
            rr = rows[ok]
            if not rr.size:
                continue
            ii = i[ok]
            nnx = nx[a + rr]
            nny = ny[a + rr]

            def fsign(i, t, nnx=nnx, nny=nny):
                _hx, _hy, dx, dy = _np_hermite(seg, i, t, deriv=True)
                return dx * nnx + dy * nny > 0

            tt = _np_bisect(seg, ii, np.zeros(rr.size), np.ones(rr.size), fsign, True)
            hx, hy = _np_hermite(seg, ii, tt)
            v = hx * nnx + hy * nny
            better = v >= hv[a + rr]
            upd = rr[better]
            hv[a + upd] = v[better]
            sx[a + upd] = hx[better]
            sy[a + upd] = hy[better]
            ss[a + upd] = (s[ii] + tt * h[ii])[better]
    return hv, sx, sy, ss


def _interior_exits_numpy(chain, Cx, Cy, dx, dy):
    s, x, y, otx, oty, itx, ity, L = chain
    n = s.shape[0]
    m = dx.shape[0]
    seg = _np_seg_arrays(*chain)
    h = seg[8]
    jn = np.roll(np.arange(n), -1)
    status = np.zeros(m, np.int8)
    sig = np.zeros(m)
    r = np.zeros(m)
    for a, b in _np_chunks(m, n):
        g = dx[a:b, None] * (y[None, :] - Cy) - dy[a:b, None] * (x[None, :] - Cx)
        change = (g > 0) != (g[:, jn] > 0)
        mx = 0.5 * (x + x[jn])[None, :] - Cx
        my = 0.5 * (y + y[jn])[None, :] - Cy
        fwd = mx * dx[a:b, None] + my * dy[a:b, None] > 0
        cand = change & fwd
        ok = cand.any(axis=1)
        status[a:b][~ok] = 2
        rows = np.nonzero(ok)[0]
        if not rows.size:
            continue
        i = np.argmax(cand[rows], axis=1)
        ddx = dx[a + rows]
        ddy = dy[a + rows]
        gpos = g[rows, i] > 0

        def gsign(i, t, ddx=ddx, ddy=ddy):
            hx, hy = _np_hermite(seg, i, t)
            return ddx * (hy - Cy) - ddy * (hx - Cx) > 0

        tt = _np_bisect(seg, i, np.zeros(rows.size), np.ones(rows.size), gsign, gpos)
        hx, hy = _np_hermite(seg, i, tt)
        sig[a + rows] = s[i] + tt * h[i]
        r[a + rows] = (hx - Cx) * ddx + (hy - Cy) * ddy
    return status, sig, r


def _orbit_numpy(chain, sig0, th0, niter, graze_eps, eps,
                 sig, th, lift, cx, cy, cdx, cdy):
    s, x, y, otx, oty, itx, ity, L = chain
    n = s.shape[0]
    seg = _np_seg_arrays(*chain)
    h = seg[8]
    jn = np.roll(np.arange(n), -1)
    sg = sig0 % L
    t = th0
    lf = sg
    sig[0] = sg
    th[0] = t
    lift[0] = lf
    for k in range(niter):
        if t < graze_eps or t > math.pi - graze_eps:
            return 1
        px, py, tx0, ty0 = (v.item() for v in _curve_eval_numpy(chain, np.array([sg])))
        ct, st_ = math.cos(t), math.sin(t)
        dx = tx0 * ct - ty0 * st_
        dy = tx0 * st_ + ty0 * ct
        cx[k] = px
        cy[k] = py
        cdx[k] = dx
        cdy[k] = dy
        g = dx * (y - py) - dy * (x - px)
        g[np.abs(g) <= eps] = 0.0
        gn = g[jn]
        node_t = (x - px) * dx + (y - py) * dy
        best = eps
        best_sig = None
        zero_rows = np.nonzero((g == 0.0) & (node_t > eps))[0]
        if zero_rows.size:
            bi = zero_rows[np.argmax(node_t[zero_rows])]
            best = node_t[bi]
            best_sig = s[bi]
        cand = np.nonzero((g != 0.0) & (gn != 0.0) & ((g > 0) != (gn > 0)))[0]
        if cand.size:
            gpos = g[cand] > 0

            def gsign(i, tt, dx=dx, dy=dy, px=px, py=py):
                hx, hy = _np_hermite(seg, i, tt)
                return dx * (hy - py) - dy * (hx - px) > 0

            ttt = _np_bisect(seg, cand, np.zeros(cand.size), np.ones(cand.size), gsign, gpos)
            hx, hy = _np_hermite(seg, cand, ttt)
            fwd = (hx - px) * dx + (hy - py) * dy
            bi = np.argmax(fwd)
            if fwd[bi] > best:
                best = fwd[bi]
                best_sig = (s[cand] + ttt * h[cand])[bi]
        if best_sig is None:
            fn = getattr(_next_hit_one, "py_func", _next_hit_one)
            st2, best_sig = fn(s, x, y, otx, oty, itx, ity, L, sg, px, py, dx, dy, eps)
            if st2 != 0:
                return 2
        sg1 = best_sig
        _qx, _qy, tx1, ty1 = (v.item() for v in _curve_eval_numpy(chain, np.array([sg1])))
        a = tx1 * tx1 - ty1 * ty1
        b = 2.0 * tx1 * ty1
        rx = a * dx + b * dy
        ry = b * dx - a * dy
        t = math.atan2(tx1 * ry - ty1 * rx, tx1 * rx + ty1 * ry)
        lf += (sg1 - sg) % L
        sg = sg1
        sig[k + 1] = sg
        th[k + 1] = t
        lift[k + 1] = lf
    return 0


# ---------------------------------------------------------------------------
# dispatch
# ---------------------------------------------------------------------------

def curve_eval(chain, q):
    """Point and unit tangent at arc positions q (any real; wrapped mod L)."""
    q = np.ascontiguousarray(q, dtype=np.float64)
    if BACKEND == "numpy":
        return _curve_eval_numpy(chain, q)
    m = q.shape[0]
    px = np.empty(m)
    py = np.empty(m)
    tx = np.empty(m)
    ty = np.empty(m)
    _curve_eval_impl(*chain, q, px, py, tx, ty)
    return px, py, tx, ty


def tangency_pairs(chain, Px, Py, eps):
    """Tangency data from exterior points: (status, sR,xR,yR,cR, sL,xL,yL,cL).

    R begins the retained far arc (g: - -> +), L ends it (+ -> -); c* flag
    corner tangencies.  status != 0 marks rows where the scan did not find
    exactly one transition of each kind.
    """
    Px = np.ascontiguousarray(Px, dtype=np.float64)
    Py = np.ascontiguousarray(Py, dtype=np.float64)
    if BACKEND == "numpy":
        return _tangency_pairs_numpy(chain, Px, Py, eps)
    m = Px.shape[0]
    status = np.empty(m, np.int8)
    sR = np.empty(m)
    xR = np.empty(m)
    yR = np.empty(m)
    cR = np.empty(m, np.int8)
    sL = np.empty(m)
    xL = np.empty(m)
    yL = np.empty(m)
    cL = np.empty(m, np.int8)
    _tangency_pairs_impl(*chain, Px, Py, eps, status, sR, xR, yR, cR, sL, xL, yL, cL)
    return status, sR, xR, yR, cR, sL, xL, yL, cL


def cap_perimeters(chain, Px, Py, eps):
    """Perimeter of Conv({P} u body) per point: (status, values)."""
    Px = np.ascontiguousarray(Px, dtype=np.float64)
    Py = np.ascontiguousarray(Py, dtype=np.float64)
    if BACKEND == "numpy":
        return _cap_perimeters_numpy(chain, Px, Py, eps)
    m = Px.shape[0]
    status = np.empty(m, np.int8)
    out = np.empty(m)
    _cap_perimeters_impl(*chain, Px, Py, eps, status, out)
    return status, out


def tangency_pair_scalar(chain, px, py, eps):
    """Scalar-path tangency resolver; used to retry rows the batch scan flagged."""
    return _tangency_one(*chain, float(px), float(py), eps)


def support_points(chain, nx, ny):
    """Support function h(n) = max <X, n> with achieving point and arc position."""
    nx = np.ascontiguousarray(nx, dtype=np.float64)
    ny = np.ascontiguousarray(ny, dtype=np.float64)
    if BACKEND == "numpy":
        return _support_points_numpy(chain, nx, ny)
    m = nx.shape[0]
    hv = np.empty(m)
    sx = np.empty(m)
    sy = np.empty(m)
    ss = np.empty(m)
    _support_points_impl(*chain, nx, ny, hv, sx, sy, ss)
    return hv, sx, sy, ss


def interior_exits(chain, Cx, Cy, dx, dy):
    """Ray exits from an interior point along unit directions d: (status, sigma, r)."""
    dx = np.ascontiguousarray(dx, dtype=np.float64)
    dy = np.ascontiguousarray(dy, dtype=np.float64)
    if BACKEND == "numpy":
        return _interior_exits_numpy(chain, float(Cx), float(Cy), dx, dy)
    m = dx.shape[0]
    status = np.empty(m, np.int8)
    sig = np.empty(m)
    r = np.empty(m)
    _interior_exits_impl(*chain, float(Cx), float(Cy), dx, dy, status, sig, r)
    return status, sig, r


def orbit(chain, sig0, th0, niter, graze_eps, eps):
    """Billiard orbit: (status, sigma[n+1], theta[n+1], lift[n+1], chord data[n])."""
    niter = int(niter)
    sig = np.empty(niter + 1)
    th = np.empty(niter + 1)
    lift = np.empty(niter + 1)
    cx = np.empty(niter)
    cy = np.empty(niter)
    cdx = np.empty(niter)
    cdy = np.empty(niter)
    impl = _orbit_numpy if BACKEND == "numpy" else _orbit_impl
    if BACKEND == "numpy":
        status = impl(chain, float(sig0), float(th0), niter, graze_eps, eps,
                      sig, th, lift, cx, cy, cdx, cdy)
    else:
        status = impl(*chain, float(sig0), float(th0), niter, graze_eps, eps,
                      sig, th, lift, cx, cy, cdx, cdy)
    return status, sig, th, lift, cx, cy, cdx, cdy
