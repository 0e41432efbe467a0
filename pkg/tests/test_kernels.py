"""Kernel correctness against closed forms, and numba/numpy backend agreement."""

import os
import subprocess
import sys

import numpy as np
import pytest

from caustica import kernels
from caustica.curves import SampledCurve
from caustica.geom import ConvexBody

R = 1.5


@pytest.fixture(scope="module")
def circle_chain():
    return SampledCurve.circle(R, n=2048).chain


@pytest.fixture(scope="module")
def square_chain():
    return ConvexBody.polygon([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j]).chain


class TestCurveEval:

    def test_circle_closed_form(self, circle_chain):
        q = np.linspace(-5.0, 25.0, 311)
        px, py, tx, ty = kernels.curve_eval(circle_chain, q)
        th = q / R
        assert np.abs(px + 1j * py - R * np.exp(1j * th)).max() < 1e-10
        assert np.abs(tx + 1j * ty - 1j * np.exp(1j * th)).max() < 1e-8
        assert np.abs(np.hypot(tx, ty) - 1.0).max() < 1e-15

    def test_square_edges(self, square_chain):
        # ccw input keeps its vertex order, so s = 0 sits at 1+1j
        px, py, tx, ty = kernels.curve_eval(square_chain, np.array([0.5, 2.5]))
        assert px[0] + 1j * py[0] == pytest.approx(0.5 + 1j, abs=1e-13)
        assert tx[0] + 1j * ty[0] == pytest.approx(-1 + 0j, abs=1e-13)
        assert px[1] + 1j * py[1] == pytest.approx(-1 + 0.5j, abs=1e-13)


class TestSupport:

    def test_circle_support(self, circle_chain):
        psi = 2.0 * np.pi * np.arange(64) / 64 + 0.017
        hv, sx, sy, ss = kernels.support_points(
            circle_chain, np.cos(psi), np.sin(psi))
        assert np.abs(hv - R).max() < 1e-10
        assert np.abs(sx + 1j * sy - R * np.exp(1j * psi)).max() < 1e-8
        assert np.abs((ss / R - psi + np.pi) % (2 * np.pi) - np.pi).max() < 1e-8

    def test_square_corner_support(self, square_chain):
        psi = np.array([0.3, np.pi / 4, 1.2])
        hv, sx, sy, _ss = kernels.support_points(
            square_chain, np.cos(psi), np.sin(psi))
        assert np.abs(sx - 1.0).max() < 1e-12 and np.abs(sy - 1.0).max() < 1e-12
        assert np.abs(hv - (np.cos(psi) + np.sin(psi))).max() < 1e-12

    def test_offset_circle_support(self):
        c = 0.3 + 0.2j
        chain = SampledCurve.circle(R, center=c, n=2048).chain
        psi = np.array([0.0, 1.0, 2.5, 4.0])
        hv, _sx, _sy, _ss = kernels.support_points(chain, np.cos(psi), np.sin(psi))
        exact = R + c.real * np.cos(psi) + c.imag * np.sin(psi)
        assert np.abs(hv - exact).max() < 1e-10


class TestTangency:

    def test_circle_tangency_arcs(self, circle_chain):
        d = 3.0
        beta = np.arccos(R / d)  # half-angle subtended by the cut arc
        st, sR, xR, yR, cR, sL, xL, yL, cL = kernels.tangency_pairs(
            circle_chain, np.array([d]), np.array([0.0]), 1e-12)
        assert st[0] == 0 and cR[0] == 0 and cL[0] == 0
        assert sR[0] == pytest.approx(R * beta, abs=1e-8)
        assert sL[0] == pytest.approx(R * (2 * np.pi - beta), abs=1e-8)
        for x, y in ((xR[0], yR[0]), (xL[0], yL[0])):
            assert np.hypot(x, y) == pytest.approx(R, abs=1e-10)
            # tangency: radius orthogonal to the segment toward P
            assert abs(x * (x - d) + y * y) < 1e-8

    def test_square_corner_tangency(self, square_chain):
        st, _sR, xR, yR, cR, _sL, xL, yL, cL = kernels.tangency_pairs(
            square_chain, np.array([3.0]), np.array([0.0]), 1e-12)
        assert st[0] == 0 and cR[0] == 1 and cL[0] == 1
        assert {complex(xR[0], yR[0]), complex(xL[0], yL[0])} == {1 - 1j, 1 + 1j}

    def test_circle_cap_perimeter(self, circle_chain):
        d = 3.0
        beta = np.arccos(R / d)
        st, vals = kernels.cap_perimeters(
            circle_chain, np.array([d]), np.array([0.0]), 1e-12)
        exact = 2.0 * np.sqrt(d * d - R * R) + R * (2 * np.pi - 2 * beta)
        assert st[0] == 0
        assert vals[0] == pytest.approx(exact, abs=1e-8)


class TestInteriorExits:

    def test_centered_rays(self, circle_chain):
        psi = 2.0 * np.pi * np.arange(16) / 16 + 0.05
        st, sig, r = kernels.interior_exits(
            circle_chain, 0.0, 0.0, np.cos(psi), np.sin(psi))
        assert np.all(st == 0)
        assert np.abs(r - R).max() < 1e-10
        assert np.abs((sig / R - psi + np.pi) % (2 * np.pi) - np.pi).max() < 1e-8

    def test_offset_ray(self, circle_chain):
        cx, cy = 0.5, -0.3
        st, _sig, r = kernels.interior_exits(
            circle_chain, cx, cy, np.array([1.0]), np.array([0.0]))
        # |(cx + r, cy)| = R
        exact = -cx + np.sqrt(R * R - cy * cy)
        assert st[0] == 0
        assert r[0] == pytest.approx(exact, abs=1e-10)


class TestOrbitKernel:

    def test_circle_invariants(self, circle_chain):
        th0 = 0.7
        status, sig, th, lift, cx, cy, cdx, cdy = kernels.orbit(
            circle_chain, 0.2, th0, 50, 1e-9, 1e-12)
        assert status == 0
        assert np.abs(th - th0).max() < 1e-9
        adv = np.diff(lift)
        assert np.abs(adv - 2.0 * R * th0).max() < 1e-8
        assert np.abs(np.hypot(cdx, cdy) - 1.0).max() < 1e-12
        assert np.abs(np.hypot(cx, cy) - R).max() < 1e-10


SCENARIO = r"""
import sys
import numpy as np
from caustica import kernels
from caustica.curves import SampledCurve
from caustica.geom import ConvexBody

out = {}
ell = SampledCurve.ellipse(2.0, 1.0, n=1024).chain
sq = ConvexBody.polygon([1 + 1j, -1 + 1j, -1 - 1j, 1 - 1j]).chain

q = np.linspace(-3.0, 12.0, 257)
out["eval"] = np.vstack(kernels.curve_eval(ell, q))

psi = 2.0 * np.pi * np.arange(128) / 128 + 0.013
out["support_ell"] = np.vstack(kernels.support_points(ell, np.cos(psi), np.sin(psi)))
out["support_sq"] = np.vstack(kernels.support_points(sq, np.cos(psi), np.sin(psi)))

Px = np.array([3.0, 0.0, -2.5, 2.2, 1.9])
Py = np.array([0.0, 2.0, 1.4, -1.8, 0.3])
res = kernels.tangency_pairs(ell, Px, Py, 1e-12)
out["tangency"] = np.vstack([np.asarray(a, dtype=np.float64) for a in res])
st, caps = kernels.cap_perimeters(ell, Px, Py, 1e-12)
out["caps"] = np.vstack([st.astype(np.float64), caps])
st, sig, r = kernels.interior_exits(ell, 0.3, -0.2, np.cos(psi), np.sin(psi))
out["exits"] = np.vstack([st.astype(np.float64), sig, r])

status, sig, th, lift, cx, cy, cdx, cdy = kernels.orbit(ell, 0.4, 1.1, 40, 1e-9, 1e-12)
out["orbit"] = np.concatenate([[float(status)], sig, th, lift, cx, cy, cdx, cdy])

np.savez(sys.argv[1], backend=kernels.BACKEND, **out)
"""


class TestBackendAgreement:

    def test_numpy_matches_default(self, tmp_path):
        paths = []
        for backend in ("numpy", ""):
            env = dict(os.environ)
            env.pop("CAUSTICA_BACKEND", None)
            if backend:
                env["CAUSTICA_BACKEND"] = backend
            path = tmp_path / f"kernels_{backend or 'default'}.npz"
            subprocess.run([sys.executable, "-c", SCENARIO, str(path)],
                           env=env, check=True, timeout=240)
            paths.append(path)
        got = np.load(paths[0], allow_pickle=False)
        ref = np.load(paths[1], allow_pickle=False)
        assert str(got["backend"]) == "numpy"
        for key in ("eval", "support_ell", "support_sq", "tangency", "caps", "exits"):
            np.testing.assert_allclose(got[key], ref[key], atol=1e-12, rtol=0.0,
                                       err_msg=key)
        np.testing.assert_allclose(got["orbit"], ref["orbit"], atol=1e-9, rtol=0.0)

    def test_bad_backend_rejected(self):
        env = dict(os.environ)
        env["CAUSTICA_BACKEND"] = "fortran"
        proc = subprocess.run([sys.executable, "-c", "import caustica.kernels"],
                              env=env, capture_output=True, text=True, timeout=120)
        assert proc.returncode != 0
        assert "CAUSTICA_BACKEND" in proc.stderr
