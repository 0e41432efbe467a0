"""Acceptance gate: one test per shipped guarantee, at the stated tolerances.

Known red: the caustic-drift bound in test_a5 (20 starts, 200 bounces,
max tangency error < 1e-5).  The invariant family of tangent lines to the
cornered caustic is Lyapunov-unstable with multiplier ~1.23 per bounce
(measured directly on pairs of nearby orbits, rate independent of table
resolution), so any per-bounce float64 rounding grows past 1e-5 by roughly
bounce 120 no matter how the table is produced.  The criterion is asserted
as stated; the string-invariant half passes with margin.
"""

import subprocess
import sys
import time

import numpy as np
import pytest

from caustica.billiard import (PhaseState, caustic_tangent_state,
                               rotation_number, verify_caustic)
from caustica.curves import SampledCurve, sup_distance
from caustica.geom import ConvexBody
from caustica.stringtable import string_invariant, string_table
from caustica.switched import (SwitchedConfig, build_gamma, build_phi,
                               explicit_table, feasibility,
                               feasibility_window, smoothness_report)

ALPHA = 0.39


@pytest.fixture(scope="module")
def switched_pair():
    config = SwitchedConfig.from_alpha(ALPHA)
    gamma = build_gamma(build_phi(config), config)
    return config, gamma, ConvexBody.from_curve(gamma), explicit_table(gamma, config)


def test_a1_gardener_oracle():
    seg = ConvexBody.segment(-1.0 + 0j, 1.0 + 0j)
    t0 = time.perf_counter()
    table = string_table(seg, 6.0, n_samples=1024)
    elapsed = time.perf_counter() - t0
    a, b = 2.0, np.sqrt(3.0)
    th = np.angle(table.points)
    r_exact = a * b / np.hypot(b * np.cos(th), a * np.sin(th))
    assert np.abs(np.abs(table.points) - r_exact).max() < 1e-8
    assert elapsed < 1.0


def test_a2_circle_oracle():
    body = ConvexBody.circle(1.0, n=2048)
    S = 2.0 * np.sqrt(3.0) + 4.0 * np.pi / 3.0
    table = string_table(body, S, n_samples=1024)
    assert np.abs(np.abs(table.points) - 2.0).max() < 1e-8
    S_est, _dev = string_invariant(table, body)
    assert abs(S_est - S) / S < 1e-9


def test_a3_confocal_oracle():
    body = ConvexBody.ellipse(2.0, 1.0, n=2048)
    table = string_table(body, body.perimeter + 1.0, n_samples=2048)
    x, y = table.points.real, table.points.imag
    u, *_ = np.linalg.lstsq(np.c_[x * x, y * y], np.ones_like(x), rcond=None)
    assert abs(1.0 / u[0] - 1.0 / u[1] - 3.0) < 1e-6


def test_a4_feasibility_window():
    assert feasibility(0.390).feasible
    low = feasibility(0.380)
    assert not low.feasible and low.reason != "alpha >= pi/8"
    high = feasibility(0.40)
    assert not high.feasible and high.reason == "alpha >= pi/8"
    lo, hi = feasibility_window()
    assert abs(lo - 0.3872) < 1e-3
    assert abs(hi - 0.39270) < 1e-3


def test_a5_switched_caustic_property(switched_pair):
    _config, _gamma, body, table = switched_pair
    _S_est, max_dev = string_invariant(table, body)
    assert max_dev < 1e-6
    err, _rho = verify_caustic(table, body, 20, 200)
    assert err < 1e-5  # known red: see module docstring


def test_a6_caustic_corner_spikes(switched_pair):
    config, _gamma, _body, _table = switched_pair
    phi = build_phi(config)
    fine = build_gamma(phi, config, samples_per_quarter=4096)
    corner_turn = np.pi / 2 - 2.0 * ALPHA
    turns = fine.turning_angles()
    spikes = np.nonzero(np.abs(turns) > 0.3)[0]
    assert spikes.shape[0] == 4
    assert np.abs(turns[spikes] - corner_turn).max() < 1e-3
    # spikes sit at the corners i^k A: entry k turns into sample k+1
    corner_pts = fine.points[(spikes + 1) % fine.n]
    expected = (-1.0 - 1.0j) * 1j ** np.arange(4)
    for pt in corner_pts:
        assert np.abs(expected - pt).min() < 1e-12
    off_fine = np.abs(np.delete(turns, spikes)).max()
    coarse = build_gamma(phi, config, samples_per_quarter=2048)
    off_coarse = np.abs(np.delete(coarse.turning_angles(),
                                  np.nonzero(np.abs(coarse.turning_angles()) > 0.3)[0])).max()
    assert off_fine < off_coarse
    assert 0.8 * 2.0 < off_coarse / off_fine < 1.2 * 2.0


def test_a7_table_smoothness_orders(switched_pair):
    config, _gamma, _body, _table = switched_pair
    # wider germ zone: stencil truncation then dominates the ~1e-9
    # quadrature floor, exposing the clean convergence rates
    eps = config.s_hat / 20.0
    gamma = build_gamma(build_phi(config, eps=eps), config,
                        samples_per_quarter=256)
    table = explicit_table(gamma, config, samples_per_piece=256)
    predicted = {1: 16.0, 2: 8.0}  # halving h divides the jump by 2^accuracy
    for row in smoothness_report(table, junctions=table.junction_arcs[:2],
                                 max_order=3):
        if row.order in predicted:
            assert row.jump < row.jump_coarse
            ratio = predicted[row.order]
            assert abs(row.ratio - ratio) / ratio < 0.30
        else:
            assert row.ratio == pytest.approx(1.0, abs=0.05)
            assert row.richardson > 0.5
    perturbed = build_gamma(
        build_phi(config, eps=eps, germ=(config.phi1 + 0.05, config.phi2)),
        config, samples_per_quarter=256)
    ptable = explicit_table(perturbed, config, samples_per_piece=256)
    for row in smoothness_report(ptable, junctions=ptable.junction_arcs[:2],
                                 max_order=2):
        if row.order == 1:
            assert abs(row.ratio - 16.0) / 16.0 < 0.30
        else:
            assert row.ratio < 4.0
            assert row.richardson > 1e-2


def test_a8_explicit_matches_string_table(switched_pair):
    config, _gamma, body, table = switched_pair
    generic = string_table(body, config.string_parameter, n_samples=2048)
    assert sup_distance(generic, table, densify=8) < 1e-5
    assert sup_distance(table, generic, densify=8) < 1e-5


def test_a9_rotation_number_physics():
    circle = SampledCurve.circle(2.0, n=4096)
    state = caustic_tangent_state(circle, ConvexBody.circle(1.0, n=2048), 0.3)
    assert abs(rotation_number(circle, state, 10000) - 1.0 / 3.0) < 1e-4

    ellipse = SampledCurve.ellipse(2.0, 1.0, n=4096)
    rho_perp = rotation_number(ellipse, PhaseState(0.0, np.pi / 2), 200)
    assert abs(rho_perp - 0.5) < 1e-12

    # confocal family of ellipse(2, 1): foci at +-sqrt(3), so a > sqrt(3);
    # shrinking the caustic raises rho toward 1/2 and shortens the string
    rhos, strings = [], []
    for a in (1.95, 1.90, 1.85, 1.80, 1.75):
        body = ConvexBody.ellipse(a, np.sqrt(a * a - 3.0), n=2048)
        state = caustic_tangent_state(ellipse, body, 0.4)
        rhos.append(rotation_number(ellipse, state, 4000))
        S_est, _dev = string_invariant(ellipse, body)
        strings.append(S_est)
    rhos = np.array(rhos)
    assert np.all(np.diff(rhos) > 1e-4)
    assert np.all(rhos < 0.5)
    assert np.all(np.diff(0.5 - rhos) < 0.0)
    assert np.all(np.diff(strings) < 0.0)


def test_a10_cli_determinism(tmp_path):
    outputs = []
    for tag in ("one", "two"):
        table = tmp_path / f"table_{tag}.csv"
        caustic = tmp_path / f"gamma_{tag}.csv"
        proc = subprocess.run(
            [sys.executable, "-m", "caustica", "build-switched",
             "--alpha", "0.39", "--out", str(table), "--caustic", str(caustic)],
            capture_output=True, text=True, timeout=300)
        assert proc.returncode == 0, proc.stderr
        outputs.append((table.read_bytes(), caustic.read_bytes()))
    assert outputs[0][0] == outputs[1][0]
    assert outputs[0][1] == outputs[1][1]
