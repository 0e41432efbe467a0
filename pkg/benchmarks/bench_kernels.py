"""Compare the numba and pure-numpy kernel backends on the hot paths.

The backend is fixed at import time by CAUSTICA_BACKEND, so the parent
process re-runs this script once per backend as a worker subprocess and
prints a side-by-side table.  JIT compilation happens during warmup and is
excluded from the timings (best of 5 runs each).

    python3 benchmarks/bench_kernels.py
"""

import json
import os
import subprocess
import sys
import time

import numpy as np

REPEATS = 3


def workloads():
    from caustica import kernels
    from caustica.curves import SampledCurve
    from caustica.geom import ConvexBody

    body = ConvexBody.ellipse(2.0, 1.0, n=4096)
    square = ConvexBody.polygon([2 + 2j, -2 + 2j, -2 - 2j, 2 - 2j])
    table = SampledCurve.ellipse(2.0, 1.0, n=4096)

    rng = np.random.default_rng(7)
    psi = rng.uniform(0.0, 2.0 * np.pi, 20_000)
    ext = 4.0 * np.exp(1j * psi)

    jobs = [
        ("curve_eval (1M)", lambda: kernels.curve_eval(
            table.chain, rng.uniform(0.0, table.total_length, 1_000_000))),
        ("support_points (100k)", lambda: kernels.support_points(
            body.chain, np.cos(np.tile(psi, 5)), np.sin(np.tile(psi, 5)))),
        ("tangency_pairs (20k)", lambda: kernels.tangency_pairs(
            body.chain, ext.real, ext.imag, body.eps)),
        ("tangency_pairs corners (20k)", lambda: kernels.tangency_pairs(
            square.chain, 2.0 * ext.real, 2.0 * ext.imag, square.eps)),
        ("cap_perimeters (20k)", lambda: kernels.cap_perimeters(
            body.chain, ext.real, ext.imag, body.eps)),
        ("interior_exits (100k)", lambda: kernels.interior_exits(
            body.chain, 0.1, 0.05, np.cos(np.tile(psi, 5)), np.sin(np.tile(psi, 5)))),
        # the numpy orbit is a sequential per-bounce loop; keep it short
        ("orbit (5k bounces)", lambda: kernels.orbit(
            table.chain, 0.0, 1.1, 5_000, 1e-9,
            1e-12 * table.total_length)),
    ]
    return kernels.BACKEND, jobs


def run_worker():
    backend, jobs = workloads()
    timings = {}
    for name, fn in jobs:
        fn()  # warmup; compiles under the numba backend
        best = np.inf
        for _ in range(REPEATS):
            t0 = time.perf_counter()
            fn()
            best = min(best, time.perf_counter() - t0)
        timings[name] = best
    print(json.dumps({"backend": backend, "timings": timings}))


def run_backend(backend):
    env = dict(os.environ, CAUSTICA_BACKEND=backend)
    proc = subprocess.run([sys.executable, __file__, "--worker"],
                          capture_output=True, text=True, env=env,
                          check=True)
    out = json.loads(proc.stdout.splitlines()[-1])
    assert out["backend"] == backend, out
    return out["timings"]


def main():
    if "--worker" in sys.argv[1:]:
        run_worker()
        return
    numba_t = run_backend("numba")
    numpy_t = run_backend("numpy")
    width = max(len(k) for k in numba_t)
    print(f"{'kernel':<{width}}  {'numba':>10}  {'numpy':>10}  {'speedup':>8}")
    for name, tb in numba_t.items():
        tn = numpy_t[name]
        print(f"{name:<{width}}  {tb:>9.4f}s  {tn:>9.4f}s  {tn / tb:>7.1f}x")


if __name__ == "__main__":
    main()
