#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallback.

Times the three hot paths on production-sized inputs: the forward/inverse
transform pyramid over a full sample matrix, and the posterior-mean
shrinkage rule over one coefficient matrix.

Run as ``python benchmarks/bench_kernels.py``.  The active backend chosen
at import time is reported too (set FUNCAL_NUMBA=0 to force numpy).
"""

import time

import numpy as np

from funcal import make_filter
from funcal._kernels import (
    BACKEND,
    build_numba_kernels,
    np_analysis_step,
    np_posterior_mean,
    np_synthesis_step,
)

M, N = 1024, 100
REPEATS = 5
GH_NODES = 64


def full_pyramid(analysis, synthesis, data, lo, hi):
    for col in range(data.shape[1]):
        x = data[:, col]
        details = []
        while x.shape[0] > 1:
            x, det = analysis(x, lo, hi)
            details.append(det)
        for det in reversed(details):
            x = synthesis(x, det, lo, hi)


def bench(label, fn):
    fn()  # warm-up (JIT compile / cache touch)
    best = min(
        (lambda t0: (fn(), time.perf_counter() - t0)[1])(time.perf_counter())
        for _ in range(REPEATS)
    )
    print(f"  {label:<10s} {best * 1e3:9.2f} ms")
    return best


def main():
    print(f"active backend: {BACKEND}")
    rng = np.random.default_rng(0)
    filt = make_filter("daub10")
    lo, hi = filt.lowpass, filt.highpass
    data = rng.standard_normal((M, N))
    nb_analysis, nb_synthesis, nb_posterior = build_numba_kernels()

    print(f"\ndwt+idwt pyramid, {M} x {N} sample matrix:")
    t_np = bench("numpy", lambda: full_pyramid(np_analysis_step, np_synthesis_step, data, lo, hi))
    t_nb = bench("numba", lambda: full_pyramid(nb_analysis, nb_synthesis, data, lo, hi))
    print(f"  speedup    {t_np / t_nb:9.1f}x")

    coeffs = rng.standard_normal(M * N)
    x, w = np.polynomial.hermite.hermgauss(GH_NODES)
    u = np.sqrt(2.0) * x
    wn = w / np.sqrt(np.pi)

    print(f"\nposterior-mean shrinkage, {M * N} coefficients x {GH_NODES} nodes:")
    t_np = bench("numpy", lambda: np_posterior_mean(coeffs, 0.1, 5.0, 0.9, u, wn))
    t_nb = bench("numba", lambda: nb_posterior(coeffs, 0.1, 5.0, 0.9, u, wn))
    print(f"  speedup    {t_np / t_nb:9.1f}x")


if __name__ == "__main__":
    main()
