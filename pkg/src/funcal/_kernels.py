"""Hot numerical kernels with a numba backend and a pure-numpy fallback.

The backend is chosen once at import time:

* ``FUNCAL_NUMBA=0`` (or ``false``/``no``/``off``) forces the numpy path;
* ``FUNCAL_NUMBA=1`` requires numba and raises if it cannot be imported;
* unset or ``auto``: numba is used when importable, numpy otherwise.

Both implementations of every kernel stay importable (``np_*`` and the
tuple returned by :func:`build_numba_kernels`) so tests can assert they
agree and ``benchmarks/bench_kernels.py`` can time them side by side.
"""

from __future__ import annotations

import math
import os

import numpy as np

__all__ = [
    "BACKEND",
    "analysis_step",
    "synthesis_step",
    "posterior_mean",
    "np_analysis_step",
    "np_synthesis_step",
    "np_posterior_mean",
    "build_numba_kernels",
]

_SQRT_2PI = math.sqrt(2.0 * math.pi)


# ---------------------------------------------------------------------------
# pure-numpy implementations
# ---------------------------------------------------------------------------

def np_analysis_step(x, lo, hi):
    """One periodized filter-and-decimate step: x (n,) -> (approx, detail) (n/2,)."""
    n = x.shape[0]
    half = n // 2
    approx = np.zeros(half)
    detail = np.zeros(half)
    base = 2 * np.arange(half)
    for m in range(lo.shape[0]):
        xv = x[(base + m) % n]
        approx += lo[m] * xv
        detail += hi[m] * xv
    return approx, detail


def np_synthesis_step(approx, detail, lo, hi):
    """Adjoint of :func:`np_analysis_step`: (approx, detail) (n/2,) -> x (n,)."""
    half = approx.shape[0]
    n = 2 * half
    out = np.zeros(n)
    base = 2 * np.arange(half)
    # for fixed m the scatter targets are distinct, so += is collision-free
    for m in range(lo.shape[0]):
        out[(base + m) % n] += lo[m] * approx + hi[m] * detail
    return out


def np_posterior_mean(d, sigma, tau, p, u, w):
    """Posterior-mean shrinkage of coefficients ``d`` under the
    point-mass + logistic mixture prior.

    ``u`` and ``w`` discretize the standard-normal expectation:
    sum(w_q * f(u_q)) ~ E[f(U)], U ~ N(0,1).  They come either from
    Gauss-Hermite nodes or from Monte Carlo draws with uniform weights.
    """
    d = np.asarray(d, dtype=np.float64)
    out = np.empty_like(d)
    # chunk so the (block, nodes) temporary stays bounded for large MC draws
    block = max(1, 4_000_000 // max(u.shape[0], 1))
    for start in range(0, d.shape[0], block):
        di = d[start:start + block, None]
        theta = sigma * u[None, :] + di
        z = np.exp(-np.abs(theta) / tau)
        g = z / (tau * (1.0 + z) ** 2)
        num = (theta * g) @ w
        den = g @ w
        gauss = np.exp(-0.5 * (di[:, 0] / sigma) ** 2) / (sigma * _SQRT_2PI)
        out[start:start + block] = (1.0 - p) * num / (p * gauss + (1.0 - p) * den)
    return out


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

def build_numba_kernels():
    """Compile and return (analysis_step, synthesis_step, posterior_mean)."""
    from numba import njit

    @njit(cache=True)
    def nb_analysis_step(x, lo, hi):
        n = x.shape[0]
        half = n // 2
        taps = lo.shape[0]
        approx = np.zeros(half)
        detail = np.zeros(half)
        for k in range(half):
            sa = 0.0
            sd = 0.0
            for m in range(taps):
                xv = x[(2 * k + m) % n]
                sa += lo[m] * xv
                sd += hi[m] * xv
            approx[k] = sa
            detail[k] = sd
        return approx, detail

    @njit(cache=True)
    def nb_synthesis_step(approx, detail, lo, hi):
        half = approx.shape[0]
        n = 2 * half
        taps = lo.shape[0]
        out = np.zeros(n)
        for k in range(half):
            ak = approx[k]
            dk = detail[k]
            for m in range(taps):
                out[(2 * k + m) % n] += lo[m] * ak + hi[m] * dk
        return out

    @njit(cache=True)
    def nb_posterior_mean(d, sigma, tau, p, u, w):
        nq = u.shape[0]
        out = np.empty_like(d)
        for i in range(d.shape[0]):
            di = d[i]
            num = 0.0
            den = 0.0
            for q in range(nq):
                theta = sigma * u[q] + di
                z = math.exp(-abs(theta) / tau)
                g = z / (tau * (1.0 + z) ** 2)
                num += w[q] * theta * g
                den += w[q] * g
            gauss = math.exp(-0.5 * (di / sigma) ** 2) / (sigma * _SQRT_2PI)
            out[i] = (1.0 - p) * num / (p * gauss + (1.0 - p) * den)
        return out

    return nb_analysis_step, nb_synthesis_step, nb_posterior_mean


# ---------------------------------------------------------------------------
# backend selection
# ---------------------------------------------------------------------------

def _pick_backend() -> str:
    flag = os.environ.get("FUNCAL_NUMBA", "auto").strip().lower()
    if flag in ("0", "false", "no", "off"):
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if flag in ("1", "true", "yes", "on"):
            raise ImportError(
                "FUNCAL_NUMBA=1 requires numba, which is not installed"
            ) from None
        return "numpy"
    return "numba"


BACKEND = _pick_backend()

if BACKEND == "numba":
    analysis_step, synthesis_step, posterior_mean = build_numba_kernels()
else:
    analysis_step = np_analysis_step
    synthesis_step = np_synthesis_step
    posterior_mean = np_posterior_mean
