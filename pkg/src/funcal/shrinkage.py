"""Wavelet coefficient shrinkage: the Bayesian posterior-mean rule and the
threshold-based alternatives (universal, SURE, probability, two-fold CV).

The Bayesian rule places a mixture prior on each detail coefficient: a
point mass at zero with probability ``p`` plus a zero-centered logistic
density with scale ``tau``.  Its posterior mean is evaluated either by
Gauss-Hermite quadrature (default) or by seeded Monte Carlo averaging.
Scaling coefficients are never shrunk; zeroing the coarse block would
destroy the signal mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.stats import norm

from ._kernels import posterior_mean
from .errors import ValidationError
from .wavelet import WaveletDecomposition, WaveletFilter, dwt, idwt

__all__ = [
    "METHODS",
    "RULE_TYPES",
    "ShrinkageSpec",
    "NoiseScale",
    "estimate_sigma",
    "level_mass",
    "logistic_prior_density",
    "bayes_shrink",
    "soft_threshold",
    "hard_threshold",
    "universal_threshold",
    "sure_threshold",
    "cv_threshold",
    "probability_threshold",
    "apply_shrinkage",
    "shrink_with_diagnostics",
]

METHODS = ("bayesian", "universal", "sure", "probability", "cv")
RULE_TYPES = ("soft", "hard")

_MAD_CONSTANT = 0.6745
_GOLDEN_ITERS = 60


@dataclass(frozen=True)
class ShrinkageSpec:
    """Configuration of the shrinkage step.

    ``p`` and ``sigma`` are optional: a missing ``p`` falls back to the
    level-dependent mass ``level_mass(j, j0)`` and a missing ``sigma`` is
    estimated from the finest detail level.  ``mc=True`` switches the
    Bayesian integrals from ``quad_nodes``-point Gauss-Hermite quadrature
    to ``mc_samples`` Monte Carlo draws and then requires ``seed``.
    """

    method: str = "bayesian"
    rule_type: str = "soft"
    tau: float = 5.0
    p: float | None = None
    sigma: float | None = None
    mc: bool = False
    mc_samples: int = 10_000
    quad_nodes: int = 64
    alpha_prob: float = 0.05
    seed: int | None = None

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValidationError(
                f"unknown shrinkage method {self.method!r}; choose from {METHODS}"
            )
        if self.rule_type not in RULE_TYPES:
            raise ValidationError(
                f"unknown rule type {self.rule_type!r}; choose from {RULE_TYPES}"
            )
        if not self.tau > 0:
            raise ValidationError("tau must be positive")
        if self.p is not None and not 0 < self.p < 1:
            raise ValidationError("p must lie in (0, 1)")
        if self.sigma is not None and not self.sigma > 0:
            raise ValidationError("sigma must be positive when supplied")
        if self.mc_samples < 1 or self.quad_nodes < 1:
            raise ValidationError("mc_samples and quad_nodes must be positive")
        if not 0 < self.alpha_prob < 1:
            raise ValidationError("alpha_prob must lie in (0, 1)")


@dataclass(frozen=True)
class NoiseScale:
    """Noise standard deviation plus where it came from."""

    sigma_hat: float
    provenance: str  # "user_supplied" | "mad_estimated"

    def __post_init__(self):
        if not self.sigma_hat >= 0:
            raise ValidationError("sigma_hat must be nonnegative")


def estimate_sigma(finest_details) -> NoiseScale:
    """MAD noise estimate: median absolute finest-level coefficient / 0.6745."""
    d = np.asarray(finest_details, dtype=np.float64).reshape(-1)
    if d.shape[0] == 0:
        raise ValidationError("cannot estimate sigma from an empty coefficient vector")
    return NoiseScale(
        sigma_hat=float(np.median(np.abs(d)) / _MAD_CONSTANT),
        provenance="mad_estimated",
    )


def level_mass(j: int, j0: int) -> float:
    """Level-dependent point-mass probability p(j) = 1 - 1/(j - j0 + 1)^2."""
    if j < j0:
        raise ValidationError(f"level j={j} below the coarsest level j0={j0}")
    return 1.0 - 1.0 / (j - j0 + 1) ** 2


def logistic_prior_density(theta, tau: float):
    """Zero-centered logistic density with scale tau.

    Evaluated through exp(-|theta|/tau), which is algebraically identical
    to the textbook form but cannot overflow for large |theta|/tau.
    """
    if not tau > 0:
        raise ValidationError("tau must be positive")
    theta = np.asarray(theta, dtype=np.float64)
    z = np.exp(-np.abs(theta) / tau)
    out = z / (tau * (1.0 + z) ** 2)
    return out if out.ndim else float(out)


@lru_cache(maxsize=8)
def _hermite_rule(n_nodes: int) -> tuple[np.ndarray, np.ndarray]:
    # change of variables mapping int f(u) phi(u) du onto the Hermite weight
    x, w = np.polynomial.hermite.hermgauss(n_nodes)
    u = np.sqrt(2.0) * x
    u.setflags(write=False)
    wn = w / np.sqrt(np.pi)
    wn.setflags(write=False)
    return u, wn


def _integration_rule(spec: ShrinkageSpec) -> tuple[np.ndarray, np.ndarray]:
    if spec.mc:
        if spec.seed is None:
            raise ValidationError(
                "Monte Carlo integration (mc=True) requires a seed for "
                "reproducible results"
            )
        rng = np.random.default_rng(spec.seed)
        u = rng.standard_normal(spec.mc_samples)
        w = np.full(spec.mc_samples, 1.0 / spec.mc_samples)
        return u, w
    return _hermite_rule(spec.quad_nodes)


def bayes_shrink(d, sigma: float, tau: float, p: float, spec: ShrinkageSpec):
    """Posterior mean of a coefficient under the point-mass + logistic prior.

    Parameters
    ----------
    d : float or array_like
        Empirical detail coefficient(s).
    sigma : float
        Noise standard deviation, > 0.
    tau : float
        Logistic prior scale, > 0.
    p : float
        Point-mass probability in [0, 1); p = 0 means a pure logistic prior.
    spec : ShrinkageSpec
        Supplies the integration settings (quadrature vs Monte Carlo).

    Returns
    -------
    float or ndarray
        Shrunk coefficient(s), same shape as ``d``.
    """
    if not sigma > 0:
        raise ValidationError("sigma must be positive")
    if not tau > 0:
        raise ValidationError("tau must be positive")
    if not 0 <= p < 1:
        raise ValidationError("p must lie in [0, 1)")
    u, w = _integration_rule(spec)
    arr = np.atleast_1d(np.asarray(d, dtype=np.float64))
    out = posterior_mean(arr, float(sigma), float(tau), float(p), u, w)
    if not np.all(np.isfinite(out)):
        i = int(np.argwhere(~np.isfinite(out))[0][0])
        raise ValidationError(
            f"posterior mean overflowed at d={arr[i]!r} "
            f"(sigma={sigma}, tau={tau}, p={p})"
        )
    return out if np.ndim(d) else float(out[0])


def soft_threshold(d, lam: float):
    """sign(d) * max(|d| - lam, 0)."""
    if lam < 0:
        raise ValidationError("threshold must be nonnegative")
    d = np.asarray(d, dtype=np.float64)
    out = np.sign(d) * np.maximum(np.abs(d) - lam, 0.0)
    return out if out.ndim else float(out)


def hard_threshold(d, lam: float):
    """d where |d| > lam, else 0."""
    if lam < 0:
        raise ValidationError("threshold must be nonnegative")
    d = np.asarray(d, dtype=np.float64)
    out = np.where(np.abs(d) > lam, d, 0.0)
    return out if out.ndim else float(out)


def _threshold_rule(rule_type: str):
    return soft_threshold if rule_type == "soft" else hard_threshold


def universal_threshold(sigma: float, m: int) -> float:
    """Donoho-Johnstone universal threshold sigma * sqrt(2 ln M)."""
    if sigma < 0:
        raise ValidationError("sigma must be nonnegative")
    if m < 1:
        raise ValidationError("M must be positive")
    return float(sigma * math.sqrt(2.0 * math.log(m)))


def sure_threshold(standardized) -> float:
    """Threshold minimizing Stein's unbiased risk estimate.

    Input coefficients must already be divided by the noise scale.  The
    risk SURE(lam) = M - 2 * #{|d_i| <= lam} + sum_i min(d_i^2, lam^2) is
    scanned over the candidates {0} U {|d_i|}; ties break toward the
    smallest threshold.
    """
    d = np.asarray(standardized, dtype=np.float64).reshape(-1)
    m = d.shape[0]
    if m == 0:
        raise ValidationError("sure_threshold needs a non-empty input")
    mags = np.sort(np.abs(d))
    cands = np.concatenate(([0.0], mags))
    # count of |d_i| <= candidate, plus prefix sums for sum(min(d_i^2, lam^2))
    counts = np.searchsorted(mags, cands, side="right")
    csum = np.concatenate(([0.0], np.cumsum(mags**2)))
    risks = m - 2.0 * counts + csum[counts] + (m - counts) * cands**2
    return float(cands[int(np.argmin(risks))])


def probability_threshold(sigma: float, alpha_prob: float) -> float:
    """Two-sided Gaussian test threshold sigma * PhiInv(1 - alpha/2)."""
    if sigma < 0:
        raise ValidationError("sigma must be nonnegative")
    if not 0 < alpha_prob < 1:
        raise ValidationError("alpha_prob must lie in (0, 1)")
    return float(sigma * norm.ppf(1.0 - alpha_prob / 2.0))


def _denoise_signal(x, filt: WaveletFilter, lam: float, rule_type: str) -> np.ndarray:
    rule = _threshold_rule(rule_type)
    decomp = dwt(x, filt, j0=0)
    shrunk = WaveletDecomposition(
        scaling=decomp.scaling.copy(),
        details=tuple(rule(det, lam) for det in decomp.details),
        j0=0,
    )
    return idwt(shrunk, filt)


def cv_threshold(signal, filt: WaveletFilter, rule_type: str = "soft") -> float:
    """Two-fold even/odd cross-validated global threshold.

    The signal is split into its even- and odd-indexed halves; each half is
    denoised and used to predict the other by neighbor averaging (periodic
    at the ends).  Candidate thresholds live on the full-length scale and
    are mapped to the half-length scale by (1 - ln 2 / ln M)^(1/2), the
    inverse of the usual half-to-full correction.  The prediction error is
    minimized by golden-section search over [0, universal threshold].
    """
    if rule_type not in RULE_TYPES:
        raise ValidationError(
            f"unknown rule type {rule_type!r}; choose from {RULE_TYPES}"
        )
    x = np.ascontiguousarray(signal, dtype=np.float64)
    m = x.shape[0]
    if m < 8:
        raise ValidationError("cross-validation needs a signal of length >= 8")
    decomp = dwt(x, filt, j0=0)
    sigma = estimate_sigma(decomp.details[-1]).sigma_hat
    cap = universal_threshold(sigma, m)
    if cap == 0.0:
        return 0.0
    half_scale = math.sqrt(1.0 - math.log(2.0) / math.log(m))
    even, odd = x[0::2], x[1::2]

    def score(lam: float) -> float:
        lam_half = lam * half_scale
        de = _denoise_signal(even, filt, lam_half, rule_type)
        do = _denoise_signal(odd, filt, lam_half, rule_type)
        pred_odd = 0.5 * (de + np.roll(de, -1))
        pred_even = 0.5 * (do + np.roll(do, 1))
        return float(np.sum((pred_odd - odd) ** 2) + np.sum((pred_even - even) ** 2))

    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = 0.0, cap
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = score(c), score(d)
    for _ in range(_GOLDEN_ITERS):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = score(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = score(d)
    return 0.5 * (a + b)


def shrink_with_diagnostics(
    decomp: WaveletDecomposition,
    spec: ShrinkageSpec,
    noise: NoiseScale,
    filt: WaveletFilter | None = None,
) -> tuple[WaveletDecomposition, dict]:
    """Apply the selected shrinkage method to the detail coefficients.

    Returns the shrunk decomposition together with a flat record of the
    thresholds / hyperparameters that were actually used.  The scaling
    block is passed through untouched.  ``filt`` is only needed for the
    ``cv`` method, which rebuilds the signal to split it.
    """
    sigma = noise.sigma_hat
    m = decomp.size
    info: dict = {"method": spec.method, "sigma_hat": sigma}
    rule = _threshold_rule(spec.rule_type)

    if spec.method == "bayesian":
        info["tau"] = spec.tau
        info["integration"] = (
            f"monte_carlo[{spec.mc_samples}]" if spec.mc
            else f"gauss_hermite[{spec.quad_nodes}]"
        )
        if sigma == 0.0:
            # limit of the rule as sigma -> 0 is the identity
            new_details = tuple(det.copy() for det in decomp.details)
            for i in range(len(decomp.details)):
                info[f"p_level{decomp.j0 + i}"] = (
                    spec.p if spec.p is not None else level_mass(decomp.j0 + i, decomp.j0)
                )
        else:
            new_details = []
            for i, det in enumerate(decomp.details):
                j = decomp.j0 + i
                p_j = spec.p if spec.p is not None else level_mass(j, decomp.j0)
                info[f"p_level{j}"] = p_j
                new_details.append(bayes_shrink(det, sigma, spec.tau, p_j, spec))
            new_details = tuple(new_details)
    elif spec.method in ("universal", "probability"):
        if spec.method == "universal":
            lam = universal_threshold(sigma, m)
        else:
            lam = probability_threshold(sigma, spec.alpha_prob)
            info["alpha_prob"] = spec.alpha_prob
        info["rule_type"] = spec.rule_type
        info["threshold"] = lam
        new_details = tuple(rule(det, lam) for det in decomp.details)
    elif spec.method == "sure":
        info["rule_type"] = spec.rule_type
        new_details = []
        for i, det in enumerate(decomp.details):
            j = decomp.j0 + i
            lam = sigma * sure_threshold(det / sigma) if sigma > 0 else 0.0
            info[f"threshold_level{j}"] = lam
            new_details.append(rule(det, lam))
        new_details = tuple(new_details)
    else:  # cv
        if filt is None:
            raise ValidationError(
                "the cv method needs the wavelet filter to rebuild the signal"
            )
        lam = cv_threshold(idwt(decomp, filt), filt, spec.rule_type)
        info["rule_type"] = spec.rule_type
        info["threshold"] = lam
        new_details = tuple(rule(det, lam) for det in decomp.details)

    shrunk = WaveletDecomposition(
        scaling=decomp.scaling, details=new_details, j0=decomp.j0
    )
    return shrunk, info


def apply_shrinkage(
    decomp: WaveletDecomposition,
    spec: ShrinkageSpec,
    noise: NoiseScale,
    filt: WaveletFilter | None = None,
) -> WaveletDecomposition:
    """Like :func:`shrink_with_diagnostics` but returning only the decomposition."""
    return shrink_with_diagnostics(decomp, spec, noise, filt)[0]
