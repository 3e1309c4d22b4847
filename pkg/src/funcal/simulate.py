"""Reference dataset generator: two known component curves, random weights,
additive Gaussian noise.

All randomness comes from ``numpy.random.default_rng(seed)`` (the PCG64
generator), drawing the weight matrix first and the noise matrix second,
so a fixed seed replays the dataset bit for bit on any platform.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import AggregatedSamples, ComponentCurves, SampleGrid, WeightMatrix
from .errors import ValidationError

__all__ = ["SimulatedDataset", "alpha1", "alpha2", "simulate_dataset"]


@dataclass(frozen=True, eq=False)
class SimulatedDataset:
    """Aggregated samples plus the ground truth that generated them."""

    data: AggregatedSamples
    weights: WeightMatrix
    x: SampleGrid
    alphas: ComponentCurves


def alpha1(x):
    """First component: sin(5x) * exp(-x^2), smooth and oscillating."""
    x = np.asarray(x, dtype=np.float64)
    out = np.sin(5.0 * x) * np.exp(-(x**2))
    return out if out.ndim else float(out)


def alpha2(x):
    """Second component: step function -2 on x < 0, 0 on [0, 1.5), 3 on x >= 1.5."""
    x = np.asarray(x, dtype=np.float64)
    out = np.where(x < 0.0, -2.0, np.where(x < 1.5, 0.0, 3.0))
    return out if out.ndim else float(out)


def simulate_dataset(
    n: int = 100,
    m: int = 1024,
    a: float = -1.0,
    b: float = 2.0,
    noise_sd: float = 0.1,
    *,
    seed: int,
) -> SimulatedDataset:
    """Generate ``n`` aggregated samples on an ``m``-point grid over [a, b].

    Weight columns are drawn i.i.d. uniform(0, 1) entry-wise and normalized
    to sum to 1; each data column is the weighted curve combination plus
    i.i.d. N(0, noise_sd^2) noise.
    """
    if n < 1:
        raise ValidationError("need at least one sample")
    if m < 2:
        raise ValidationError("need at least two grid points")
    if not a < b:
        raise ValidationError(f"empty domain: a={a} must be < b={b}")
    if noise_sd < 0:
        raise ValidationError("noise_sd must be nonnegative")

    grid = np.linspace(a, b, m)
    alphas = np.column_stack((alpha1(grid), alpha2(grid)))

    rng = np.random.default_rng(seed)
    weights = rng.uniform(size=(2, n))
    weights /= weights.sum(axis=0)
    data = alphas @ weights + noise_sd * rng.standard_normal((m, n))

    return SimulatedDataset(
        data=AggregatedSamples(data),
        weights=WeightMatrix(weights),
        x=SampleGrid(grid),
        alphas=ComponentCurves(alphas),
    )
