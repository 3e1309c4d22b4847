"""Shared data model: grids, sample matrices, weights, and aggregation.

All containers are immutable after construction (arrays are marked
read-only), so every operation in the package is a pure function that is
safe to call concurrently.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Any

import numpy as np

from .errors import ValidationError

__all__ = [
    "SampleGrid",
    "AggregatedSamples",
    "WeightMatrix",
    "ComponentCurves",
    "CalibrationResult",
    "validate_problem",
    "aggregate_curve",
]

_SPACING_RTOL = 1e-9


def _as_readonly(values, *, order="C") -> np.ndarray:
    arr = np.array(values, dtype=np.float64, order=order)
    arr.setflags(write=False)
    return arr


def _check_finite(arr: np.ndarray, what: str) -> None:
    if not np.all(np.isfinite(arr)):
        bad = np.argwhere(~np.isfinite(arr))[0]
        coords = ", ".join(str(int(i)) for i in bad)
        raise ValidationError(f"{what} contains a non-finite value at ({coords})")


@dataclass(frozen=True, eq=False)
class SampleGrid:
    """The M domain points t_1..t_M at which every curve is observed.

    Points must be strictly increasing and equally spaced within a relative
    tolerance of 1e-9 (so decimal-parsed grids are accepted).
    """

    points: np.ndarray

    def __init__(self, points):
        object.__setattr__(self, "points", _as_readonly(points).reshape(-1))
        pts = self.points
        if pts.shape[0] < 2:
            raise ValidationError("grid needs at least 2 points")
        _check_finite(pts, "grid")
        diffs = np.diff(pts)
        if np.any(diffs <= 0):
            raise ValidationError("grid points must be strictly increasing")
        h = (pts[-1] - pts[0]) / (pts.shape[0] - 1)
        if np.max(np.abs(diffs - h)) > _SPACING_RTOL * abs(h):
            raise ValidationError(
                "grid points must be equally spaced (relative tolerance 1e-9)"
            )

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def span(self) -> tuple[float, float]:
        return float(self.points[0]), float(self.points[-1])


@dataclass(frozen=True, eq=False)
class AggregatedSamples:
    """M x N matrix of observed aggregated curves, one sample per column.

    Stored column-major so each sample is contiguous for the per-column
    wavelet transforms.
    """

    values: np.ndarray

    def __init__(self, values):
        arr = _as_readonly(values, order="F")
        if arr.ndim != 2:
            raise ValidationError("aggregated samples must be a 2-D matrix")
        object.__setattr__(self, "values", arr)
        _check_finite(arr, "aggregated samples")

    @property
    def n_points(self) -> int:
        return self.values.shape[0]

    @property
    def n_samples(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True, eq=False)
class WeightMatrix:
    """L x N matrix of known aggregation weights y_ln."""

    values: np.ndarray

    def __init__(self, values):
        arr = _as_readonly(values)
        if arr.ndim != 2:
            raise ValidationError("weights must be a 2-D matrix")
        if arr.shape[0] < 1:
            raise ValidationError("weights need at least one row")
        object.__setattr__(self, "values", arr)
        _check_finite(arr, "weights")
        if np.any(arr <= 0):
            # least squares is sign-agnostic; non-positive weights are legal
            # but unusual for concentration-style designs, so flag them
            warnings.warn(
                "weight matrix contains non-positive entries",
                stacklevel=2,
            )

    @property
    def n_components(self) -> int:
        return self.values.shape[0]

    @property
    def n_samples(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True, eq=False)
class ComponentCurves:
    """M x L matrix of component functions, one curve per column."""

    values: np.ndarray

    def __init__(self, values):
        arr = _as_readonly(values)
        if arr.ndim != 2:
            raise ValidationError("component curves must be a 2-D matrix")
        object.__setattr__(self, "values", arr)
        _check_finite(arr, "component curves")

    @property
    def n_points(self) -> int:
        return self.values.shape[0]

    @property
    def n_components(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True, eq=False)
class CalibrationResult:
    """Estimated curves plus a diagnostics record describing the run."""

    curves: ComponentCurves
    diagnostics: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.diagnostics:
            raise ValidationError("diagnostics must be non-empty for a successful run")


def validate_problem(
    data: AggregatedSamples, weights: WeightMatrix, grid: SampleGrid
) -> tuple[AggregatedSamples, WeightMatrix, SampleGrid]:
    """Check that data, weights and grid dimensions agree; return them unchanged."""
    if data.n_points != len(grid):
        raise ValidationError(
            f"data has {data.n_points} rows but the grid has {len(grid)} points"
        )
    if data.n_samples != weights.n_samples:
        raise ValidationError(
            f"data has {data.n_samples} sample columns but weights has "
            f"{weights.n_samples} columns"
        )
    return data, weights, grid


def aggregate_curve(curves: ComponentCurves, weights) -> np.ndarray:
    """Combine component curves with a weight vector: out_m = sum_l w_l a_l(t_m)."""
    w = np.asarray(weights, dtype=np.float64).reshape(-1)
    if w.shape[0] != curves.n_components:
        raise ValidationError(
            f"got {w.shape[0]} weights for {curves.n_components} component curves"
        )
    return curves.values @ w
