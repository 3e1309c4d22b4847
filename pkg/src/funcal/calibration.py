"""End-to-end calibration pipelines and the inverse weight estimation.

Both pipelines estimate the component curves alpha (M x L) from aggregated
samples A (M x N) and known weights y (L x N):

* wavelets: transform each sample column, shrink the detail coefficients,
  solve coefficient-wise least squares against the weights, transform back;
* splines: expand every component in a common B-spline basis and solve one
  stacked least-squares problem.
"""

from __future__ import annotations

import numpy as np

from .core import (
    AggregatedSamples,
    CalibrationResult,
    ComponentCurves,
    SampleGrid,
    WeightMatrix,
    validate_problem,
)
from .errors import SingularSystemError, ValidationError
from .shrinkage import NoiseScale, ShrinkageSpec, estimate_sigma, shrink_with_diagnostics
from .splines import basis_matrix, build_design, make_knots, solve_least_squares
from .wavelet import WaveletDecomposition, dwt, idwt, make_filter

__all__ = [
    "DEFAULT_WAVELET",
    "SINGULAR_RIDGE",
    "calibrate_wavelets",
    "calibrate_splines",
    "estimate_weights",
]

# smoothest supported family: with 10 vanishing moments a noiseless smooth
# signal leaves no energy at the finest level, so the MAD noise estimate
# vanishes and shrinkage reduces to the identity
DEFAULT_WAVELET = "daub10"

SINGULAR_RIDGE = 1e-10


def calibrate_wavelets(
    data: AggregatedSamples,
    weights: WeightMatrix,
    grid: SampleGrid,
    filter_name: str = DEFAULT_WAVELET,
    spec: ShrinkageSpec | None = None,
    singular: bool = False,
    j0: int = 0,
    pool_sigma: bool = False,
) -> CalibrationResult:
    """Wavelet-domain calibration of the component curves.

    Each sample column is transformed, its detail coefficients are shrunk
    according to ``spec``, and the coefficient matrix is regressed on the
    weights: Gamma = delta(D) y^T (y y^T + s I)^{-1} with s = 1e-10 when
    ``singular`` is set and 0 otherwise.  The estimated curves are the
    inverse transforms of Gamma's columns.

    ``spec.sigma`` overrides the noise scale; otherwise it is MAD-estimated
    from the finest detail level of the first sample (or of all samples
    pooled when ``pool_sigma`` is set).
    """
    if spec is None:
        spec = ShrinkageSpec()
    validate_problem(data, weights, grid)
    n = data.n_samples
    n_comp = weights.n_components
    if n < n_comp:
        raise ValidationError(
            f"need at least as many samples as components (N={n} < L={n_comp})"
        )
    filt = make_filter(filter_name)

    decomps = [dwt(data.values[:, i], filt, j0) for i in range(n)]

    if spec.sigma is not None:
        noise = NoiseScale(sigma_hat=spec.sigma, provenance="user_supplied")
    elif pool_sigma:
        pooled = np.concatenate([d.details[-1] for d in decomps])
        noise = estimate_sigma(pooled)
    else:
        noise = estimate_sigma(decomps[0].details[-1])

    shrunk_cols = []
    shrink_info: dict = {}
    for i, decomp in enumerate(decomps):
        shrunk, info = shrink_with_diagnostics(decomp, spec, noise, filt)
        if i == 0:
            shrink_info = info
        shrunk_cols.append(shrunk.flatten())
    delta = np.column_stack(shrunk_cols)

    y = weights.values
    gram = y @ y.T
    cond = float(np.linalg.cond(gram))
    ridge = SINGULAR_RIDGE if singular else 0.0
    if not singular and np.linalg.matrix_rank(gram) < n_comp:
        raise SingularSystemError(
            "y y^T is singular; pass singular=True to add 1e-10 to its diagonal",
            condition=cond,
        )
    gamma = np.linalg.solve(gram + ridge * np.eye(n_comp), (delta @ y.T).T).T

    curves = np.empty((data.n_points, n_comp))
    for l in range(n_comp):
        col = WaveletDecomposition.unflatten(gamma[:, l], j0)
        curves[:, l] = idwt(col, filt)

    diagnostics = {
        "basis": f"wavelet:{filt.family}",
        "j0": j0,
        "sigma_provenance": noise.provenance,
        "condition_yyT": cond,
        "ridge": ridge,
        **shrink_info,
    }
    return CalibrationResult(curves=ComponentCurves(curves), diagnostics=diagnostics)


def calibrate_splines(
    data: AggregatedSamples,
    weights: WeightMatrix,
    grid: SampleGrid,
    n_functions: int,
    order: int = 4,
    ridge: float = 0.0,
) -> CalibrationResult:
    """B-spline calibration: one stacked ordinary-least-squares solve.

    The curves are expanded in ``n_functions`` basis functions over the grid
    span; the fitted curves are the basis-weighted coefficient estimates.
    """
    validate_problem(data, weights, grid)
    a, b = grid.span
    knots = make_knots(a, b, n_functions, order)
    basis = basis_matrix(grid, knots)
    design = build_design(basis, weights)
    # stack sample-major: rows of sample n are (n*M)..(n*M + M - 1)
    response = data.values.T.reshape(-1)
    coeffs, cond = solve_least_squares(design, response, ridge)
    theta = coeffs.reshape(n_functions, weights.n_components)
    curves = basis.values @ theta
    diagnostics = {
        "basis": f"bspline:order{order}",
        "n_functions": n_functions,
        "condition_design": cond,
        "ridge": ridge,
    }
    return CalibrationResult(curves=ComponentCurves(curves), diagnostics=diagnostics)


def estimate_weights(sample, curves: ComponentCurves) -> np.ndarray:
    """Least-squares weights of one aggregated sample given known curves."""
    a = np.asarray(sample, dtype=np.float64).reshape(-1)
    alpha = curves.values
    if a.shape[0] != alpha.shape[0]:
        raise ValidationError(
            f"sample has {a.shape[0]} points but the curves have {alpha.shape[0]} rows"
        )
    w, _, rank, svals = np.linalg.lstsq(alpha, a, rcond=None)
    if rank < alpha.shape[1]:
        cond = float(svals[0] / svals[-1]) if svals[-1] > 0 else float("inf")
        raise SingularSystemError(
            "component curves are rank deficient; weights are not identifiable",
            condition=cond,
        )
    return w
