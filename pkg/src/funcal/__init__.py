"""funcal: estimate component curves from aggregated functional data.

Observed curves are modeled as weighted sums of unknown component curves
plus Gaussian noise.  Two interchangeable pipelines recover the components
from samples with known weights: an orthogonal wavelet transform with
coefficient shrinkage, and a B-spline least-squares fit.  The inverse
problem (estimating weights from known curves) and a reference data
simulator round out the toolkit.
"""

from .calibration import (
    DEFAULT_WAVELET,
    calibrate_splines,
    calibrate_wavelets,
    estimate_weights,
)
from .core import (
    AggregatedSamples,
    CalibrationResult,
    ComponentCurves,
    SampleGrid,
    WeightMatrix,
    aggregate_curve,
    validate_problem,
)
from .shrinkage import (
    NoiseScale,
    ShrinkageSpec,
    apply_shrinkage,
    bayes_shrink,
    cv_threshold,
    estimate_sigma,
    hard_threshold,
    level_mass,
    logistic_prior_density,
    probability_threshold,
    soft_threshold,
    sure_threshold,
    universal_threshold,
)
from .simulate import SimulatedDataset, alpha1, alpha2, simulate_dataset
from .splines import (
    BasisMatrix,
    DesignMatrix,
    KnotVector,
    basis_matrix,
    build_design,
    make_knots,
    solve_least_squares,
)
from .wavelet import (
    SUPPORTED_FAMILIES,
    WaveletDecomposition,
    WaveletFilter,
    dwt,
    dwt_matrix,
    idwt,
    make_filter,
)

__version__ = "0.1.0"

__all__ = [
    "AggregatedSamples",
    "BasisMatrix",
    "CalibrationResult",
    "ComponentCurves",
    "DEFAULT_WAVELET",
    "DesignMatrix",
    "KnotVector",
    "NoiseScale",
    "SUPPORTED_FAMILIES",
    "SampleGrid",
    "ShrinkageSpec",
    "SimulatedDataset",
    "WaveletDecomposition",
    "WaveletFilter",
    "WeightMatrix",
    "aggregate_curve",
    "alpha1",
    "alpha2",
    "apply_shrinkage",
    "basis_matrix",
    "bayes_shrink",
    "build_design",
    "calibrate_splines",
    "calibrate_wavelets",
    "cv_threshold",
    "dwt",
    "dwt_matrix",
    "estimate_sigma",
    "estimate_weights",
    "hard_threshold",
    "idwt",
    "level_mass",
    "logistic_prior_density",
    "make_filter",
    "make_knots",
    "probability_threshold",
    "simulate_dataset",
    "soft_threshold",
    "solve_least_squares",
    "sure_threshold",
    "universal_threshold",
    "validate_problem",
]
