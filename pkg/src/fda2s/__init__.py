"""Quadratic-form two-sample testing for functional data.

Projection-based two-sample statistics with chi-square asymptotics,
permutation-split and spectral Monte Carlo calibration, and the
random-sea-wave pipeline (bimodal spectra, Gaussian synthesis, Parzen
estimation, downcrossing wave extraction and registration).
"""

from .bsplines import BSplineSpec, equidistant_spec, spec_from_interior_nodes, to_bspline
from .errors import FdaError
from .grids import (
    Curve,
    FunctionalSample,
    Grid,
    Interval,
    inner_product,
    make_sample,
    uniform_grid,
)
from .projections import (
    BasisSpec,
    FourierCoefficients,
    GVector,
    PCABasis,
    bspline_basis_g,
    fourier_coefficients,
    indicator_basis,
    pca_basis,
    trig_g_functions,
)
from .qn import (
    PooledCovariance,
    ScoreMatrix,
    TestResult,
    chi_square_isf,
    chi_square_sf,
    eta_vector,
    pooled_covariance,
    qn_statistic,
    score_matrix,
)
from .resampling import (
    NullDistribution,
    QuantileTable,
    ResamplingPlan,
    SimConfig,
    average_spectrum,
    permutation_null,
    permutation_pvalue,
    quantile_table,
    spectral_mc_null,
)
from .rng import fresh_seed, substream
from .runner import (
    concatenate_samples,
    run_test,
    sample_to_spectra,
    spectra_to_sample,
    spectral_mc_test,
)
from .sea import (
    GaussianSynthesizer,
    SpectralDensity,
    TimeSeriesRecord,
    TorsethaugenParams,
    default_frequency_grid,
    estimate_spectrum,
    estimator_grid,
    parzen_window,
    significant_wave_height,
    simulate_gaussian,
    torsethaugen_spectrum,
)
from .waves import (
    RegistrationSpec,
    WaveRecord,
    downcrossings,
    normalize_sample,
    register_sample,
    register_wave,
    segment_waves,
)

__version__ = "0.1.0"

__all__ = [
    "BSplineSpec",
    "BasisSpec",
    "Curve",
    "FdaError",
    "FourierCoefficients",
    "FunctionalSample",
    "GVector",
    "GaussianSynthesizer",
    "Grid",
    "Interval",
    "NullDistribution",
    "PCABasis",
    "PooledCovariance",
    "QuantileTable",
    "RegistrationSpec",
    "ResamplingPlan",
    "ScoreMatrix",
    "SimConfig",
    "SpectralDensity",
    "TestResult",
    "TimeSeriesRecord",
    "TorsethaugenParams",
    "WaveRecord",
    "average_spectrum",
    "bspline_basis_g",
    "chi_square_isf",
    "chi_square_sf",
    "concatenate_samples",
    "default_frequency_grid",
    "downcrossings",
    "equidistant_spec",
    "estimate_spectrum",
    "estimator_grid",
    "eta_vector",
    "fourier_coefficients",
    "fresh_seed",
    "indicator_basis",
    "inner_product",
    "make_sample",
    "normalize_sample",
    "parzen_window",
    "pca_basis",
    "permutation_null",
    "permutation_pvalue",
    "pooled_covariance",
    "qn_statistic",
    "quantile_table",
    "register_sample",
    "register_wave",
    "run_test",
    "sample_to_spectra",
    "score_matrix",
    "segment_waves",
    "significant_wave_height",
    "simulate_gaussian",
    "spec_from_interior_nodes",
    "spectra_to_sample",
    "spectral_mc_null",
    "spectral_mc_test",
    "substream",
    "to_bspline",
    "torsethaugen_spectrum",
    "trig_g_functions",
    "uniform_grid",
]
