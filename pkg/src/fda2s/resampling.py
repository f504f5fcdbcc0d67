"""Finite-sample calibration: permutation splits and the spectral Monte Carlo null.

Replicate r of a plan draws from a substream keyed by (seed, r), so the
ordered replicate sequence is bit-identical however the replicates are
scheduled (serial, threaded, out of order).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import SingularCovariance, TooFewReplicates
from .grids import FunctionalSample, sample_inner_products
from .projections import BasisSpec, GVector
from .qn import ScoreMatrix, chi_square_isf, qn_statistic
from .rng import substream
from .sea import (
    GaussianSynthesizer,
    SpectralDensity,
    estimate_spectra,
    estimator_grid,
)


@dataclass(frozen=True)
class ResamplingPlan:
    """How many replicates to draw, from which seed, at which split sizes."""

    method: str  # "permutation" or "spectral-mc"
    B: int
    seed: int
    sizes: tuple[int, int]

    def __post_init__(self):
        if self.method not in ("permutation", "spectral-mc"):
            raise ValueError(f"unknown resampling method {self.method!r}")
        if self.B < 1:
            raise ValueError("need at least one replicate")
        m, n = self.sizes
        if m < 2 or n < 2:
            raise ValueError("both split sizes must be >= 2")


@dataclass(frozen=True)
class SimConfig:
    """Settings for simulating and re-estimating records inside the MC null."""

    duration: float = 1800.0
    fs: float = 1.28
    parzen_L: int = 60
    n_freq: int = 481


@dataclass(frozen=True, eq=False)
class NullDistribution:
    """Ordered replicate values of the statistic under the null."""

    values: np.ndarray
    n_failed: int
    plan: ResamplingPlan

    @property
    def n_effective(self) -> int:
        return int(self.values.size)


@dataclass(frozen=True, eq=False)
class QuantileTable:
    """Empirical null quantiles next to their chi-square counterparts."""

    probs: np.ndarray
    empirical: np.ndarray
    asymptotic: np.ndarray
    relative_error: np.ndarray
    k: int


def _qn_from_scores(scores: np.ndarray, m: int) -> float:
    sx = ScoreMatrix(scores[:m])
    sy = ScoreMatrix(scores[m:])
    return qn_statistic(sx, sy).qn


def _run_replicates(task, plan: ResamplingPlan, n_jobs: int) -> NullDistribution:
    """Evaluate `task(r)` for r = 0..B-1, tolerating singular replicates."""

    def safe(r: int) -> float:
        try:
            return task(r)
        except SingularCovariance:
            return np.nan

    indices = range(plan.B)
    if n_jobs > 1:
        with ThreadPoolExecutor(max_workers=n_jobs) as pool:
            raw = np.fromiter(pool.map(safe, indices), dtype=float, count=plan.B)
    else:
        raw = np.fromiter(map(safe, indices), dtype=float, count=plan.B)
    failed = int(np.count_nonzero(np.isnan(raw)))
    if failed > 0.01 * plan.B:
        raise SingularCovariance(
            f"{failed} of {plan.B} replicates failed; "
            "the scheme is too rich for these sample sizes"
        )
    return NullDistribution(raw[~np.isnan(raw)], failed, plan)


def permutation_null(
    joint: FunctionalSample,
    basis: BasisSpec | GVector,
    plan: ResamplingPlan,
    n_jobs: int = 1,
) -> NullDistribution:
    """Null statistic values from random splits of the pooled sample.

    Data-driven schemes are built once from the joint sample: their
    construction depends only on the unlabeled pooled set, so rebuilding
    per replicate would change nothing.  Each replicate relabels the
    pre-computed score rows with a fresh uniformly random split.
    """
    m, n = plan.sizes
    if m + n != joint.n_curves:
        raise ValueError(
            f"split sizes {plan.sizes} do not add up to {joint.n_curves} curves"
        )
    g = basis.build(joint) if isinstance(basis, BasisSpec) else basis
    scores = sample_inner_products(joint, g.functions)

    def task(r: int) -> float:
        perm = substream(plan.seed, r).permutation(scores.shape[0])
        return _qn_from_scores(scores[perm], m)

    return _run_replicates(task, plan, n_jobs)


def permutation_pvalue(observed_qn: float, null_values) -> float:
    """Add-one estimator: (1 + #{replicates >= observed}) / (B + 1)."""
    values = np.asarray(null_values, dtype=float)
    if values.size == 0:
        raise TooFewReplicates("no null replicates")
    exceed = int(np.count_nonzero(values >= observed_qn))
    return (1.0 + exceed) / (values.size + 1.0)


def average_spectrum(spectra: list[SpectralDensity]) -> SpectralDensity:
    """Pointwise mean of spectra sharing one frequency grid.

    Anchored at the first density so that the mean of identical spectra
    reproduces them bit-exactly.
    """
    if not spectra:
        raise ValueError("need at least one spectral density")
    grid = spectra[0].freq
    for s in spectra[1:]:
        if not s.freq.matches(grid):
            raise ValueError("spectra do not share a frequency grid")
    anchor = spectra[0].values
    offsets = np.mean([s.values - anchor for s in spectra], axis=0)
    return SpectralDensity(grid, np.clip(anchor + offsets, 0.0, None))


def spectral_mc_null(
    spectra_x: list[SpectralDensity],
    spectra_y: list[SpectralDensity],
    sim: SimConfig,
    basis: BasisSpec,
    plan: ResamplingPlan,
    n_jobs: int = 1,
) -> NullDistribution:
    """Monte Carlo null built by resimulating records from the average spectrum.

    Each replicate simulates m + n independent Gaussian records from the
    pooled average density, re-estimates their spectra with the given
    estimator settings, and evaluates the statistic on the (m, n) split.
    """
    m, n = plan.sizes
    if (len(spectra_x), len(spectra_y)) != (m, n):
        raise ValueError("plan sizes must match the numbers of input spectra")
    s_avg = average_spectrum(list(spectra_x) + list(spectra_y))
    n_samples = int(round(sim.duration * sim.fs))
    synth = GaussianSynthesizer(n_samples, sim.fs)
    synth.check_nyquist(s_avg)
    if basis.data_driven:
        fixed_g = None
    else:
        placeholder = FunctionalSample(
            estimator_grid(sim.fs, sim.n_freq), np.zeros((1, sim.n_freq))
        )
        fixed_g = basis.build(placeholder)

    def task(r: int) -> float:
        rng = substream(plan.seed, r)
        records = synth.simulate(s_avg, rng, m + n)
        grid, est = estimate_spectra(records, sim.fs, sim.parzen_L, sim.n_freq)
        joint = FunctionalSample(grid, est)
        g = fixed_g if fixed_g is not None else basis.build(joint)
        scores = sample_inner_products(joint, g.functions)
        return _qn_from_scores(scores, m)

    return _run_replicates(task, plan, n_jobs)


def quantile_table(null_values, k: int, probs=(0.5, 0.9, 0.95, 0.975, 0.99)) -> QuantileTable:
    """Empirical null quantiles with their chi-square reference values.

    Empirical quantiles interpolate linearly between order statistics;
    the relative error column is (asymptotic - empirical) / empirical.
    """
    values = np.asarray(null_values, dtype=float)
    if values.size < 100:
        raise TooFewReplicates(
            f"need at least 100 replicates for quantiles, got {values.size}"
        )
    probs = np.asarray(probs, dtype=float)
    if np.any(probs <= 0.0) or np.any(probs >= 1.0):
        raise ValueError("probabilities must lie strictly inside (0, 1)")
    if np.any(np.diff(probs) <= 0):
        raise ValueError("probabilities must be strictly increasing")
    empirical = np.quantile(values, probs, method="linear")
    asymptotic = np.array([chi_square_isf(1.0 - p, k) for p in probs])
    relative_error = (asymptotic - empirical) / empirical
    return QuantileTable(probs, empirical, asymptotic, relative_error, k)
