"""Bimodal wave spectra, Gaussian record synthesis, and lag-window estimation.

Convention: spectral densities are one-sided on angular frequency (rad/s)
with ``integral of s over [0, omega_max] = variance`` and ``Hs = 4*sigma``.
No factor of 2 appears anywhere; other toolboxes differ.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    InvalidParams,
    NonFiniteValue,
    NyquistViolation,
    RecordTooShort,
)
from .grids import Grid
from .rng import as_generator

GRAVITY = 9.81

# Two-system split of the total energy: the primary system sits at the
# requested peak period, the secondary is swell (wind-dominated seas) or a
# fully developed wind sea (swell-dominated seas).
_FULLY_DEVELOPED_COEF = 6.6  # boundary period 6.6 * hs^(1/3)
_WIND_FLOOR = 0.85  # minimum share of Hs kept by the primary wind system
_SWELL_FLOOR = 0.6  # minimum share kept by the primary swell system
_PEAKEDNESS_SCALE = 35.0


@dataclass(frozen=True, eq=False)
class SpectralDensity:
    """One-sided spectral density sampled on a frequency grid from 0."""

    freq: Grid
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.shape != (len(self.freq),):
            raise ValueError("values must match the frequency grid")
        if not np.all(np.isfinite(vals)):
            raise NonFiniteValue("spectral values must be finite")
        if np.any(vals < 0):
            raise ValueError("spectral values must be non-negative")
        if abs(self.freq.points[0]) > 1e-12:
            raise ValueError("frequency grid must start at 0")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def sigma2(self) -> float:
        """Process variance: the integral of the density."""
        return float(np.dot(self.freq.weights, self.values))

    @property
    def hs(self) -> float:
        return 4.0 * float(np.sqrt(max(self.sigma2, 0.0)))

    @property
    def peak_angular_frequency(self) -> float:
        return float(self.freq.points[int(np.argmax(self.values))])

    @property
    def tp(self) -> float:
        wp = self.peak_angular_frequency
        return float(2.0 * np.pi / wp) if wp > 0 else float("inf")


@dataclass(frozen=True)
class TorsethaugenParams:
    """Significant wave height (m) and spectral peak period (s)."""

    hs: float
    tp: float

    def __post_init__(self):
        if not (np.isfinite(self.hs) and self.hs > 0):
            raise InvalidParams(f"hs must be positive, got {self.hs}")
        if not (np.isfinite(self.tp) and self.tp > 0):
            raise InvalidParams(f"tp must be positive, got {self.tp}")


@dataclass(frozen=True, eq=False)
class TimeSeriesRecord:
    """Evenly sampled surface elevation (m) with sampling frequency fs (Hz)."""

    fs: float
    values: np.ndarray
    t0: float = 0.0

    def __post_init__(self):
        if not (np.isfinite(self.fs) and self.fs > 0):
            raise InvalidParams(f"fs must be positive, got {self.fs}")
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 1:
            raise ValueError("record values must be one-dimensional")
        if not np.all(np.isfinite(vals)):
            raise NonFiniteValue("record values must be finite")
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def times(self) -> np.ndarray:
        return self.t0 + np.arange(self.values.size) / self.fs

    @property
    def duration(self) -> float:
        return self.values.size / self.fs


def _jonswap_shape(w: np.ndarray, wp: float, gamma: float) -> np.ndarray:
    """Unnormalized generalized JONSWAP shape with its peak exactly at wp."""
    shape = np.zeros_like(w)
    pos = w > 0
    x = w[pos] / wp
    sigma = np.where(x <= 1.0, 0.07, 0.09)
    peak = gamma ** np.exp(-((x - 1.0) ** 2) / (2.0 * sigma**2))
    shape[pos] = x**-5 * np.exp(-1.25 * x**-4) * peak
    return shape


def _peakedness(hs: float, tp: float) -> float:
    steepness = (2.0 * np.pi / GRAVITY) * hs / tp**2
    return float(np.clip(_PEAKEDNESS_SCALE * steepness ** (6.0 / 7.0), 1.0, 20.0))


def torsethaugen_spectrum(params: TorsethaugenParams, freq: Grid) -> SpectralDensity:
    """Two-peak wind-sea/swell spectrum rescaled to the exact target Hs.

    The grid must reach at least three times the primary peak frequency
    2*pi/tp.  The returned density integrates to (hs/4)^2 exactly and
    attains its maximum at the grid point nearest 2*pi/tp.
    """
    hs, tp = params.hs, params.tp
    wp = 2.0 * np.pi / tp
    if freq.points[-1] < 3.0 * wp * (1.0 - 1e-9):
        raise InvalidParams(
            f"frequency grid must reach 3*2*pi/tp = {3.0 * wp:.4g} rad/s, "
            f"got {freq.points[-1]:.4g}"
        )
    tp_fully = _FULLY_DEVELOPED_COEF * hs ** (1.0 / 3.0)
    if tp <= tp_fully:
        # Wind-dominated: primary wind system at tp, secondary swell above
        # the fully developed period.
        eps = np.clip((tp_fully - tp) / max(tp_fully - 2.0 * np.sqrt(hs), 1e-9), 0, 1)
        share = _WIND_FLOOR + (1.0 - _WIND_FLOOR) * np.exp(-((eps / 0.5) ** 2))
        primary = (share * hs, tp, _peakedness(share * hs, tp))
        secondary = (np.sqrt(1.0 - share**2) * hs, tp_fully + 2.0, 1.0)
    else:
        # Swell-dominated: primary swell at tp, secondary wind sea fully
        # developed for its own height.
        eps = np.clip((tp - tp_fully) / max(25.0 - tp_fully, 1e-9), 0, 1)
        share = _SWELL_FLOOR + (1.0 - _SWELL_FLOOR) * np.exp(-((eps / 0.3) ** 2))
        gamma_swell = _peakedness(hs, tp_fully) * (1.0 + 6.0 * eps)
        hs_wind = np.sqrt(1.0 - share**2) * hs
        primary = (share * hs, tp, min(gamma_swell, 20.0))
        secondary = (
            hs_wind,
            _FULLY_DEVELOPED_COEF * max(hs_wind, 1e-12) ** (1.0 / 3.0),
            1.0,
        )

    w = freq.points
    values = np.zeros_like(w)
    for hs_c, tp_c, gamma_c in (primary, secondary):
        if hs_c**2 < 1e-12 * hs**2:
            continue
        comp = _jonswap_shape(w, 2.0 * np.pi / tp_c, gamma_c)
        area = float(np.dot(freq.weights, comp))
        if area <= 0:
            continue
        values += (hs_c**2 / 16.0) / area * comp
    total = float(np.dot(freq.weights, values))
    values *= (hs**2 / 16.0) / total
    return SpectralDensity(freq, values)


def significant_wave_height(s: SpectralDensity) -> float:
    """Hs = 4 * sqrt(variance) with variance the trapezoid integral of s."""
    return s.hs


class GaussianSynthesizer:
    """Random-amplitude synthesizer for records of a fixed length and rate.

    Synthesis frequencies are the rfft lattice omega_j = 2*pi*fs*j/n, whose
    spacing shrinks as the record lengthens, so sample-path moments converge
    to the density's.  Amplitudes A_j, B_j are independent centered
    Gaussians with variance s(omega_j) * cell width (density interpolated
    onto the lattice); the record is assembled by an inverse FFT.
    """

    def __init__(self, n_samples: int, fs: float):
        if n_samples < 2:
            raise InvalidParams("need at least two samples (fs * duration >= 2)")
        self.n = int(n_samples)
        self.fs = float(fs)
        self.lattice = 2.0 * np.pi * fs * np.arange(self.n // 2 + 1) / self.n
        widths = np.full(self.lattice.size, 2.0 * np.pi * fs / self.n)
        widths[0] *= 0.5
        widths[-1] *= 0.5
        self._widths = widths

    def check_nyquist(self, s: SpectralDensity):
        above = s.freq.points > np.pi * self.fs * (1.0 + 1e-12)
        if not np.any(above):
            return
        mass = float(np.dot(s.freq.weights[above], s.values[above]))
        total = s.sigma2
        if total > 0 and mass > 0.01 * total:
            raise NyquistViolation(
                f"{100 * mass / total:.2f}% of the variance lies above the "
                f"angular Nyquist rate {np.pi * self.fs:.4g} rad/s"
            )

    def amplitude_variances(self, s: SpectralDensity) -> np.ndarray:
        """Per-cell amplitude variances, matching the density's band total."""
        self.check_nyquist(s)
        on_lattice = np.interp(self.lattice, s.freq.points, s.values,
                               left=0.0, right=0.0)
        v = on_lattice * self._widths
        total = v.sum()
        in_band = s.freq.points <= np.pi * self.fs * (1.0 + 1e-12)
        band_var = float(np.dot(s.freq.weights[in_band], s.values[in_band]))
        if total > 0:
            v *= band_var / total
        return v

    def simulate(self, s: SpectralDensity, rng: np.random.Generator,
                 n_records: int = 1) -> np.ndarray:
        """Batch of records, one per row; exactly Gaussian for any density."""
        std = np.sqrt(self.amplitude_variances(s))
        coeffs = rng.standard_normal((2, n_records, std.size)) * std
        a, b = coeffs[0], coeffs[1]
        spectrum = np.empty((n_records, std.size), dtype=complex)
        spectrum.real = a
        spectrum.imag = -b
        spectrum *= 0.5 * self.n
        spectrum[:, 0] = self.n * a[:, 0]
        if self.n % 2 == 0:
            spectrum[:, -1] = self.n * a[:, -1]
        return np.fft.irfft(spectrum, self.n, axis=1)


def simulate_gaussian(
    s: SpectralDensity,
    duration: float,
    fs: float,
    seed: int | np.random.Generator,
    t0: float = 0.0,
) -> TimeSeriesRecord:
    """Stationary Gaussian record of the given duration sampled at fs.

    Spectral synthesis with independent Gaussian amplitudes per frequency
    cell; the sample-path variance converges to the density's integral as
    the record lengthens.  Deterministic per seed.
    """
    n = int(round(duration * fs))
    synth = GaussianSynthesizer(n, fs)
    values = synth.simulate(s, as_generator(seed))[0]
    return TimeSeriesRecord(fs, values, t0)


def parzen_window(u: np.ndarray) -> np.ndarray:
    """Parzen lag window on [0, 1]: piecewise cubic, positive-definite."""
    u = np.abs(np.asarray(u, dtype=float))
    out = np.zeros_like(u)
    lo = u <= 0.5
    hi = (u > 0.5) & (u <= 1.0)
    out[lo] = 1.0 - 6.0 * u[lo] ** 2 + 6.0 * u[lo] ** 3
    out[hi] = 2.0 * (1.0 - u[hi]) ** 3
    return out


def _autocovariances(rows: np.ndarray, max_lag: int) -> np.ndarray:
    """Biased sample autocovariances c(0..max_lag) of mean-subtracted rows."""
    rows = np.atleast_2d(rows)
    n = rows.shape[1]
    x = rows - rows.mean(axis=1, keepdims=True)
    n_fft = 1 << int(np.ceil(np.log2(n + max_lag + 1)))
    spec = np.fft.rfft(x, n_fft, axis=1)
    acov = np.fft.irfft(spec * np.conj(spec), n_fft, axis=1)[:, : max_lag + 1]
    return acov / n


def estimate_spectrum(
    rec: TimeSeriesRecord, parzen_L: int = 60, n_freq: int = 481
) -> SpectralDensity:
    """Parzen lag-window estimate on [0, pi*fs] rad/s.

    The mean is removed, autocovariances up to lag ``parzen_L`` are weighted
    by the Parzen window, and the result is rescaled so that its integral
    equals the sample variance exactly.
    """
    grid, values = estimate_spectra(rec.values[None, :], rec.fs, parzen_L, n_freq)
    return SpectralDensity(grid, values[0])


def estimator_grid(fs: float, n_freq: int) -> Grid:
    """Frequency grid of the Parzen estimator: [0, pi*fs] rad/s."""
    return Grid(np.linspace(0.0, np.pi * fs, n_freq))


def estimate_spectra(
    rows: np.ndarray, fs: float, parzen_L: int = 60, n_freq: int = 481
) -> tuple[Grid, np.ndarray]:
    """Vectorized Parzen estimates for a batch of records (one per row)."""
    rows = np.atleast_2d(np.asarray(rows, dtype=float))
    n = rows.shape[1]
    if parzen_L < 1:
        raise InvalidParams("Parzen window length must be >= 1")
    if n <= 2 * parzen_L:
        raise RecordTooShort(
            f"record of {n} samples too short for Parzen length {parzen_L}"
        )
    acov = _autocovariances(rows, parzen_L)
    lags = np.arange(parzen_L + 1)
    weights = parzen_window(lags / parzen_L)
    dt = 1.0 / fs
    grid = estimator_grid(fs, n_freq)
    # cos(omega * h * dt) table: (n_lags, n_freq)
    cos_table = np.cos(np.outer(lags * dt, grid.points))
    coeffs = acov * weights
    coeffs[:, 1:] *= 2.0
    s = (dt / np.pi) * (coeffs @ cos_table)
    floor = -1e-12 * (1.0 + np.max(np.abs(s)))
    if np.min(s) < floor:
        raise AssertionError("Parzen estimate unexpectedly negative")
    s = np.clip(s, 0.0, None)
    # Exact variance normalization removes any residual convention slack.
    variance = acov[:, 0]
    integrals = s @ grid.weights
    scale = np.where(integrals > 0, variance / np.where(integrals > 0, integrals, 1.0), 0.0)
    return grid, s * scale[:, None]


def default_frequency_grid(fs: float, tp: float | None = None, n_freq: int = 481) -> Grid:
    """Grid reaching the larger of the angular Nyquist rate and 3 * 2*pi/tp."""
    w_max = np.pi * fs
    if tp is not None:
        w_max = max(w_max, 3.0 * 2.0 * np.pi / tp)
    return Grid(np.linspace(0.0, w_max, n_freq))
