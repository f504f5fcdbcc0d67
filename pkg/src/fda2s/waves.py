"""Mean-level downcrossing waves: segmentation, registration, normalization.

A wave is the elevation trajectory between two consecutive downcrossings
of the record mean, with sub-sample crossing times placed by linear
interpolation.  Registration maps each wave onto [0, 1] (optionally
pinning the first upcrossing at 0.5) and re-represents it in a common
clamped B-spline basis with endpoints held at zero.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np
from scipy.interpolate import make_interp_spline

from .bsplines import basis_matrix, equidistant_spec
from .errors import NoUpcrossing, NoWaves, ZeroVariance
from .grids import Curve, FunctionalSample, Grid, Interval, uniform_grid
from .sea import TimeSeriesRecord


@dataclass(frozen=True)
class RegistrationSpec:
    """Common-grid size, spline order/knot count, and the upcrossing pin."""

    n_grid: int = 101
    spline_order: int = 6
    n_knots: int = 61
    constrain_upcross: bool = False

    def __post_init__(self):
        if self.n_grid < 2:
            raise ValueError("common grid needs at least 2 points")
        if self.spline_order < 2:
            raise ValueError("spline order must be >= 2")
        if self.n_knots < 2:
            raise ValueError("need at least the two endpoint knot sites")


@dataclass(frozen=True, eq=False)
class WaveRecord:
    """One wave: raw samples with interpolated zero endpoints."""

    raw_times: np.ndarray
    raw_values: np.ndarray
    period: float
    registered: Curve | None = None
    upcross_fraction: float = float("nan")

    def __post_init__(self):
        t = np.array(self.raw_times, dtype=float)
        v = np.array(self.raw_values, dtype=float)
        if t.shape != v.shape or t.ndim != 1 or t.size < 2:
            raise ValueError("wave needs matching time/value arrays of length >= 2")
        if self.period <= 0:
            raise ValueError("wave period must be positive")
        t.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "raw_times", t)
        object.__setattr__(self, "raw_values", v)

    @property
    def n_interior(self) -> int:
        return self.raw_times.size - 2


def downcrossings(rec: TimeSeriesRecord, level: float) -> np.ndarray:
    """Interpolated times where the record crosses `level` from above.

    A sample exactly at the level counts as below it, so it ends a
    crossing only when the previous sample lies above.
    """
    v = rec.values
    t = rec.times
    above = v > level
    idx = np.where(above[:-1] & ~above[1:])[0]
    if idx.size == 0:
        return np.empty(0)
    frac = (level - v[idx]) / (v[idx + 1] - v[idx])
    return t[idx] + frac * (t[idx + 1] - t[idx])


def upcrossings(times: np.ndarray, values: np.ndarray) -> np.ndarray:
    """Interpolated times where the series rises through 0 (from <= 0 to > 0)."""
    below = values <= 0.0
    idx = np.where(below[:-1] & ~below[1:])[0]
    if idx.size == 0:
        return np.empty(0)
    frac = (0.0 - values[idx]) / (values[idx + 1] - values[idx])
    return times[idx] + frac * (times[idx + 1] - times[idx])


def segment_waves(rec: TimeSeriesRecord) -> list[WaveRecord]:
    """Split a record into mean-level downcrossing waves.

    The record mean is subtracted first; each wave carries the samples
    strictly between its two crossings plus interpolated zero endpoints.
    """
    mean = float(rec.values.mean())
    centered = rec.values - mean
    shifted = TimeSeriesRecord(rec.fs, centered, rec.t0)
    times = shifted.times
    crossings = downcrossings(shifted, 0.0)
    if crossings.size < 2:
        raise NoWaves(
            f"record has {crossings.size} mean-level downcrossings; need >= 2"
        )
    waves = []
    for t_start, t_end in zip(crossings[:-1], crossings[1:]):
        inside = np.where((times > t_start) & (times < t_end))[0]
        raw_t = np.concatenate([[t_start], times[inside], [t_end]])
        raw_v = np.concatenate([[0.0], centered[inside], [0.0]])
        waves.append(WaveRecord(raw_t, raw_v, float(t_end - t_start)))
    return waves


def _registration_basis(spec: RegistrationSpec):
    grid = uniform_grid(Interval(0.0, 1.0), spec.n_grid)
    bspec = equidistant_spec(Interval(0.0, 1.0), spec.spline_order, spec.n_knots)
    design = basis_matrix(bspec, grid.points)[:, 1:-1]  # end coefficients pinned to 0
    gram = design.T @ design
    projector = design @ np.linalg.solve(gram, design.T)
    return grid, projector


def _warp_times(w: WaveRecord, constrain: bool) -> tuple[np.ndarray, float]:
    t = w.raw_times
    t_start, t_end = t[0], t[-1]
    ups = upcrossings(t, w.raw_values)
    ups = ups[(ups > t_start) & (ups < t_end)]
    t_up = float(ups[0]) if ups.size else float("nan")
    if not constrain:
        u = (t - t_start) / (t_end - t_start)
        frac = (t_up - t_start) / (t_end - t_start) if np.isfinite(t_up) else t_up
        return u, frac
    if not np.isfinite(t_up):
        raise NoUpcrossing("wave never rises above the mean level")
    u = np.where(
        t <= t_up,
        0.5 * (t - t_start) / (t_up - t_start),
        0.5 + 0.5 * (t - t_up) / (t_end - t_up),
    )
    return u, 0.5


def _dense_values(u: np.ndarray, values: np.ndarray, order: int,
                  grid: Grid) -> np.ndarray:
    k = min(order - 1, u.size - 1)
    spline = make_interp_spline(u, values, k=k)
    return spline(grid.points)


def register_wave(w: WaveRecord, spec: RegistrationSpec) -> WaveRecord:
    """Map a wave onto [0, 1] and fit it in the common spline basis.

    With ``constrain_upcross`` the two-piece linear time map sends
    (start, first upcrossing, end) to (0, 0.5, 1).  The fitted curve is
    exactly zero at both endpoints.  Waves with fewer interior samples
    than the spline order use a reduced interpolation order.
    """
    grid, projector = _registration_basis(spec)
    u, frac = _warp_times(w, spec.constrain_upcross)
    dense = _dense_values(u, w.raw_values, spec.spline_order, grid)
    fitted = projector @ dense
    return replace(w, registered=Curve(grid, fitted), upcross_fraction=float(frac))


def register_sample(
    waves: list[WaveRecord],
    spec: RegistrationSpec,
    min_interior: int = 4,
    label: str = "",
) -> tuple[FunctionalSample, list[WaveRecord], int]:
    """Register a batch of waves onto the common grid.

    Waves with fewer than ``min_interior`` interior samples, and waves
    without an upcrossing when one is required, are dropped; the count of
    dropped waves is returned alongside the sample.
    """
    grid, projector = _registration_basis(spec)
    dense_rows = []
    kept = []
    dropped = 0
    for w in waves:
        if w.n_interior < min_interior:
            dropped += 1
            continue
        try:
            u, frac = _warp_times(w, spec.constrain_upcross)
        except NoUpcrossing:
            dropped += 1
            continue
        dense_rows.append(_dense_values(u, w.raw_values, spec.spline_order, grid))
        kept.append((w, frac))
    if not dense_rows:
        raise NoWaves("no waves survived registration")
    fitted = np.asarray(dense_rows) @ projector.T
    registered = [
        replace(w, registered=Curve(grid, row), upcross_fraction=float(frac))
        for (w, frac), row in zip(kept, fitted)
    ]
    return FunctionalSample(grid, fitted, label), registered, dropped


def normalize_sample(
    waves: FunctionalSample, rec: TimeSeriesRecord
) -> FunctionalSample:
    """Divide every registered wave by the record's sample standard deviation."""
    std = float(np.std(rec.values - rec.values.mean(), ddof=1))
    if std <= 0.0:
        raise ZeroVariance("record has zero variance; cannot normalize")
    return FunctionalSample(waves.grid, waves.values / std, waves.label)
