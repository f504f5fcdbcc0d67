"""Shared generators for randomized tests (seeded, reproducible)."""

import numpy as np
import pytest

from fda2s import FunctionalSample, Grid, Interval, uniform_grid


def smooth_curves(rng, n_curves, grid, scale=1.0):
    """Random smooth curves: low-order trigonometric + polynomial mix."""
    t = grid.points
    span = grid.interval.length
    u = (t - grid.interval.a) / span
    rows = np.zeros((n_curves, t.size))
    for l in range(1, 4):
        rows += rng.normal(0, scale / l, (n_curves, 1)) * np.sin(2 * np.pi * l * u)
        rows += rng.normal(0, scale / l, (n_curves, 1)) * np.cos(2 * np.pi * l * u)
    rows += rng.normal(0, 0.3 * scale, (n_curves, 1)) * u
    rows += rng.normal(0, 0.3 * scale, (n_curves, 1))
    return rows


def random_sample(rng, n_curves, n_points=41, interval=(0.0, 1.0), label="s"):
    grid = uniform_grid(Interval(*interval), n_points)
    return FunctionalSample(grid, smooth_curves(rng, n_curves, grid), label)


def random_sample_pair(rng, m=5, n=4, n_points=41):
    grid = uniform_grid(Interval(0.0, 1.0), n_points)
    x = FunctionalSample(grid, smooth_curves(rng, m, grid), "x")
    y = FunctionalSample(grid, smooth_curves(rng, n, grid), "y")
    return x, y


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
