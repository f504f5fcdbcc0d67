"""Construction of the projection functions used by the quadratic-form test.

Four schemes are supported: interval indicators, B-spline basis functions,
data-driven odd/even trigonometric combinations, and eigenfunctions of the
pooled covariance operator.  Data-driven schemes are always built from the
joint (pooled) sample.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .bsplines import basis_sample, spec_from_interior_nodes
from .errors import DegenerateCovariance, InvalidK, WrongInterval
from .grids import FunctionalSample, Grid, Interval, sample_inner_products

UNIT_INTERVAL_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class GVector:
    """Ordered tuple of projection functions sampled on a shared grid."""

    grid: Grid
    functions: np.ndarray  # (k, n_points)
    scheme: str
    params: dict = field(default_factory=dict)
    provenance: str = "fixed"

    def __post_init__(self):
        funcs = np.array(self.functions, dtype=float)
        if funcs.ndim != 2 or funcs.shape[0] < 1:
            raise InvalidK("GVector needs at least one function")
        if funcs.shape[1] != len(self.grid):
            raise WrongInterval("functions not sampled on the given grid")
        if not np.all(np.isfinite(funcs)):
            raise ValueError("GVector functions must be finite")
        funcs.flags.writeable = False
        object.__setattr__(self, "functions", funcs)

    @property
    def k(self) -> int:
        return self.functions.shape[0]

    def metadata(self) -> dict:
        return {
            "scheme": self.scheme,
            "params": dict(self.params),
            "provenance": self.provenance,
        }


@dataclass(frozen=True, eq=False)
class FourierCoefficients:
    """Per-curve sine (a) and cosine (b) coefficients, (n_curves, k_max)."""

    a: np.ndarray
    b: np.ndarray
    k_max: int

    def __post_init__(self):
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if a.shape != b.shape or a.ndim != 2 or a.shape[1] != self.k_max:
            raise ValueError("coefficient matrices must share shape (n, k_max)")
        if not (np.all(np.isfinite(a)) and np.all(np.isfinite(b))):
            raise ValueError("coefficients must be finite")


@dataclass(frozen=True, eq=False)
class PCABasis:
    """Leading eigenpairs of the discretized pooled covariance operator."""

    grid: Grid
    eigenfunctions: np.ndarray  # (d, n_points), unit L2 norm
    eigenvalues: np.ndarray  # non-increasing, >= 0
    d: int

    def to_gvector(self, params: dict | None = None) -> GVector:
        return GVector(
            self.grid,
            self.eigenfunctions,
            "pca",
            params if params is not None else {"d": self.d},
            provenance="data-driven",
        )


def indicator_basis(interval: Interval, k: int, grid: Grid) -> GVector:
    """Indicators of k equal subintervals, right-open except the last."""
    if k < 1:
        raise InvalidK(f"need k >= 1 indicators, got {k}")
    t = grid.points
    edges = np.linspace(interval.a, interval.b, k + 1)
    funcs = np.zeros((k, t.size))
    for j in range(k):
        if j < k - 1:
            mask = (t >= edges[j]) & (t < edges[j + 1])
        else:
            mask = (t >= edges[j]) & (t <= edges[j + 1])
        funcs[j, mask] = 1.0
    return GVector(grid, funcs, "indicator", {"k": k})


def bspline_basis_g(
    interval: Interval, order: int, interior_nodes: int, grid: Grid
) -> GVector:
    """All clamped equidistant B-spline basis functions on the grid."""
    spec = spec_from_interior_nodes(interval, order, interior_nodes)
    funcs = basis_sample(spec, grid)
    return GVector(
        grid, funcs, "bspline", {"order": order, "interior": interior_nodes}
    )


def _harmonics(grid: Grid, k_max: int) -> tuple[np.ndarray, np.ndarray]:
    t = grid.points
    ls = np.arange(1, k_max + 1)[:, None]
    return np.sin(2 * np.pi * ls * t), np.cos(2 * np.pi * ls * t)


def _require_unit_interval(sample: FunctionalSample):
    iv = sample.interval
    if abs(iv.a) > UNIT_INTERVAL_TOL or abs(iv.b - 1.0) > UNIT_INTERVAL_TOL:
        raise WrongInterval(
            f"registered waves must live on [0, 1], got [{iv.a}, {iv.b}]"
        )


def fourier_coefficients(joint: FunctionalSample, k_max: int) -> FourierCoefficients:
    """Sine/cosine coefficients of each curve at harmonics l = 1..k_max."""
    if k_max < 1:
        raise InvalidK(f"k_max must be >= 1, got {k_max}")
    _require_unit_interval(joint)
    sines, cosines = _harmonics(joint.grid, k_max)
    a = sample_inner_products(joint, sines)
    b = sample_inner_products(joint, cosines)
    return FourierCoefficients(a, b, k_max)


def trig_g_functions(
    joint: FunctionalSample, k_max: int = 3, parts: str = "both"
) -> GVector:
    """Data-driven odd (and even) trigonometric projection functions.

    The sine and cosine combinations are weighted by the joint-sample
    averages of the absolute Fourier coefficients; ``parts="odd"`` keeps
    only the sine combination (the one-degree-of-freedom asymmetry test).
    """
    if parts not in ("both", "odd"):
        raise ValueError(f"parts must be 'both' or 'odd', got {parts!r}")
    coef = fourier_coefficients(joint, k_max)
    a_bar = np.mean(np.abs(coef.a), axis=0)
    b_bar = np.mean(np.abs(coef.b), axis=0)
    sines, cosines = _harmonics(joint.grid, k_max)
    g1 = a_bar @ sines
    if parts == "odd":
        funcs = g1[None, :]
    else:
        g2 = b_bar @ cosines
        funcs = np.vstack([g1, g2])
    return GVector(
        joint.grid,
        funcs,
        "trig",
        {"k_max": k_max, "parts": parts,
         "a_bar": a_bar.tolist(), "b_bar": b_bar.tolist()},
        provenance="data-driven",
    )


def pca_basis(
    joint: FunctionalSample,
    d: int,
    weights: str = "proportion",
    sizes: tuple[int, int] | None = None,
) -> PCABasis:
    """Top-d eigenpairs of the pooled covariance operator on the grid.

    Without ``sizes`` the covariance of the pooled sample about the pooled
    mean is used; this depends only on the unlabeled joint sample, which is
    what permutation calibration requires.  With ``sizes=(m, n)`` the first
    m curves form one group and the operator is the theta-weighted
    combination of the two group covariances, theta = m/(m+n) for
    ``weights="proportion"`` or 1/2 for ``weights="equal"``.
    """
    if weights not in ("proportion", "equal"):
        raise ValueError(f"weights must be 'proportion' or 'equal', got {weights!r}")
    n_pts = len(joint.grid)
    if not 1 <= d <= n_pts:
        raise InvalidK(f"need 1 <= d <= {n_pts}, got {d}")
    vals = joint.values
    if sizes is None:
        centered = vals - vals.mean(axis=0)
        cov = centered.T @ centered / (vals.shape[0] - 1)
    else:
        m, n = sizes
        if m + n != vals.shape[0] or m < 2 or n < 2:
            raise ValueError("sizes must split the joint sample with m, n >= 2")
        theta = m / (m + n) if weights == "proportion" else 0.5
        cx = vals[:m] - vals[:m].mean(axis=0)
        cy = vals[m:] - vals[m:].mean(axis=0)
        cov = (1.0 - theta) * (cx.T @ cx / (m - 1)) + theta * (cy.T @ cy / (n - 1))

    w = joint.grid.weights
    sqrt_w = np.sqrt(w)
    sym = sqrt_w[:, None] * cov * sqrt_w[None, :]
    eigvals, eigvecs = np.linalg.eigh(sym)
    order = np.argsort(eigvals)[::-1]
    eigvals = eigvals[order]
    eigvecs = eigvecs[:, order]
    if eigvals[d - 1] < 1e-12 * max(eigvals[0], 0.0) or eigvals[0] <= 0:
        raise DegenerateCovariance(
            f"component {d} is numerically zero (eigenvalue {eigvals[d - 1]:.3e})"
        )
    eigvals = np.clip(eigvals[:d], 0.0, None)
    # Back to function values: phi = u / sqrt(w) is orthonormal in L2.
    phis = (eigvecs[:, :d] / sqrt_w[:, None]).T
    for i in range(d):
        integral = float(np.dot(w, phis[i]))
        if abs(integral) > 1e-10 * np.max(np.abs(phis[i])):
            if integral < 0:
                phis[i] = -phis[i]
        elif phis[i][np.argmax(np.abs(phis[i]))] < 0:
            phis[i] = -phis[i]
    return PCABasis(joint.grid, phis, eigvals, d)


@dataclass(frozen=True)
class BasisSpec:
    """Descriptor of a g-function construction, buildable from a joint sample.

    String form: ``indicator:k=8``, ``bspline:order=5,interior=7``,
    ``trig:k=3,parts=both`` (or ``parts=odd``), ``pca:d=2``.
    """

    scheme: str
    params: dict = field(default_factory=dict)

    _SCHEMES = ("indicator", "bspline", "trig", "pca")

    def __post_init__(self):
        if self.scheme not in self._SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")

    @property
    def data_driven(self) -> bool:
        return self.scheme in ("trig", "pca")

    def build(self, joint: FunctionalSample) -> GVector:
        interval, grid = joint.interval, joint.grid
        if self.scheme == "indicator":
            return indicator_basis(interval, int(self.params.get("k", 8)), grid)
        if self.scheme == "bspline":
            return bspline_basis_g(
                interval,
                int(self.params.get("order", 5)),
                int(self.params.get("interior", 7)),
                grid,
            )
        if self.scheme == "trig":
            return trig_g_functions(
                joint,
                int(self.params.get("k", self.params.get("k_max", 3))),
                str(self.params.get("parts", "both")),
            )
        basis = pca_basis(
            joint,
            int(self.params.get("d", 2)),
            str(self.params.get("weights", "proportion")),
        )
        return basis.to_gvector()

    @classmethod
    def parse(cls, text: str) -> "BasisSpec":
        scheme, _, rest = text.partition(":")
        scheme = scheme.strip().lower()
        params: dict = {}
        if rest:
            for item in rest.split(","):
                key, _, value = item.partition("=")
                if not _:
                    raise ValueError(f"malformed basis parameter {item!r}")
                key = key.strip().lower()
                value = value.strip()
                params[key] = value if key in ("parts", "weights") else int(value)
        return cls(scheme, params)

    def __str__(self) -> str:
        if not self.params:
            return self.scheme
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.scheme}:{inner}"
