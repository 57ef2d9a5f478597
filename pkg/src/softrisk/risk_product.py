"""Distributions of products of independent non-negative factors.

Pr{XY <= t} is evaluated as a single outer trapezoid integral of
p_X(x) * F_Y(min(t/x, y_hi)) over X's support; the inner CDF saturates at 1
for x <= t/y_hi, which removes the 1/x singularity exactly (no division is
evaluated where it would blow up).  Densities come from central finite
differences of the CDF, with negative artifacts clamped and the result
renormalized.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import cumulative_trapezoid

from .distributions import GriddedDensity
from .errors import (
    BoundsViolation,
    NegativeSupport,
    NonMonotoneCDF,
    UnsortedGrid,
)

__all__ = [
    "RiskSpec",
    "ProductResult",
    "product_cdf",
    "product_density",
    "risk_triple",
    "product_csv",
    "DEFAULT_PRODUCT_POINTS",
]

DEFAULT_PRODUCT_POINTS = 2001

# CDF samples may wobble below machine noise; anything worse means the
# input was not a CDF.
_MONOTONE_TOL = 1e-9


@dataclass(frozen=True)
class RiskSpec:
    """The three factor densities of the risk chain: consequences times
    vulnerability times threat.

    Vulnerability and threat are probabilities (support within [0, 1]);
    consequences live on a bounded non-negative utility scale.  The optional
    scenario label records which countermeasure context the vulnerability was
    elicited under; it never enters the numerics.
    """

    consequences: GriddedDensity
    vulnerability: GriddedDensity
    threat: GriddedDensity
    scenario_label: Optional[str] = None

    def __post_init__(self):
        for name, grid in (
            ("consequences", self.consequences),
            ("vulnerability", self.vulnerability),
            ("threat", self.threat),
        ):
            if grid.support_lo < 0.0:
                raise NegativeSupport(f"{name} support must be non-negative")
        for name, grid in (("vulnerability", self.vulnerability), ("threat", self.threat)):
            if grid.support_hi > 1.0:
                raise BoundsViolation(f"{name} is a probability; support must lie within [0, 1]")


@dataclass(frozen=True)
class ProductResult:
    """CDF samples of a product plus the numerically differentiated density."""

    cdf_grid: List[Tuple[float, float]]
    density_grid: GriddedDensity


def _grid_cdf_interpolator(grid: GriddedDensity):
    """Cumulative trapezoid CDF of a gridded density, extended by 0/1 outside."""
    xs = grid.x_grid()
    cum = cumulative_trapezoid(grid.values, dx=grid.step, initial=0.0)
    cum = np.clip(cum, 0.0, 1.0)

    def cdf(points: np.ndarray) -> np.ndarray:
        return np.interp(points, xs, cum, left=0.0, right=1.0)

    return cdf


def _one_sided_product_cdf(X: GriddedDensity, Y: GriddedDensity, ts: np.ndarray) -> np.ndarray:
    xs = X.x_grid()
    y_hi = Y.support_hi
    cdf_y = _grid_cdf_interpolator(Y)
    with np.errstate(divide="ignore", invalid="ignore"):
        inner_limit = ts[:, None] / xs[None, :]
    # t/x -> 0 for every x > 0 when t = 0, so saturation only applies at t > 0;
    # the 0/0 cell takes the same zero limit.
    saturated = (xs[None, :] * y_hi <= ts[:, None]) & (ts[:, None] > 0.0)
    inner_limit = np.nan_to_num(inner_limit, nan=0.0, posinf=np.inf, neginf=-np.inf)
    inner = np.where(saturated, 1.0, cdf_y(np.where(saturated, y_hi, inner_limit)))
    return np.trapezoid(X.values[None, :] * inner, dx=X.step, axis=1)


def product_cdf(
    X: GriddedDensity, Y: GriddedDensity, t_grid: Sequence[float]
) -> List[Tuple[float, float]]:
    """CDF of the product of two independent non-negative gridded factors.

    The outer integral is evaluated both ways round and averaged, which makes
    the operation exactly commutative and cancels most discretization error.
    Each trapezoid sum runs over its grid left to right, so the reduction
    order (and hence the result) is deterministic.
    """
    if X.support_lo < 0.0 or Y.support_lo < 0.0:
        raise NegativeSupport("product factors must have non-negative support")
    ts = np.asarray(t_grid, dtype=float)
    if ts.ndim != 1 or ts.size < 1:
        raise UnsortedGrid("t_grid must be a non-empty 1-D sequence")
    if not np.all(np.isfinite(ts)) or np.any(np.diff(ts) < 0.0):
        raise UnsortedGrid("t_grid must be finite and sorted ascending")

    values = 0.5 * (_one_sided_product_cdf(X, Y, ts) + _one_sided_product_cdf(Y, X, ts))
    values = np.clip(values, 0.0, 1.0)
    return [(float(t), float(v)) for t, v in zip(ts, values)]


def product_density(result_cdf: Sequence[Tuple[float, float]]) -> GriddedDensity:
    """Differentiate monotone CDF samples on a uniform grid into a density.

    Central differences inside, one-sided at the ends; negative artifacts from
    the differentiation stencil are clamped to zero before renormalization.
    """
    pairs = np.asarray(result_cdf, dtype=float)
    if pairs.ndim != 2 or pairs.shape[1] != 2 or pairs.shape[0] < 3:
        raise ValueError("need at least 3 (t, cdf) pairs")
    ts, cdf = pairs[:, 0], pairs[:, 1]
    steps = np.diff(ts)
    h = (ts[-1] - ts[0]) / (ts.size - 1)
    if h <= 0.0 or not np.allclose(steps, h, rtol=1e-9, atol=1e-12 * max(abs(ts[-1]), 1.0)):
        raise ValueError("t grid must be uniform and increasing")
    if np.any(np.diff(cdf) < -_MONOTONE_TOL):
        raise NonMonotoneCDF(f"CDF samples decrease beyond tolerance {_MONOTONE_TOL}")
    density = np.gradient(cdf, h)
    density = np.clip(density, 0.0, None)
    return GriddedDensity(ts[0], ts[-1], density)


def risk_triple(spec: RiskSpec, n_points: int = DEFAULT_PRODUCT_POINTS) -> ProductResult:
    """Distribution of risk = consequences * vulnerability * threat.

    The probability pair multiplies first on [0, 1], then consequences scale
    the result onto [0, c_hi].
    """
    prob_t = np.linspace(0.0, 1.0, n_points)
    prob_pairs = product_cdf(spec.vulnerability, spec.threat, prob_t)
    prob_density = product_density(prob_pairs)

    risk_t = np.linspace(0.0, spec.consequences.support_hi, n_points)
    risk_pairs = product_cdf(spec.consequences, prob_density, risk_t)
    return ProductResult(cdf_grid=risk_pairs, density_grid=product_density(risk_pairs))


def product_csv(result: ProductResult) -> str:
    """Three-column t,cdf,density CSV with 12 significant digits."""
    lines = ["t,cdf,density"]
    lines.extend(
        f"{t:.12g},{c:.12g},{d:.12g}"
        for (t, c), d in zip(result.cdf_grid, result.density_grid.values)
    )
    return "\n".join(lines) + "\n"
