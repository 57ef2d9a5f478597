"""Shared fixtures: the six-expert demo panel and an independent mass oracle."""

from __future__ import annotations

import numpy as np
import pytest

from softrisk.aggregation import ExpertEstimate
from softrisk.distributions import (
    SoftTriangleParams,
    derive_coefficients,
    pdf_soft,
    validate_params,
)

# The six notional experts used throughout: (low, median, high, phi).
SIX_EXPERT_PANEL = [
    (20.0, 40.0, 80.0, 0.3),
    (50.0, 60.0, 70.0, 1.0),
    (10.0, 45.0, 70.0, 0.3),
    (15.0, 30.0, 79.0, 0.2),
    (25.0, 50.0, 75.0, 0.01),
    (40.0, 60.0, 70.0, 0.4),
]


@pytest.fixture
def six_expert_estimates() -> list[ExpertEstimate]:
    return [
        ExpertEstimate(expert_id=f"expert-{i + 1}", params=validate_params(*row))
        for i, row in enumerate(SIX_EXPERT_PANEL)
    ]


def random_soft_params(rng: np.random.Generator, count: int) -> list[SoftTriangleParams]:
    """Valid quadruples with side widths log-uniform in [1e-3, 1e3], phi in [0.01, 1]."""
    out = []
    for _ in range(count):
        low = rng.uniform(-100.0, 100.0)
        narrow = 10.0 ** rng.uniform(-3.0, 3.0)
        wide = 10.0 ** rng.uniform(-3.0, 3.0)
        phi = rng.uniform(0.01, 1.0)
        out.append(validate_params(low, low + narrow, low + narrow + wide, phi))
    return out


_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(48)


def _gauss_legendre(f, edges: np.ndarray) -> float:
    """Composite fixed-order Gauss-Legendre over consecutive [edges] intervals."""
    a = edges[:-1]
    b = edges[1:]
    half = 0.5 * (b - a)
    mid = 0.5 * (a + b)
    points = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    return float(np.sum(half[:, None] * _GL_WEIGHTS[None, :] * f(points.ravel()).reshape(points.shape)))


def quadrature_mass(p: SoftTriangleParams) -> float:
    """Total mass of pdf_soft by numeric quadrature, independent of cdf_soft.

    The monomial can be sharply spiked at the median for extreme side-width
    ratios, so the wide side is integrated over subintervals that shrink
    geometrically toward the median, keeping the integrand smooth on each.
    """
    c = derive_coefficients(p)

    def f(x):
        return pdf_soft(p, x)

    offsets = c.wide_width * 10.0 ** -np.arange(15.0, -0.1, -1.0)
    if c.wide_side == "upper":
        narrow_edges = np.array([p.low, p.median])
        wide_edges = np.concatenate([[p.median], p.median + offsets])
        wide_edges[-1] = p.high
    else:
        narrow_edges = np.array([p.median, p.high])
        wide_edges = np.concatenate([[p.median], p.median - offsets])[::-1]
        wide_edges[0] = p.low
    return _gauss_legendre(f, narrow_edges) + _gauss_legendre(f, wide_edges)
