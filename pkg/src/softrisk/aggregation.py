"""Linear opinion pooling of expert densities, with dissensus-preserving mode detection."""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import List, Literal, Sequence

import numpy as np
from scipy import signal

from .distributions import GriddedDensity, SoftTriangleParams, pdf_soft
from .errors import EmptyPanel, NonFinite, NonPositiveWeight

__all__ = [
    "ExpertEstimate",
    "PooledDensity",
    "common_grid",
    "aggregate",
    "count_modes",
    "grid_to_csv",
    "DEFAULT_MODE_PROMINENCE",
]

VariantChoice = Literal["sharp", "wide"]

# Relative prominence below which a local maximum is treated as grid noise.
DEFAULT_MODE_PROMINENCE = 0.02


@dataclass(frozen=True)
class ExpertEstimate:
    """One expert's answer to one uncertain quantity.

    Choosing the sharp variant forces phi to 1, keeping a single canonical
    parameterization for both variants.
    """

    expert_id: str
    params: SoftTriangleParams
    weight: float = 1.0
    variant_choice: VariantChoice = "wide"

    def __post_init__(self):
        object.__setattr__(self, "weight", float(self.weight))
        if not math.isfinite(self.weight):
            raise NonFinite(f"weight must be finite, got {self.weight!r}")
        if self.weight <= 0.0:
            raise NonPositiveWeight(f"weight must be > 0, got {self.weight}")
        if self.variant_choice not in ("sharp", "wide"):
            raise ValueError(f"variant_choice must be 'sharp' or 'wide', got {self.variant_choice!r}")
        if self.variant_choice == "sharp" and self.params.phi != 1.0:
            object.__setattr__(self, "params", replace(self.params, phi=1.0))


@dataclass(frozen=True)
class PooledDensity:
    """A pooled grid plus who contributed and where its detected peaks sit."""

    grid: GriddedDensity
    contributor_ids: List[str]
    mode_locations: List[float] = field(default_factory=list)


def common_grid(
    estimates: Sequence[ExpertEstimate], n_points: int = 1001
) -> List[GriddedDensity]:
    """Regrid every estimate onto the panel's joint support [min low, max high].

    Each density is evaluated from its closed form (zero outside its own
    support) and renormalized on the shared grid.
    """
    if not estimates:
        raise EmptyPanel("need at least one estimate")
    lo = min(e.params.low for e in estimates)
    hi = max(e.params.high for e in estimates)
    xs = np.linspace(lo, hi, n_points)
    return [GriddedDensity(lo, hi, pdf_soft(e.params, xs)) for e in estimates]


def aggregate(
    estimates: Sequence[ExpertEstimate],
    weighted: bool = False,
    n_points: int = 1001,
    min_prominence: float = DEFAULT_MODE_PROMINENCE,
) -> PooledDensity:
    """Pool expert densities by pointwise (weighted) averaging.

    The linear pool keeps each expert's peak visible, so disagreement shows
    up as multi-modality instead of being smoothed away.
    """
    grids = common_grid(estimates, n_points)
    stacked = np.stack([g.values for g in grids])
    if weighted:
        weights = np.array([e.weight for e in estimates], dtype=float)
        if np.any(weights <= 0.0):
            raise NonPositiveWeight("all weights must be > 0")
        pooled_values = weights @ stacked / weights.sum()
    else:
        pooled_values = stacked.mean(axis=0)
    grid = GriddedDensity(grids[0].support_lo, grids[0].support_hi, pooled_values)
    return PooledDensity(
        grid=grid,
        contributor_ids=[e.expert_id for e in estimates],
        mode_locations=count_modes(grid, min_prominence),
    )


def count_modes(grid: GriddedDensity, min_prominence: float = DEFAULT_MODE_PROMINENCE) -> List[float]:
    """Locate strict local maxima that stand out from the surrounding density.

    A peak counts only if it exceeds the neighboring local minima on both
    sides by min_prominence times the global maximum, which suppresses
    grid-level noise while keeping genuine dissensus visible.
    """
    peak = float(grid.values.max())
    if peak <= 0.0:
        return []
    indices, _ = signal.find_peaks(grid.values, prominence=min_prominence * peak)
    xs = grid.x_grid()
    return [float(x) for x in xs[indices]]


def grid_to_csv(grid: GriddedDensity) -> str:
    """Two-column x,density CSV with 12 significant digits; byte-stable."""
    xs = grid.x_grid()
    lines = ["x,density"]
    lines.extend(f"{x:.12g},{v:.12g}" for x, v in zip(xs, grid.values))
    return "\n".join(lines) + "\n"
