"""Soft-triangle uncertainty distributions, plus triangular and beta baselines.

A soft triangle is elicited as a quadruple (low, median, high, phi).  The
density ramps linearly from zero at the extreme nearer the median (the narrow
side) up to a peak of 1/n at the median, and falls as a floored monomial
B + A*u**alpha on the other (wide) side, where u is the distance to the wide
extreme normalized to [0, 1].  The coefficients are fixed by three conditions:
continuity at the median, exactly half the mass on each side, and density
B = (1 - phi)/(2w) at the wide extreme.  phi = 1 gives the sharp variant
(zero tail floor); smaller phi pushes mass toward the wide extreme.

Everything here is a pure function of immutable value types.  Scalar or
ndarray evaluation points are accepted; scalars come back as floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Optional, Sequence, Tuple, Union

import numpy as np
from scipy import special

from .errors import (
    BadCount,
    GridTooCoarse,
    InvalidDistribution,
    NonFinite,
    OrderViolation,
    PhiOutOfRange,
    QOutOfRange,
    XOutOfRange,
)

__all__ = [
    "SoftTriangleParams",
    "DerivedCoefficients",
    "TriangularParams",
    "BetaParams",
    "GriddedDensity",
    "validate_params",
    "derive_coefficients",
    "pdf_soft",
    "pdf_sharp",
    "cdf_soft",
    "quantile_soft",
    "sample_soft",
    "pdf_triangular",
    "cdf_triangular",
    "pdf_beta",
    "to_grid",
    "pdf_curve",
]

WideSide = Literal["upper", "lower"]

MIN_GRID_POINTS = 64
DEFAULT_GRID_POINTS = 1001

# Bisection controls for the wide-side quantile (monotone and smooth, so
# plain bisection is unconditionally safe).
_BISECT_MAX_ITER = 200
_BISECT_WIDTH = 1e-12


def _require_finite(**named: float) -> None:
    for name, value in named.items():
        if not math.isfinite(value):
            raise NonFinite(f"{name} must be finite, got {value!r}")


@dataclass(frozen=True)
class SoftTriangleParams:
    """The elicited quadruple (low, median, high, phi); validates on construction."""

    low: float
    median: float
    high: float
    phi: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "low", float(self.low))
        object.__setattr__(self, "median", float(self.median))
        object.__setattr__(self, "high", float(self.high))
        object.__setattr__(self, "phi", float(self.phi))
        _require_finite(low=self.low, median=self.median, high=self.high, phi=self.phi)
        if not (self.low < self.median < self.high):
            raise OrderViolation(
                f"need low < median < high, got ({self.low}, {self.median}, {self.high})"
            )
        if not (0.0 < self.phi <= 1.0):
            raise PhiOutOfRange(f"phi must lie in (0, 1], got {self.phi}")


def validate_params(low, median, high, phi) -> SoftTriangleParams:
    """Validate a raw quadruple of reals into SoftTriangleParams.

    Raises NonFinite, OrderViolation or PhiOutOfRange; downstream operations
    may assume the returned value satisfies all invariants.
    """
    return SoftTriangleParams(low, median, high, phi)


@dataclass(frozen=True)
class DerivedCoefficients:
    """The quantities that fully determine a soft-triangle density.

    narrow_width is min(median-low, high-median), wide_width the max;
    tail_floor is the density at the wide extreme, amplitude the monomial
    coefficient, exponent its power, and peak the density at the median.
    """

    narrow_width: float
    wide_width: float
    tail_floor: float
    amplitude: float
    exponent: float
    peak: float
    wide_side: WideSide


def derive_coefficients(p: SoftTriangleParams) -> DerivedCoefficients:
    """Compute the density coefficients for validated params.

    Continuity at the median forces tail_floor + amplitude = 1/narrow_width,
    and the half-mass condition on the wide side fixes the exponent.  Ties
    (narrow_width == wide_width) put the monomial on the upper side.
    """
    span_lo = p.median - p.low
    span_hi = p.high - p.median
    wide_side: WideSide = "upper" if span_hi >= span_lo else "lower"
    narrow_width = min(span_lo, span_hi)
    wide_width = max(span_lo, span_hi)
    peak = 1.0 / narrow_width
    tail_floor = (1.0 - p.phi) / (2.0 * wide_width)
    amplitude = peak - tail_floor
    exponent = 2.0 * amplitude * wide_width / p.phi - 1.0
    return DerivedCoefficients(
        narrow_width=narrow_width,
        wide_width=wide_width,
        tail_floor=tail_floor,
        amplitude=amplitude,
        exponent=exponent,
        peak=peak,
        wide_side=wide_side,
    )


def _as_array(x) -> Tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return np.atleast_1d(arr), arr.ndim == 0


def _maybe_scalar(values: np.ndarray, scalar: bool):
    return float(values[0]) if scalar else values


def _pdf_soft_values(p: SoftTriangleParams, c: DerivedCoefficients, x: np.ndarray) -> np.ndarray:
    low, median, high = p.low, p.median, p.high
    out = np.zeros_like(x)
    if c.wide_side == "upper":
        narrow = (x >= low) & (x <= median)
        wide = (x > median) & (x <= high)
        out[narrow] = c.peak * (x[narrow] - low) / c.narrow_width
        u = (high - x[wide]) / c.wide_width
        out[wide] = c.tail_floor + c.amplitude * u**c.exponent
    else:
        wide = (x >= low) & (x < median)
        narrow = (x >= median) & (x <= high)
        u = (x[wide] - low) / c.wide_width
        out[wide] = c.tail_floor + c.amplitude * u**c.exponent
        out[narrow] = c.peak * (high - x[narrow]) / c.narrow_width
    return out


def pdf_soft(p: SoftTriangleParams, x):
    """Soft-triangle density at x; zero outside [low, high].

    The density at the wide extreme equals the tail floor (1 - phi)/(2w),
    which is strictly positive exactly when phi < 1.
    """
    arr, scalar = _as_array(x)
    values = _pdf_soft_values(p, derive_coefficients(p), arr)
    return _maybe_scalar(values, scalar)


def pdf_sharp(p: SoftTriangleParams, x):
    """Sharp-variant density: pure monomial wide side, zero tail floor.

    Ignores p.phi.  Coincides with pdf_soft when phi = 1; kept as a separate
    construction so the coincidence can be checked rather than assumed.
    """
    span_lo = p.median - p.low
    span_hi = p.high - p.median
    narrow_width = min(span_lo, span_hi)
    wide_width = max(span_lo, span_hi)
    peak = 1.0 / narrow_width
    exponent = 2.0 * peak * wide_width / 1.0 - 1.0
    c = DerivedCoefficients(
        narrow_width=narrow_width,
        wide_width=wide_width,
        tail_floor=0.0,
        amplitude=peak,
        exponent=exponent,
        peak=peak,
        wide_side="upper" if span_hi >= span_lo else "lower",
    )
    arr, scalar = _as_array(x)
    return _maybe_scalar(_pdf_soft_values(p, c, arr), scalar)


def _cdf_soft_values(p: SoftTriangleParams, c: DerivedCoefficients, x: np.ndarray) -> np.ndarray:
    low, median, high = p.low, p.median, p.high
    out = np.zeros_like(x)
    out[x >= high] = 1.0
    wide_mass_rate = c.amplitude * c.wide_width / (c.exponent + 1.0)
    if c.wide_side == "upper":
        narrow = (x > low) & (x <= median)
        wide = (x > median) & (x < high)
        ramp = (x[narrow] - low) / c.narrow_width
        out[narrow] = 0.5 * ramp * ramp
        u = (high - x[wide]) / c.wide_width
        out[wide] = (
            0.5
            + c.tail_floor * (x[wide] - median)
            + wide_mass_rate * (1.0 - u ** (c.exponent + 1.0))
        )
    else:
        wide = (x > low) & (x < median)
        narrow = (x >= median) & (x < high)
        u = (x[wide] - low) / c.wide_width
        out[wide] = c.tail_floor * (x[wide] - low) + wide_mass_rate * u ** (c.exponent + 1.0)
        ramp = (high - x[narrow]) / c.narrow_width
        out[narrow] = 1.0 - 0.5 * ramp * ramp
    return np.clip(out, 0.0, 1.0)


def cdf_soft(p: SoftTriangleParams, x):
    """Closed-form piecewise CDF; hits 0.5 exactly at the median."""
    arr, scalar = _as_array(x)
    values = _cdf_soft_values(p, derive_coefficients(p), arr)
    return _maybe_scalar(values, scalar)


def quantile_soft(p: SoftTriangleParams, q):
    """Invert the CDF.

    The narrow side inverts analytically (square root); the wide side is
    solved by bracketed bisection between the median and the wide extreme,
    to a bracket width of 1e-12.
    """
    arr, scalar = _as_array(q)
    if np.any(~np.isfinite(arr)) or np.any((arr < 0.0) | (arr > 1.0)):
        raise QOutOfRange("quantile arguments must lie in [0, 1]")
    c = derive_coefficients(p)
    low, median, high = p.low, p.median, p.high
    out = np.empty_like(arr)
    if c.wide_side == "upper":
        lower_half = arr < 0.5
        out[lower_half] = low + c.narrow_width * np.sqrt(2.0 * arr[lower_half])
        solve = (arr > 0.5) & (arr < 1.0)
        out[solve] = _bisect_quantile(p, c, arr[solve], median, high)
    else:
        upper_half = arr > 0.5
        out[upper_half] = high - c.narrow_width * np.sqrt(2.0 * (1.0 - arr[upper_half]))
        solve = (arr < 0.5) & (arr > 0.0)
        out[solve] = _bisect_quantile(p, c, arr[solve], low, median)
    out[arr == 0.0] = low
    out[arr == 0.5] = median
    out[arr == 1.0] = high
    return _maybe_scalar(out, scalar)


def _bisect_quantile(
    p: SoftTriangleParams,
    c: DerivedCoefficients,
    q: np.ndarray,
    bracket_lo: float,
    bracket_hi: float,
) -> np.ndarray:
    lo = np.full_like(q, bracket_lo)
    hi = np.full_like(q, bracket_hi)
    for _ in range(_BISECT_MAX_ITER):
        mid = 0.5 * (lo + hi)
        below = _cdf_soft_values(p, c, mid) < q
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if lo.size == 0 or np.max(hi - lo) <= _BISECT_WIDTH:
            break
    return 0.5 * (lo + hi)


def sample_soft(p: SoftTriangleParams, seed: int, count: int) -> np.ndarray:
    """Inverse-transform samples, deterministic for a fixed seed."""
    if count < 1:
        raise BadCount(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(seed)
    return np.asarray(quantile_soft(p, rng.random(count)))


@dataclass(frozen=True)
class TriangularParams:
    """Classic three-point triangle: peak at the mode, zero at both extremes."""

    low: float
    mode: float
    high: float

    def __post_init__(self):
        object.__setattr__(self, "low", float(self.low))
        object.__setattr__(self, "mode", float(self.mode))
        object.__setattr__(self, "high", float(self.high))
        _require_finite(low=self.low, mode=self.mode, high=self.high)
        if not (self.low <= self.mode <= self.high and self.low < self.high):
            raise OrderViolation(
                f"need low <= mode <= high with low < high, got "
                f"({self.low}, {self.mode}, {self.high})"
            )


def pdf_triangular(t: TriangularParams, x):
    """Standard triangular density with peak 2/(high-low) at the mode."""
    arr, scalar = _as_array(x)
    out = np.zeros_like(arr)
    peak = 2.0 / (t.high - t.low)
    if t.mode > t.low:
        rising = (arr >= t.low) & (arr <= t.mode)
        out[rising] = peak * (arr[rising] - t.low) / (t.mode - t.low)
    if t.mode < t.high:
        past_mode = arr > t.mode if t.mode > t.low else arr >= t.mode
        falling = past_mode & (arr <= t.high)
        out[falling] = peak * (t.high - arr[falling]) / (t.high - t.mode)
    return _maybe_scalar(out, scalar)


def cdf_triangular(t: TriangularParams, x):
    """Piecewise-quadratic triangular CDF; equals (mode-low)/(high-low) at the mode."""
    arr, scalar = _as_array(x)
    out = np.zeros_like(arr)
    span = t.high - t.low
    out[arr >= t.high] = 1.0
    if t.mode > t.low:
        rising = (arr > t.low) & (arr <= t.mode)
        d = arr[rising] - t.low
        out[rising] = d * d / (span * (t.mode - t.low))
    if t.mode < t.high:
        past_mode = arr > t.mode if t.mode > t.low else arr > t.low
        falling = past_mode & (arr < t.high)
        d = t.high - arr[falling]
        out[falling] = 1.0 - d * d / (span * (t.high - t.mode))
    return _maybe_scalar(np.clip(out, 0.0, 1.0), scalar)


@dataclass(frozen=True)
class BetaParams:
    """Shape parameters of a beta density on (0, 1); evaluation-only baseline."""

    a: float
    b: float

    def __post_init__(self):
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise InvalidDistribution(f"beta shapes must be finite, got ({self.a}, {self.b})")
        if self.a <= 0.0 or self.b <= 0.0:
            raise InvalidDistribution(f"beta shapes must be positive, got ({self.a}, {self.b})")


def pdf_beta(bp: BetaParams, x):
    """Beta density, normalized via log-gamma for stability.

    Endpoints return the finite one-sided limit when it exists (0, or the
    opposite shape when the matching exponent is zero).  When a shape is
    below 1 the corresponding endpoint diverges, so any x outside (0, 1)
    raises XOutOfRange.
    """
    arr, scalar = _as_array(x)
    diverges = bp.a < 1.0 or bp.b < 1.0
    inside = (arr > 0.0) & (arr < 1.0)
    if diverges and not np.all(inside):
        raise XOutOfRange("x must lie strictly inside (0, 1) when a < 1 or b < 1")
    out = np.zeros_like(arr)
    log_norm = special.betaln(bp.a, bp.b)
    xin = arr[inside]
    out[inside] = np.exp(
        (bp.a - 1.0) * np.log(xin) + (bp.b - 1.0) * np.log1p(-xin) - log_norm
    )
    if bp.a == 1.0:
        out[arr == 0.0] = bp.b
    if bp.b == 1.0:
        out[arr == 1.0] = bp.a
    return _maybe_scalar(out, scalar)


@dataclass(frozen=True, eq=False)
class GriddedDensity:
    """Density samples on a uniform grid, renormalized to unit trapezoid mass.

    The common numeric currency for pooling and product computations.  Values
    are stored read-only; construct a new instance to change anything.
    """

    support_lo: float
    support_hi: float
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "support_lo", float(self.support_lo))
        object.__setattr__(self, "support_hi", float(self.support_hi))
        _require_finite(support_lo=self.support_lo, support_hi=self.support_hi)
        if not self.support_lo < self.support_hi:
            raise ValueError(
                f"need support_lo < support_hi, got [{self.support_lo}, {self.support_hi}]"
            )
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size < 3:
            raise ValueError("values must be a 1-D sequence of at least 3 samples")
        if not np.all(np.isfinite(values)):
            raise ValueError("density samples must be finite")
        if np.any(values < 0.0):
            raise ValueError("density samples must be non-negative")
        mass = np.trapezoid(values, dx=self._step(values.size))
        if not math.isfinite(mass) or mass <= 0.0:
            raise ValueError(f"cannot renormalize grid with mass {mass}")
        values = values / mass
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def _step(self, n: Optional[int] = None) -> float:
        return (self.support_hi - self.support_lo) / ((n or self.values.size) - 1)

    @property
    def n_points(self) -> int:
        return self.values.size

    @property
    def step(self) -> float:
        return self._step()

    def x_grid(self) -> np.ndarray:
        return np.linspace(self.support_lo, self.support_hi, self.values.size)

    def mass(self) -> float:
        return float(np.trapezoid(self.values, dx=self.step))


Distribution = Union[SoftTriangleParams, TriangularParams, BetaParams]


def _natural_support(dist: Distribution) -> Tuple[float, float]:
    if isinstance(dist, SoftTriangleParams):
        return dist.low, dist.high
    if isinstance(dist, TriangularParams):
        return dist.low, dist.high
    if isinstance(dist, BetaParams):
        return 0.0, 1.0
    raise TypeError(f"not a distribution: {dist!r}")


def _pdf_of(dist: Distribution, x):
    if isinstance(dist, SoftTriangleParams):
        return pdf_soft(dist, x)
    if isinstance(dist, TriangularParams):
        return pdf_triangular(dist, x)
    if isinstance(dist, BetaParams):
        return pdf_beta(dist, x)
    raise TypeError(f"not a distribution: {dist!r}")


def to_grid(
    dist: Distribution,
    n_points: int = DEFAULT_GRID_POINTS,
    support_override: Optional[Sequence[float]] = None,
) -> GriddedDensity:
    """Sample a distribution's density on a uniform grid and renormalize.

    The grid spans the natural support unless support_override widens or
    narrows it (e.g. [0, 1] for probability factors); the density is zero
    outside its own support either way.
    """
    if n_points < MIN_GRID_POINTS:
        raise GridTooCoarse(f"n_points must be >= {MIN_GRID_POINTS}, got {n_points}")
    if support_override is not None:
        lo, hi = float(support_override[0]), float(support_override[1])
        _require_finite(support_lo=lo, support_hi=hi)
        if not lo < hi:
            raise ValueError(f"support override must satisfy lo < hi, got [{lo}, {hi}]")
    else:
        lo, hi = _natural_support(dist)
    xs = np.linspace(lo, hi, n_points)
    return GriddedDensity(lo, hi, _pdf_of(dist, xs))


def pdf_curve(p: SoftTriangleParams, n_points: int) -> Tuple[np.ndarray, np.ndarray]:
    """Raw density samples for plotting, with the median always on the grid.

    Uniform sampling almost never lands on the median, so the rendered curve
    would miss the true peak; instead each side gets its own uniform grid and
    the two share the median point.  Returns (x, density) of length n_points.
    """
    if n_points < 5:
        raise GridTooCoarse(f"need at least 5 points for a curve, got {n_points}")
    frac = (p.median - p.low) / (p.high - p.low)
    k = int(round(n_points * frac))
    k = max(2, min(n_points - 2, k))
    xs = np.concatenate(
        [
            np.linspace(p.low, p.median, k),
            np.linspace(p.median, p.high, n_points - k + 1)[1:],
        ]
    )
    return xs, np.asarray(pdf_soft(p, xs))
