"""JSON schemas shared by the session store, the CLI and the HTTP service.

One schema everywhere: soft-triangle params serialize as
{"low", "median", "high", "phi"}, estimates as
{"expert_id", "params", "weight", "variant_choice"}, and distribution specs
as a tagged object whose "kind" selects soft (default), triangular, beta or
a raw uniform grid.
"""

from __future__ import annotations

import json
from typing import Any, Dict, List, Mapping, Optional, Tuple

import numpy as np

from .aggregation import ExpertEstimate
from .distributions import (
    BetaParams,
    Distribution,
    GriddedDensity,
    SoftTriangleParams,
    TriangularParams,
    to_grid,
    validate_params,
)
from .errors import SchemaError

__all__ = [
    "canonical_json",
    "params_to_json",
    "params_from_json",
    "estimate_to_json",
    "estimate_from_json",
    "distribution_from_json",
    "factor_to_grid",
    "grid_to_json",
]


def canonical_json(document: Any) -> str:
    """Serialize with sorted keys and a trailing newline; byte-stable."""
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def _require_mapping(obj: Any, what: str) -> Mapping:
    if not isinstance(obj, Mapping):
        raise SchemaError(f"{what} must be a JSON object, got {type(obj).__name__}")
    return obj


def _number(obj: Mapping, key: str, what: str, default=None) -> float:
    if key not in obj:
        if default is not None:
            return default
        raise SchemaError(f"{what} is missing required field {key!r}")
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{what} field {key!r} must be a number, got {value!r}")
    return float(value)


def params_to_json(p: SoftTriangleParams) -> Dict[str, float]:
    return {"low": p.low, "median": p.median, "high": p.high, "phi": p.phi}


def params_from_json(obj: Any) -> SoftTriangleParams:
    obj = _require_mapping(obj, "params")
    return validate_params(
        _number(obj, "low", "params"),
        _number(obj, "median", "params"),
        _number(obj, "high", "params"),
        _number(obj, "phi", "params"),
    )


def estimate_to_json(e: ExpertEstimate) -> Dict[str, Any]:
    return {
        "expert_id": e.expert_id,
        "params": params_to_json(e.params),
        "weight": e.weight,
        "variant_choice": e.variant_choice,
    }


def estimate_from_json(obj: Any) -> ExpertEstimate:
    obj = _require_mapping(obj, "estimate")
    if "expert_id" not in obj or not isinstance(obj["expert_id"], str):
        raise SchemaError("estimate requires a string 'expert_id'")
    if "params" not in obj:
        raise SchemaError("estimate is missing required field 'params'")
    variant = obj.get("variant_choice", "wide")
    if variant not in ("sharp", "wide"):
        raise SchemaError(f"variant_choice must be 'sharp' or 'wide', got {variant!r}")
    return ExpertEstimate(
        expert_id=obj["expert_id"],
        params=params_from_json(obj["params"]),
        weight=_number(obj, "weight", "estimate", default=1.0),
        variant_choice=variant,
    )


def distribution_from_json(obj: Any) -> Distribution:
    """Parse a tagged distribution spec; a bare params object means soft."""
    obj = _require_mapping(obj, "distribution")
    kind = obj.get("kind", "soft")
    if kind == "soft":
        return params_from_json(obj)
    if kind == "triangular":
        return TriangularParams(
            _number(obj, "low", "triangular"),
            _number(obj, "mode", "triangular"),
            _number(obj, "high", "triangular"),
        )
    if kind == "beta":
        return BetaParams(_number(obj, "a", "beta"), _number(obj, "b", "beta"))
    raise SchemaError(f"unknown distribution kind {kind!r}")


def _support_pair(obj: Mapping, key: str) -> Optional[Tuple[float, float]]:
    if key not in obj or obj[key] is None:
        return None
    pair = obj[key]
    if not isinstance(pair, (list, tuple)) or len(pair) != 2:
        raise SchemaError(f"{key!r} must be a [lo, hi] pair")
    return float(pair[0]), float(pair[1])


def factor_to_grid(obj: Any, n_points: int) -> GriddedDensity:
    """Turn a factor spec into a gridded density.

    Accepts any tagged distribution (gridded over its support, or over an
    explicit "support" override), or kind "grid" carrying precomputed
    {"x": [...], "density": [...]} arrays on a uniform grid.
    """
    obj = _require_mapping(obj, "factor")
    if obj.get("kind") == "grid":
        xs = np.asarray(obj.get("x", ()), dtype=float)
        density = np.asarray(obj.get("density", ()), dtype=float)
        if xs.ndim != 1 or xs.size < 3 or xs.shape != density.shape:
            raise SchemaError("grid factor needs matching 1-D 'x' and 'density' arrays")
        steps = np.diff(xs)
        if np.any(steps <= 0) or not np.allclose(steps, steps[0], rtol=1e-9):
            raise SchemaError("grid factor 'x' must be uniform and increasing")
        return GriddedDensity(float(xs[0]), float(xs[-1]), density)
    dist = distribution_from_json(obj)
    return to_grid(dist, n_points, support_override=_support_pair(obj, "support"))


def grid_to_json(grid: GriddedDensity) -> Dict[str, List[float]]:
    return {"x": grid.x_grid().tolist(), "density": grid.values.tolist()}
