"""Command-line front end: evaluate, export grids, pool panels, multiply risks, serve.

Exit codes: 0 on success, 2 for usage or validation problems, 1 for anything
unexpected.  All numeric output uses 12 significant digits so runs are
byte-stable.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import List, Optional

from .aggregation import aggregate, grid_to_csv
from .distributions import cdf_soft, pdf_soft, quantile_soft, validate_params
from .errors import ElicitationError, EmptyPanel
from .jsonio import estimate_from_json, factor_to_grid
from .risk_product import RiskSpec, product_csv, risk_triple

__all__ = ["main", "build_parser"]


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="softrisk",
        description="Soft-triangle elicitation, pooling and risk-product toolkit.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate pdf/cdf at a point or invert a quantile")
    p_eval.add_argument("--low", type=float, required=True)
    p_eval.add_argument("--median", type=float, required=True)
    p_eval.add_argument("--high", type=float, required=True)
    p_eval.add_argument("--phi", type=float, required=True)
    which = p_eval.add_mutually_exclusive_group(required=True)
    which.add_argument("--x", type=float, help="evaluation point")
    which.add_argument("--q", type=float, help="quantile level in [0, 1]")

    p_grid = sub.add_parser("grid", help="export a density grid as x,density CSV")
    p_grid.add_argument("--params-file", required=True, help="JSON distribution spec")
    p_grid.add_argument("--n", type=int, default=1001)
    p_grid.add_argument("--out", required=True)

    p_agg = sub.add_parser("aggregate", help="pool a panel of expert estimates")
    p_agg.add_argument("--panel-file", required=True, help="JSON array of estimates")
    p_agg.add_argument("--weighted", action="store_true")
    p_agg.add_argument("--n", type=int, default=1001)
    p_agg.add_argument("--out", required=True)

    p_risk = sub.add_parser("risk", help="compute risk = consequences x vulnerability x threat")
    p_risk.add_argument("--c", required=True, help="consequences factor spec (JSON file)")
    p_risk.add_argument("--v", required=True, help="vulnerability factor spec (JSON file)")
    p_risk.add_argument("--t", required=True, help="threat factor spec (JSON file)")
    p_risk.add_argument("--n", type=int, default=2001)
    p_risk.add_argument("--out", required=True)

    p_serve = sub.add_parser("serve", help="run the HTTP service until interrupted")
    p_serve.add_argument("--port", type=int, default=int(os.environ.get("SOFTRISK_PORT", "8080")))
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--data-dir", default=os.environ.get("SOFTRISK_DATA_DIR", "data"))
    p_serve.add_argument("--assets-dir", default=os.environ.get("SOFTRISK_ASSETS_DIR"))
    return parser


def _read_json(path: str):
    return json.loads(Path(path).read_text(encoding="utf-8"))


def _cmd_eval(args) -> int:
    params = validate_params(args.low, args.median, args.high, args.phi)
    if args.x is not None:
        print(f"pdf {_fmt(pdf_soft(params, args.x))}")
        print(f"cdf {_fmt(cdf_soft(params, args.x))}")
    else:
        print(f"quantile {_fmt(quantile_soft(params, args.q))}")
    return 0


def _cmd_grid(args) -> int:
    grid = factor_to_grid(_read_json(args.params_file), args.n)
    Path(args.out).write_text(grid_to_csv(grid), encoding="utf-8")
    return 0


def _cmd_aggregate(args) -> int:
    panel = _read_json(args.panel_file)
    if not isinstance(panel, list):
        raise EmptyPanel("panel file must contain a JSON array of estimates")
    estimates = [estimate_from_json(entry) for entry in panel]
    pooled = aggregate(estimates, weighted=args.weighted, n_points=args.n)
    Path(args.out).write_text(grid_to_csv(pooled.grid), encoding="utf-8")
    print(f"modes {len(pooled.mode_locations)}")
    for mode in pooled.mode_locations:
        print(f"mode {_fmt(mode)}")
    return 0


def _cmd_risk(args) -> int:
    spec = RiskSpec(
        consequences=factor_to_grid(_read_json(args.c), args.n),
        vulnerability=factor_to_grid(_read_json(args.v), args.n),
        threat=factor_to_grid(_read_json(args.t), args.n),
    )
    result = risk_triple(spec, n_points=args.n)
    Path(args.out).write_text(product_csv(result), encoding="utf-8")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .http_service import create_app

    app = create_app(args.data_dir, assets_dir=args.assets_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "eval": _cmd_eval,
    "grid": _cmd_grid,
    "aggregate": _cmd_aggregate,
    "risk": _cmd_risk,
    "serve": _cmd_serve,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ElicitationError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
