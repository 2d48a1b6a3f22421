"""Command-line entry point: ``heronheinz check|sweep|zou|version``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

from .. import __version__
from ..errors import ConfigError, HeronHeinzError
from ..means import MeanTriple
from ..functionals.zou import ZOU_NU, ZOU_POINTS, zou_counterexample
from ..norms import NormKind
from .config import DEFAULT_SEED, SuiteConfig, load_config
from .suites import CheckReport, run_suite
from .sweep import FUNCTIONALS, emit_sweep, sweep_values

EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2


def _floats(text: str) -> list[float]:
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def _ints(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="heronheinz", description="Numerical checks of Heron/Heinz norm inequalities.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="run inequality suites")
    c.add_argument("--config", help="JSON file with SuiteConfig fields")
    c.add_argument("--suite", action="append", help="suite name (repeatable; default all)")
    c.add_argument("--dims", type=_ints, help="comma-separated dimensions, e.g. 2,3,4,6")
    c.add_argument("--trials", type=int)
    c.add_argument("--seed", type=int)
    c.add_argument("--norm", action="append", help="operator, trace, schatten:P or kyfan:K (repeatable)")
    c.add_argument("--out", help="write the report here instead of stdout")
    c.add_argument("--format", choices=("json", "csv"), default="json")

    s = sub.add_parser("sweep", help="tabulate F, G, K or phi over a grid")
    s.add_argument("--functional", choices=FUNCTIONALS, required=True)
    s.add_argument("--grid", type=_floats, required=True, help="comma-separated parameter values")
    s.add_argument("--dim", type=int, default=3)
    s.add_argument("--seed", type=int, default=DEFAULT_SEED)
    s.add_argument("--norm", default="operator")
    s.add_argument("--r", type=float, default=1.0, help="exponent for phi")
    s.add_argument("--out", help="CSV path (default stdout)")
    s.add_argument("--format", choices=("json", "csv"), default="csv")

    sub.add_parser("zou", help="reproduce the 3x3 counterexample kernel")
    sub.add_parser("version", help="print the library version")
    return p


def _config_from_args(args) -> SuiteConfig:
    config = load_config(args.config) if args.config else SuiteConfig()
    changes = {}
    if args.suite:
        changes["suites"] = tuple(args.suite)
    if args.dims:
        changes["dims"] = tuple(args.dims)
    if args.trials is not None:
        changes["trials"] = args.trials
    if args.seed is not None:
        changes["seed"] = args.seed
    if args.norm:
        changes["norms"] = tuple(args.norm)
    return config.replace(**changes) if changes else config


def _clean(v):
    # JSON has no infinities; an empty suite reports null
    if isinstance(v, float) and not math.isfinite(v):
        return None
    if isinstance(v, dict):
        return {k: _clean(x) for k, x in v.items()}
    if isinstance(v, list):
        return [_clean(x) for x in v]
    return v


def report_json(report: CheckReport, include_wall_time: bool = True) -> str:
    return json.dumps(_clean(report.to_dict(include_wall_time)), indent=2) + "\n"


def report_csv(report: CheckReport) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["suite", "total", "passed", "failed", "worst_margin", "worst_relative_margin", "status"])
    for s in report.suites:
        w.writerow([s.name, s.total, s.passed, s.failed, format(s.worst_margin, ".17g"),
                    format(s.worst_relative_margin, ".17g"), s.status])
    return buf.getvalue()


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def cmd_check(args) -> int:
    report = run_suite(_config_from_args(args))
    text = report_json(report) if args.format == "json" else report_csv(report)
    _write(text, args.out)
    if args.out:
        for s in report.suites:
            print(f"{s.name:28s} {s.passed:>9d}/{s.total:<9d} worst margin {s.worst_margin:+.3e}  {s.status}")
    if not report.all_passed:
        print(f"{sum(s.failed for s in report.suites)} inequality check(s) failed", file=sys.stderr)
        return EXIT_FAILED
    return EXIT_OK


def cmd_sweep(args) -> int:
    k = NormKind.parse(args.norm)
    if args.format == "csv":
        emit_sweep(args.seed, k, args.functional, args.grid, args.out or sys.stdout, dim=args.dim, r=args.r)
    else:
        values = sweep_values(MeanTriple.random(args.dim, args.seed), k, args.functional, args.grid, args.r)
        rows = [{"param": x, "value": float(v)} for x, v in zip(args.grid, values)]
        _write(json.dumps(rows, indent=2) + "\n", args.out)
    return EXIT_OK


def cmd_zou(args) -> int:
    Z, det, psd = zou_counterexample()
    print(f"nu = {ZOU_NU}, x = {ZOU_POINTS}")
    for row in Z:
        print("  ".join(f"{v:.6f}" for v in row))
    print(f"determinant = {det:.10f}")
    print(f"psd = {str(psd).lower()}")
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "version":
        print(__version__)
        return EXIT_OK
    try:
        return {"check": cmd_check, "sweep": cmd_sweep, "zou": cmd_zou}[args.command](args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (HeronHeinzError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
