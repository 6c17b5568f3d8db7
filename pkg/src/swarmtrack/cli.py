"""Command-line front end.

Exit codes: 0 ok, 1 table mismatch, 2 usage or config error, 3 infeasible
fleet, 4 I/O failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

import numpy as np

from swarmtrack import report
from swarmtrack.engine import run
from swarmtrack.geometry import Rect
from swarmtrack.planner import InfeasibleError, SensorSpec, sweep_area, sweep_radius
from swarmtrack.scenario import ScenarioError, load_scenario

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INFEASIBLE, EXIT_IO = 0, 1, 2, 3, 4

log = logging.getLogger("swarmtrack")


class UsageError(Exception):
    pass


def _float_list(text: str) -> list[float]:
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated number list: {text!r}") from None


def _spec(r: float, R: float) -> SensorSpec:
    try:
        return SensorSpec(r, R)
    except ValueError as e:
        raise UsageError(str(e)) from None


def cmd_plan(args) -> int:
    if args.area is None and (args.l is None or args.b is None):
        raise UsageError("give --area or both --l and --b")
    try:
        field = Rect(args.l, args.b) if args.area is None else Rect.square(args.area)
    except ValueError as e:
        raise UsageError(str(e)) from None
    _spec(args.r, args.R)
    row = report.table_row(field.area, args.r, args.R, field)
    sys.stdout.write(report.table_csv([row]))
    return EXIT_OK


def cmd_table(args) -> int:
    expected = report.PUBLISHED_TABLE
    if args.expected:
        try:
            expected = report.read_table_csv(Path(args.expected))
        except OSError as e:
            print(f"cannot read {args.expected}: {e}", file=sys.stderr)
            return EXIT_IO
        except (ValueError, KeyError) as e:
            raise UsageError(f"bad expected table: {e}") from None
    rows, diff = report.check_table(expected)
    sys.stdout.write(report.table_csv(rows))
    if diff:
        print(f"{len(diff)}/{len(rows)} rows differ:", file=sys.stderr)
        for line in diff:
            print("  " + line, file=sys.stderr)
        return EXIT_MISMATCH
    print(f"{len(rows)}/{len(rows)} rows match", file=sys.stderr)
    return EXIT_OK


def _area_values(args) -> list[float]:
    if args.areas:
        return args.areas
    if args.start is None or args.stop is None:
        raise UsageError("give --areas or --start/--stop")
    if args.num < 1 or args.stop < args.start:
        raise UsageError("empty area range")
    if args.log:
        return [float(x) for x in np.geomspace(args.start, args.stop, args.num)]
    return [float(x) for x in np.linspace(args.start, args.stop, args.num)]


def _radius_values(args) -> list[float]:
    if args.radii:
        return args.radii
    if args.r_step <= 0 or args.r_stop < args.r_start:
        raise UsageError("empty radius range")
    n = int(np.floor((args.r_stop - args.r_start) / args.r_step + 1e-9)) + 1
    return [args.r_start + i * args.r_step for i in range(n)]


def cmd_sweep(args) -> int:
    if args.mode == "area":
        values = _area_values(args)
        if not values:
            raise UsageError("empty area range")
        if min(values) <= 0:
            raise UsageError("areas must be positive")
        rows = sweep_area(_spec(args.r, args.R), values)
        xlabel = "area of the field"
    else:
        radii = _radius_values(args)
        if not radii:
            raise UsageError("empty radius range")
        if not args.area or args.area <= 0:
            raise UsageError("--area must be positive")
        rows = sweep_radius(args.area, [_spec(r, r + args.gap) for r in radii])
        xlabel = "radius of primary zone"
    try:
        Path(args.out).write_text(report.sweep_csv(rows), encoding="utf-8")
        if args.svg:
            report.sweep_svg(rows, Path(args.svg), xlabel, args.y, logx=getattr(args, "log", False))
    except OSError as e:
        print(f"write failed: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def cmd_simulate(args) -> int:
    try:
        config = load_scenario(Path(args.config), args.seed, args.workers)
    except OSError as e:
        print(f"cannot read config: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ScenarioError as e:
        print(f"bad config: {e}", file=sys.stderr)
        return EXIT_USAGE
    try:
        metrics, world = run(config)
    except InfeasibleError as e:
        p = e.plan
        if p is not None:
            print(f"n={p.n} k={p.k:.3f} case={p.case}", file=sys.stderr)
        print(f"infeasible: {e}", file=sys.stderr)
        return EXIT_INFEASIBLE
    out = Path(args.out)
    try:
        out.mkdir(parents=True, exist_ok=True)
        (out / "metrics.csv").write_text(report.metrics_csv(metrics), encoding="utf-8")
        (out / "events.csv").write_text(report.events_csv(world.events), encoding="utf-8")
    except OSError as e:
        print(f"write failed: {e}", file=sys.stderr)
        return EXIT_IO
    print(report.summary_line(metrics))
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="swarmtrack", description=__doc__.splitlines()[0], allow_abbrev=False)
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("plan", help="size a fleet and print one table row", allow_abbrev=False)
    sp.add_argument("--area", type=float)
    sp.add_argument("--l", type=float, help="field length (travel axis)")
    sp.add_argument("--b", type=float, help="field breadth")
    sp.add_argument("--r", type=float, required=True, help="primary radius")
    sp.add_argument("--R", type=float, required=True, help="secondary radius")
    sp.set_defaults(func=cmd_plan)

    st = sub.add_parser("table", help="reproduce and check the published sizing table", allow_abbrev=False)
    st.add_argument("--expected", help="CSV with the table header to check against instead")
    st.set_defaults(func=cmd_table)

    sw = sub.add_parser("sweep", help="K and n over an area or radius range", allow_abbrev=False)
    sw.add_argument("mode", choices=("area", "radius"))
    sw.add_argument("--out", required=True)
    sw.add_argument("--svg")
    sw.add_argument("--y", choices=("k", "n"), default="k")
    sw.add_argument("--r", type=float, default=2.0)
    sw.add_argument("--R", type=float, default=4.0)
    sw.add_argument("--areas", type=_float_list)
    sw.add_argument("--start", type=float)
    sw.add_argument("--stop", type=float)
    sw.add_argument("--num", type=int, default=50)
    sw.add_argument("--log", action="store_true", help="geometric spacing")
    sw.add_argument("--area", type=float, default=1000.0)
    sw.add_argument("--radii", type=_float_list)
    sw.add_argument("--r-start", type=float, default=1.0)
    sw.add_argument("--r-stop", type=float, default=7.0)
    sw.add_argument("--r-step", type=float, default=1.0)
    sw.add_argument("--gap", type=float, default=2.0, help="R - r for radius sweeps")
    sw.set_defaults(func=cmd_sweep)

    sm = sub.add_parser("simulate", help="run a scenario file", allow_abbrev=False)
    sm.add_argument("--config", required=True)
    sm.add_argument("--out", required=True)
    sm.add_argument("--seed", type=int, help="overrides SWARMTRACK_SEED and the file")
    sm.add_argument("--workers", type=int, default=1)
    sm.set_defaults(func=cmd_simulate)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING)
        return args.func(args)
    except UsageError as e:
        print(f"swarmtrack: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
