"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 geometry/street error, 3 runtime
invariant violation.
"""

from __future__ import annotations

import argparse
import sys

from .generators import (
    CORRIDOR_OPENING,
    GenerationError,
    InstanceFamily,
    gen_corridor,
    gen_funnel,
)
from .geometry import GeometryError
from .harness import (
    default_family_seed,
    run_batch,
    run_one,
    write_csv,
)
from .navigate import NonTerminationError, StrategyConfig, run
from .sensor import InvariantViolationError
from .streets import StreetError, load_street, shortest_path
from .svgplot import render_svg

USAGE_ERROR, GEOMETRY_ERROR, INVARIANT_ERROR = 1, 2, 3


def _strategy_kind(name):
    return {"det": "deterministic", "rand": "randomized"}[name]


def _load(path):
    with open(path, "r", encoding="utf-8") as fh:
        return load_street(fh.read())


def _street_from_args(args):
    if args.street is not None:
        return _load(args.street), args.street
    if args.family == "corridor":
        off = args.offset if args.offset is not None else 17.0
        return gen_corridor(off), "corridor(offset=%g)" % off
    if args.family == "funnel":
        theta = args.angle if args.angle is not None else CORRIDOR_OPENING
        depth = args.depth if args.depth is not None else 10.0
        return gen_funnel(theta, depth), "funnel(theta=%g,depth=%g)" % (theta,
                                                                        depth)
    raise SystemExit("either a street file or --family is required")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="streetwalk",
        description="Simulate gap-sensor search strategies in street polygons.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_val = sub.add_parser("validate", help="validate a street file")
    p_val.add_argument("street")

    p_run = sub.add_parser("run", help="run one strategy on a street")
    p_run.add_argument("street", nargs="?", default=None,
                       help="street file (or use --family)")
    p_run.add_argument("--family", choices=("corridor", "funnel"))
    p_run.add_argument("--offset", type=float, default=None)
    p_run.add_argument("--angle", type=float, default=None)
    p_run.add_argument("--depth", type=float, default=None)
    p_run.add_argument("--strategy", choices=("det", "rand"), default="det")
    p_run.add_argument("--seed", type=int, default=0)
    p_run.add_argument("--base-step", type=float, default=None)
    p_run.add_argument("--svg", default=None, help="write the run as SVG")

    p_bench = sub.add_parser("bench", help="batch runs + ratio statistics")
    p_bench.add_argument("--family", choices=("corridor", "funnel",
                                              "two-pocket"), required=True)
    p_bench.add_argument("--trials", type=int, default=100)
    p_bench.add_argument("--strategy", choices=("det", "rand"), default="rand")
    p_bench.add_argument("--offset", type=float, default=None)
    p_bench.add_argument("--angle", type=float, default=CORRIDOR_OPENING)
    p_bench.add_argument("--depth", type=float, default=10.0)
    p_bench.add_argument("--seed", type=int, default=None)
    p_bench.add_argument("--base-step", type=float, default=None)
    p_bench.add_argument("--csv", default=None)

    p_render = sub.add_parser("render", help="render a street (and a run)")
    p_render.add_argument("street", nargs="?", default=None)
    p_render.add_argument("--family", choices=("corridor", "funnel"))
    p_render.add_argument("--offset", type=float, default=None)
    p_render.add_argument("--angle", type=float, default=None)
    p_render.add_argument("--depth", type=float, default=None)
    p_render.add_argument("--strategy", choices=("det", "rand"), default="det")
    p_render.add_argument("--seed", type=int, default=0)
    p_render.add_argument("--base-step", type=float, default=None)
    p_render.add_argument("--svg", required=True)
    return parser


def _cmd_validate(args):
    _load(args.street)
    print("ok: %s is a valid street" % args.street)
    return 0


def _cmd_run(args):
    street, name = _street_from_args(args)
    cfg = StrategyConfig(kind=_strategy_kind(args.strategy),
                         base_step=args.base_step, rng_seed=args.seed)
    geo = shortest_path(street)
    report = run_one(street, cfg, name, geo=geo.length)
    print("instance=%s strategy=%s seed=%d" % (name, cfg.kind, args.seed))
    print("path=%.6f geodesic=%.6f ratio=%.6f" % (report.path_len,
                                                  report.geo_len,
                                                  report.ratio))
    print("events: appear=%d disappear=%d split=%d merge=%d"
          % (report.events_appear, report.events_disappear,
             report.events_split, report.events_merge))
    if args.svg:
        traj = run(street, cfg)
        with open(args.svg, "w", encoding="utf-8") as fh:
            fh.write(render_svg(street, traj, geo))
        print("wrote %s" % args.svg)
    return 0


def _cmd_bench(args):
    seed = default_family_seed(0) if args.seed is None else args.seed
    family = InstanceFamily(kind=args.family, opening_angle=args.angle,
                            depth=args.depth,
                            target_offset=args.offset or 0.0,
                            count=1 if args.offset else 4, seed=seed)
    cfg = StrategyConfig(kind=_strategy_kind(args.strategy),
                         base_step=args.base_step, rng_seed=seed)
    reports, agg = run_batch(family, cfg, args.trials,
                             base_step=args.base_step)
    print("runs=%d mean_ratio=%.6f max_ratio=%.6f stddev=%.6f"
          % (agg.count, agg.mean_ratio, agg.max_ratio, agg.stddev_ratio))
    if args.csv:
        with open(args.csv, "w", encoding="utf-8") as fh:
            fh.write(write_csv(reports, family))
        print("wrote %s" % args.csv)
    return 0


def _cmd_render(args):
    street, _name = _street_from_args(args)
    cfg = StrategyConfig(kind=_strategy_kind(args.strategy),
                         base_step=args.base_step, rng_seed=args.seed)
    traj = run(street, cfg)
    geo = shortest_path(street)
    with open(args.svg, "w", encoding="utf-8") as fh:
        fh.write(render_svg(street, traj, geo))
    print("wrote %s" % args.svg)
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else USAGE_ERROR
    handlers = {"validate": _cmd_validate, "run": _cmd_run,
                "bench": _cmd_bench, "render": _cmd_render}
    try:
        return handlers[args.command](args)
    except (StreetError, GenerationError, GeometryError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return GEOMETRY_ERROR
    except (InvariantViolationError, NonTerminationError) as exc:
        print("invariant violation: %s" % exc, file=sys.stderr)
        return INVARIANT_ERROR
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
