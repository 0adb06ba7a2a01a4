"""Command-line experiment runner.

Exit codes: 0 on success, 1 for configuration problems, 2 when the
simulation loses the pendulum.
"""

import argparse
import sys

from fuzzyfusion.experiments import (
    ConfigError,
    build_config,
    load_config,
    run_experiment,
    run_sweep,
)
from fuzzyfusion.pendulum import FEEDBACK_MODES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fuzzyfusion",
        description="Closed-loop benchmark runs and robustness sweeps "
        "for the fuzzy two-sensor fusion pipeline.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run_p = sub.add_parser("run", help="one closed-loop run in a feedback mode")
    run_p.add_argument("--config", help="path to a key = value configuration file")
    run_p.add_argument("--mode", required=True, choices=FEEDBACK_MODES)
    run_p.add_argument("--seed", type=int, help="overrides the configured seed")
    run_p.add_argument("--out", required=True, help="output directory")

    sweep_p = sub.add_parser("sweep", help="grid of runs over one numeric parameter")
    sweep_p.add_argument("--config", help="path to a key = value configuration file")
    sweep_p.add_argument(
        "--axis",
        required=True,
        metavar="PATH=V1,V2,...",
        help="parameter path and comma-separated values, "
        "e.g. s2.time_constant=0.5,0.8,1.1",
    )
    sweep_p.add_argument(
        "--modes",
        required=True,
        help="comma-separated feedback modes, e.g. s2_only,average,fused",
    )
    sweep_p.add_argument("--seed", type=int, help="overrides the configured seed")
    sweep_p.add_argument("--out", required=True, help="output directory")
    return parser


def _parse_axis(spec: str):
    if "=" not in spec:
        raise ConfigError("--axis expects PATH=V1,V2,... " f"(got {spec!r})")
    path, _, raw_values = spec.partition("=")
    path = path.strip()
    try:
        values = [float(v) for v in raw_values.split(",") if v.strip()]
    except ValueError as err:
        raise ConfigError(f"--axis values must be numeric: {raw_values!r}") from err
    if not values:
        raise ConfigError("--axis needs at least one value")
    return path, values


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_config(args.config) if args.config else build_config()
        if args.command == "run":
            summary = run_experiment(cfg, args.mode, args.out, seed=args.seed)
            print(
                f"mode={summary['mode']} iae={summary['iae']} itae={summary['itae']} "
                f"peak_to_peak_tail={summary['peak_to_peak_tail']} "
                f"seed={summary['seed']} digest={summary['config_digest']} "
                f"status={summary['status']}"
            )
            if summary["status"] != "ok":
                print(
                    "simulation failed: pendulum fell; partial trajectory written",
                    file=sys.stderr,
                )
                return 2
            return 0
        axis, values = _parse_axis(args.axis)
        modes = [m.strip() for m in args.modes.split(",") if m.strip()]
        rows = run_sweep(cfg, axis, values, modes, args.out, seed=args.seed)
        fallen = sum(row["status"] != "ok" for row in rows)
        print(f"sweep rows={len(rows)} axis={axis} fallen_points={fallen}")
        return 0
    except ConfigError as err:
        print(f"configuration error: {err}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
