"""Command-line entry point; parses arguments and dispatches to the service
layer or the headless match runner."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .arena import MapInvalidError, MapParseError
from .events import parse_jsonl, rebuild_report
from .match import ConfigError, MatchConfig, run_match


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qsmodels")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a duel match (headless or served)")
    run.add_argument("--map", required=True, help="map file path")
    run.add_argument("--seed", type=int, default=0)
    run.add_argument("--solver", choices=("oracle", "external"), default="oracle")
    run.add_argument(
        "--enemy", choices=("patrol", "aggressive", "random", "human"), default="patrol"
    )
    run.add_argument("--horizon-max", type=int, default=8)
    run.add_argument("--tick-ms", type=int, default=100)
    mode = run.add_mutually_exclusive_group()
    mode.add_argument("--fast", action="store_true", help="simulated time (default)")
    mode.add_argument("--realtime", action="store_true", help="wall-clock pacing")
    run.add_argument("--ticks", type=int, default=600, help="maximum duration in ticks")
    run.add_argument("--serve", metavar="HOST:PORT", help="expose the live duel service")
    run.add_argument("--log", metavar="PATH", help="write the event log here")

    report = sub.add_parser("report", help="rebuild a match report from an event log")
    report.add_argument("--log", required=True, metavar="PATH")
    report.add_argument("--outcome", default="timeout")
    report.add_argument("--ticks", type=int, default=0)
    return parser


def _config_from_args(args: argparse.Namespace) -> MatchConfig:
    time_mode = "realtime" if (args.realtime or args.enemy == "human" or args.serve) else "fast"
    return MatchConfig(
        map_path=args.map,
        seed=args.seed,
        tick_period_ms=args.tick_ms,
        horizon_max=args.horizon_max,
        solver=args.solver,
        enemy=args.enemy,
        time_mode=time_mode,
        duration_ticks=args.ticks,
        serve_address=args.serve,
        log_path=args.log,
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "report":
            records = parse_jsonl(Path(args.log).read_text())
            report = rebuild_report(records, outcome=args.outcome, ticks=args.ticks)
            print(json.dumps(report.as_dict(), indent=2))
            return 0
        config = _config_from_args(args)
        if config.serve_address:
            from .service import serve_duel

            serve_duel(config)  # runs until terminated
            return 0
        report = run_match(config)
        print(json.dumps(report.as_dict(), indent=2))
        return 0
    except (ConfigError, MapParseError, MapInvalidError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
