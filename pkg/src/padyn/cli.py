"""Command-line front end.

    padyn analyze    --config map.json [--format json] [--seed N] [--out PATH]
    padyn ergodicity --config map.json [--max-level N]
    padyn orbit      --config map.json --start 3/2 --steps 10
    padyn verify     --config map.json [--seed N]

Exit codes: 0 ok, 1 a verify suite failed, 2 bad config, 3 a closed-form
verdict disagrees with the finite-level oracle.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from pathlib import Path

from padyn import report
from padyn.config import ConfigError, load_config
from padyn.padic import PadicNumber, parse_rational
from padyn.verify import run_all

EXIT_OK = 0
EXIT_SUITE_FAILED = 1
EXIT_CONFIG = 2
EXIT_DISAGREEMENT = 3


def _load(args):
    cfg = load_config(args.config)
    if args.max_level is not None:
        if args.max_level < 2:
            raise ConfigError("--max-level must be at least 2")
        cfg = replace(cfg, max_level=args.max_level)
    if args.orbit_cap is not None:
        if args.orbit_cap < 1:
            raise ConfigError("--orbit-cap must be positive")
        cfg = replace(cfg, orbit_cap=args.orbit_cap)
    seed = args.seed if args.seed is not None else cfg.seed
    if seed is None:
        if args.format == "json":
            raise ConfigError("a seed is required for json output (config 'seed' or --seed)")
        seed = 0
    return cfg, seed


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    cfg, seed = _load(args)
    rep = report.analysis_report(cfg, seed)
    _emit(args, report.dumps(rep) if args.format == "json" else report.render_analysis(rep))
    return EXIT_DISAGREEMENT if rep["disagreement"] else EXIT_OK


def cmd_ergodicity(args) -> int:
    cfg, _ = _load(args)
    rep = report.ergodicity_report(cfg)
    _emit(args, report.dumps(rep) if args.format == "json" else report.render_ergodicity(rep))
    return EXIT_DISAGREEMENT if rep["disagreement"] else EXIT_OK


def cmd_orbit(args) -> int:
    cfg, _ = _load(args)
    try:
        start = PadicNumber(parse_rational(args.start), cfg.params.p)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"--start: {exc}") from None
    if not 0 <= args.steps <= cfg.orbit_cap:
        raise ConfigError(f"--steps must lie in [0, {cfg.orbit_cap}]")
    rep = report.orbit_rows(cfg, start, args.steps)
    _emit(args, report.dumps(rep) if args.format == "json" else report.render_orbit(rep))
    return EXIT_OK


def cmd_verify(args) -> int:
    cfg, seed = _load(args)
    suites = run_all(cfg, seed)
    rep = {
        "config": {**cfg.to_json(), "seed": seed},
        "suites": [s.to_json() for s in suites],
        "passed": all(s.passed for s in suites),
    }
    _emit(args, report.dumps(rep) if args.format == "json" else report.render_verify(rep))
    return EXIT_OK if rep["passed"] else EXIT_SUITE_FAILED


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", required=True, help="JSON config file")
    common.add_argument("--out", help="write the report here instead of stdout")
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int)
    common.add_argument("--max-level", type=int, dest="max_level")
    common.add_argument("--orbit-cap", type=int, dest="orbit_cap")

    parser = argparse.ArgumentParser(
        prog="padyn", description="Dynamics of (x^2+ax+b)/(x+c) on invariant p-adic spheres."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("analyze", parents=[common], help="full per-radius analysis").set_defaults(
        func=cmd_analyze
    )
    sub.add_parser("ergodicity", parents=[common], help="ergodicity verdicts only").set_defaults(
        func=cmd_ergodicity
    )
    orb = sub.add_parser("orbit", parents=[common], help="orbit table with distances to x0")
    orb.add_argument("--start", required=True, help="starting point as 'num/den'")
    orb.add_argument("--steps", type=int, default=10)
    orb.set_defaults(func=cmd_orbit)
    sub.add_parser("verify", parents=[common], help="run the property suites").set_defaults(
        func=cmd_verify
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
