"""Command line entry point ``qcausal``."""

from __future__ import annotations

import argparse
import sys

from .errors import ConfigError
from .scenario import EXIT_ERROR, SweepSpec, load_config, run, sweep
from .verify import run_checks


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qcausal",
        description="Interference of non-orthogonal states and classical-causality bounds.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="analyse one scenario")
    p_run.add_argument("--config", required=True)
    p_run.add_argument("--report", default="report.json")
    p_run.add_argument("--pattern", default="pattern.csv")

    p_sweep = sub.add_parser("sweep", help="analyse a scenario across one parameter")
    p_sweep.add_argument("--config", required=True)
    p_sweep.add_argument("--param", required=True)
    p_sweep.add_argument("--from", dest="start", type=float, required=True)
    p_sweep.add_argument("--to", dest="stop", type=float, required=True)
    p_sweep.add_argument("--steps", type=int, required=True)
    p_sweep.add_argument("--log", action="store_true", help="geometric spacing")
    p_sweep.add_argument("--out", required=True)
    p_sweep.add_argument("--workers", type=int, default=1)

    sub.add_parser("verify", help="run the built-in invariant checks")
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)

    if args.command == "verify":
        results = run_checks()
        for c in results:
            print(f"{'PASS' if c.passed else 'FAIL'}  {c.name}: {c.detail}")
        return 0 if all(c.passed for c in results) else 1

    try:
        cfg = load_config(args.config)
        if args.command == "run":
            return run(cfg, args.report, args.pattern, stderr=sys.stderr)
        spec = SweepSpec(args.param, args.start, args.stop, args.steps, args.log)
        return sweep(cfg, spec, args.out, workers=args.workers)
    except ConfigError as err:
        print(f"qcausal: config failed: {err}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as err:
        print(f"qcausal: output failed: {err}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
