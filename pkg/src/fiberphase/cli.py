"""Command-line front end.

    fiberphase run <config.json>   [--out DIR] [--quiet]
    fiberphase sweep <config.json> [--out DIR] [--quiet]
    fiberphase check               [--quiet]

Exit codes: 0 success, 2 invalid configuration, 3 numerical failure,
4 I/O error.
"""
from __future__ import annotations

import argparse
import sys

from .scenario import NumericalError, ScenarioError, run_scenario, run_sweep, self_check

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3
EXIT_IO = 4


def _parser():
    parser = argparse.ArgumentParser(
        prog="fiberphase",
        description="Geometric-phase pipelines for photons in a noncoplanarly curved fiber",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run one scenario config and write result files")
    run.add_argument("config", help="JSON scenario file")
    run.add_argument("--out", help="output directory (overrides the config)")
    run.add_argument("--quiet", action="store_true", help="suppress progress output")

    sweep = sub.add_parser("sweep", help="run a scenario over a swept parameter")
    sweep.add_argument("config", help="JSON scenario file with a 'sweep' section")
    sweep.add_argument("--out", help="output directory (overrides the config)")
    sweep.add_argument("--quiet", action="store_true", help="suppress progress output")

    check = sub.add_parser("check", help="self-test the algebra and geometry invariants")
    check.add_argument("--quiet", action="store_true", help="suppress PASS/FAIL lines")
    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    try:
        if args.command == "run":
            run_scenario(args.config, args.out, args.quiet)
        elif args.command == "sweep":
            run_sweep(args.config, args.out, args.quiet)
        else:
            if not self_check(args.quiet):
                print("self-check failed", file=sys.stderr)
                return EXIT_NUMERICAL
        return EXIT_OK
    except ScenarioError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
