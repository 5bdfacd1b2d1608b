"""``starforge`` command line: run scenario files or the built-in selftest.

Exit codes: 0 when every check holds, 1 when a check failed, 2 when the
input could not be parsed or validated.
"""

import argparse
import logging
import os
import sys
from collections.abc import Sequence
from pathlib import Path

from dotenv import load_dotenv

from starforge.configs import SUITE_NAMES, SelftestCfg, check_profile_caps
from starforge.core import CheckFailed, TruncationProfile
from starforge.flows import Report, run_file, run_selftest
from starforge.utils import configure_logging


def parse_args(argv: Sequence[str] | None = None) -> argparse.Namespace:
    parser = argparse.ArgumentParser(
        prog="starforge",
        description="Exact residual checks for formal deformation quantization.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--profile",
        default=None,
        help="Truncation override 'N,Dx,Dy,dim' (e.g. 6,4,6,2).",
    )
    common.add_argument(
        "--json", action="store_true", help="Print the report as JSON."
    )
    common.add_argument(
        "--timing",
        action="store_true",
        help="Include wall times (the report is then no longer reproducible).",
    )
    common.add_argument(
        "-v", "--verbose", action="store_true", help="Log every check at INFO."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", parents=[common], help="Run a scenario file.")
    run.add_argument("file", type=Path, help="UTF-8 scenario file.")

    selftest = sub.add_parser(
        "selftest", parents=[common], help="Run the built-in suites."
    )
    selftest.add_argument("--seed", type=int, default=None)
    selftest.add_argument(
        "--suite",
        action="append",
        choices=SUITE_NAMES,
        default=None,
        help="Suite to run. Repeatable. Default: all.",
    )
    selftest.add_argument("--concurrency", type=int, default=None)
    return parser.parse_args(argv)


def _log_level(verbose: bool) -> int:
    if verbose:
        return logging.INFO
    raw = os.environ.get("STARFORGE_LOG_LEVEL", "WARNING").strip().upper()
    level = logging.getLevelName(raw)
    return level if isinstance(level, int) else logging.WARNING


def _selftest_cfg(args: argparse.Namespace) -> SelftestCfg:
    data: dict[str, object] = {}
    if args.profile is not None:
        data["profile"] = args.profile
    if args.seed is not None:
        data["seed"] = args.seed
    if args.suite:
        data["suites"] = args.suite
    if args.concurrency is not None:
        data["concurrency"] = args.concurrency
    return SelftestCfg.model_validate(data)


def _emit(report: Report, args: argparse.Namespace) -> None:
    if args.json:
        print(report.to_json(args.timing))
    else:
        print("\n".join(report.lines(args.timing)))


def main(argv: Sequence[str] | None = None) -> int:
    load_dotenv()
    args = parse_args(argv)
    configure_logging(_log_level(args.verbose))

    try:
        if args.command == "run":
            if not args.file.is_file():
                print(f"[error] scenario file does not exist: {args.file}")
                return 2
            profile = None
            if args.profile is not None:
                profile = check_profile_caps(TruncationProfile.parse(args.profile))
            report = run_file(args.file, profile)
        else:
            report = run_selftest(_selftest_cfg(args))
    except CheckFailed as err:
        print(f"[failed] {err}")
        return 1
    except ValueError as err:
        # pydantic.ValidationError and every StarForgeError are ValueErrors
        print(f"[error] {err}")
        return 2

    _emit(report, args)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
