#!/usr/bin/env python3
"""Run the full selftest matrix at the default profile.

Unit tests shrink instance counts and profiles so they stay fast; this slice
runs every suite at its full size (100 identity instances, 50 gauge and ODE
instances, ...) under one wall-clock bound and prints one line per suite.
"""

import asyncio
import sys

from dotenv import load_dotenv

from starforge.configs import SelftestCfg
from starforge.flows import Report, selftest
from starforge.utils import configure_logging

_TIMEOUT_SECONDS = 3600


def _lines(report: Report) -> list[str]:
    out = []
    for g in report.groups:
        state = "PASS" if g.passed else "FAIL"
        line = (
            f"[{state}] selftest: suite={g.title} checks={len(g.checks)} "
            f"failed={g.failed_checks} seconds={g.seconds:.1f}"
        )
        if g.error is not None:
            line += f" error={g.error}"
        out.append(line)
    return out


async def main() -> int:
    """Run and report the timeout-bounded full selftest."""
    load_dotenv()
    configure_logging()
    cfg = SelftestCfg()
    try:
        report = await asyncio.wait_for(selftest(cfg), timeout=_TIMEOUT_SECONDS)
    except Exception as exc:
        print(f"[FAIL] selftest: {type(exc).__name__}: {exc}")
        return 1
    for line in _lines(report):
        print(line)
    print(f"[{'PASS' if report.passed else 'FAIL'}] selftest: profile={report.profile}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(asyncio.run(main()))
