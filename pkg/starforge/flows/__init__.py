"""Apex layer: composes configs and the engine into runnable checks.

- ``run_file`` / ``run_scenarios`` turn a scenario file into a ``Report``
  with one check group per ``[kind]`` section.
- ``run_selftest`` / ``selftest`` run the built-in suites on seeded random
  data; suites fan out through ``batch_run``.
- ``batch_run`` runs any coroutine job over a list of inputs with bounded
  concurrency and aggregated results; ``BatchResult`` is its shape.
- ``Report``, ``CheckGroup`` and ``Check`` are what both commands print,
  as text lines or as JSON.
"""

from starforge.flows._report import (
    Check,
    CheckGroup,
    Report,
    equality_check,
    family_check,
    residual_check,
    summarize,
)
from starforge.flows.batch import BatchResult, batch_run
from starforge.flows.scenario import run_file, run_scenario, run_scenarios
from starforge.flows.selftest import SUITES, run_selftest, run_suite, selftest

__all__ = [
    "SUITES",
    "BatchResult",
    "Check",
    "CheckGroup",
    "Report",
    "batch_run",
    "equality_check",
    "family_check",
    "residual_check",
    "run_file",
    "run_scenario",
    "run_scenarios",
    "run_selftest",
    "run_suite",
    "selftest",
    "summarize",
]
