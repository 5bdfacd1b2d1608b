"""Run validated scenarios and collect one check group per scenario.

The runner trusts its input: everything a scenario needs was parsed while
the model validated, so the only failures left here are construction
checks that do not hold (``CheckFailed``), reported as a failed group.
"""

import time
from collections.abc import Callable
from pathlib import Path
from typing import Any

from starforge.configs import (
    BFieldScenario,
    DglaSuiteScenario,
    FedosovScenario,
    GaugeScenario,
    MoyalScenario,
    NormalizerScenario,
    OdeScenario,
    Scenario,
    TransitionScenario,
    load_scenario_file,
)
from starforge.core import CheckFailed, TruncationProfile, parse_series
from starforge.dgla import polyvector_context
from starforge.fedosov import ConnectionData, fedosov_fixtures
from starforge.flows._checks import (
    Outcome,
    bfield_checks,
    commutator_check,
    dgla_checks,
    exp_prefactor_residuals,
    fedosov_checks,
    gauge_checks,
    moyal_checks,
    normalizer_checks,
    ode_residuals,
    star_exponential_residuals,
    transition_checks,
)
from starforge.flows._report import CheckGroup, Report, residual_check
from starforge.star import ConstPoissonMatrix, Exponent, moyal
from starforge.utils import get_logger

logger = get_logger(__name__)


def _max_degree(s: MoyalScenario | NormalizerScenario | BFieldScenario) -> int:
    return s.profile.x_degree if s.max_degree is None else s.max_degree


def _moyal(s: MoyalScenario) -> Outcome:
    pi = ConstPoissonMatrix(s.poisson_matrix())
    star = moyal(pi)
    checks = moyal_checks(pi, _max_degree(s))
    checks.append(commutator_check(pi))
    notes = []
    for i, case in enumerate(s.products, 1):
        f, g = parse_series(case.f, s.profile), parse_series(case.g, s.profile)
        value = star(f, g)
        checks.append(
            residual_check(f"product_{i}", value - parse_series(case.value, s.profile))
        )
        notes.append(f"({case.f}) * ({case.g}) = {value}")
    return checks, notes


def _normalizer(s: NormalizerScenario) -> Outcome:
    pi = ConstPoissonMatrix(s.poisson_matrix())
    return normalizer_checks(pi, _max_degree(s))


def _bfield(s: BFieldScenario) -> Outcome:
    pi = ConstPoissonMatrix(s.poisson_matrix())
    return bfield_checks(pi, s.b_field(), _max_degree(s))


def _transition(s: TransitionScenario) -> Outcome:
    star = moyal(ConstPoissonMatrix(s.poisson_matrix()))
    cocycle = {pair: Exponent(r, m) for pair, (r, m) in s.exponents().items()}
    return transition_checks(star, cocycle, s.winding)


def _gauge(s: GaugeScenario) -> Outcome:
    return gauge_checks(s.bivector(), s.b_fields())


def _fedosov(s: FedosovScenario) -> Outcome:
    if s.fixture is not None:
        fixture = next(f for f in fedosov_fixtures(s.profile) if f.name == s.fixture)
        connection, pi = fixture.connection, fixture.pi
    else:
        pi = s.poisson_matrix()
        connection = ConnectionData.from_entries(s.christoffels(), s.profile)
    out = fedosov_checks(
        connection,
        pi,
        mode=s.mode,
        max_degree=s.max_degree,
        flat=s.fixture == "flat",
    )
    return out.checks, out.notes


def _ode(s: OdeScenario) -> Outcome:
    v0, d = s.initial(), s.multipliers()
    linear, start = ode_residuals(v0, s.source(), d)
    checks = [residual_check("ode_residual", linear), residual_check("initial", start)]
    d0 = s.scalar_d0()
    if d0 is not None:
        amplitude, amp_start = exp_prefactor_residuals(d0, d, v0)
        checks += [
            residual_check("exp_prefactor_residual", amplitude),
            residual_check("exp_prefactor_initial", amp_start),
        ]
    pi, exponent = s.poisson_matrix(), s.star_exponent()
    if pi is not None and exponent is not None:
        star = moyal(ConstPoissonMatrix(pi))
        residuals = star_exponential_residuals(exponent, star)
        checks += [residual_check(n, v) for n, v in residuals.items()]
    return checks, []


def _dgla(s: DglaSuiteScenario) -> Outcome:
    return dgla_checks(s.mc_element(), s.gauges(), polyvector_context(s.profile))


_RUNNERS: dict[type, Callable[[Any], Outcome]] = {
    MoyalScenario: _moyal,
    NormalizerScenario: _normalizer,
    BFieldScenario: _bfield,
    TransitionScenario: _transition,
    GaugeScenario: _gauge,
    FedosovScenario: _fedosov,
    OdeScenario: _ode,
    DglaSuiteScenario: _dgla,
}


def finish_group(
    title: str, build: Callable[[], Outcome], started: float | None = None
) -> CheckGroup:
    """Run ``build`` into a group; ``CheckFailed`` becomes the group's error."""
    started = time.monotonic() if started is None else started
    try:
        checks, notes = build()
        group = CheckGroup(title=title, checks=checks, notes=notes)
    except CheckFailed as exc:
        group = CheckGroup(title=title, error=str(exc))
    group.seconds = time.monotonic() - started
    for check in group.checks:
        logger.info("[%s] %s", title, check.line())
    if group.error is not None:
        logger.info("[%s] error: %s", title, group.error)
    return group


def run_scenario(scenario: Scenario, index: int = 1) -> CheckGroup:
    """One check group titled ``<kind> #<index>``.

    Raises:
        StarForgeError: for a construction that cannot start (e.g. a
            connection that does not preserve ``pi``).
    """
    runner = _RUNNERS[type(scenario)]
    title = f"{scenario.kind} #{index}"
    logger.debug("running %s at profile %s", title, scenario.profile)
    return finish_group(title, lambda: runner(scenario))


def run_scenarios(
    scenarios: list[Scenario],
    source: str = "<memory>",
    profile: TruncationProfile | None = None,
) -> Report:
    started = time.monotonic()
    groups = [run_scenario(s, i) for i, s in enumerate(scenarios, 1)]
    if profile is not None:
        label = str(profile)
    else:
        label = ", ".join(sorted({str(s.profile) for s in scenarios}))
    return Report(
        command="run",
        source=source,
        profile=label,
        groups=groups,
        seconds=time.monotonic() - started,
    )


def run_file(path: str | Path, profile: TruncationProfile | None = None) -> Report:
    """Load, validate and run every scenario in ``path``.

    Raises:
        GrammarError: on a malformed file.
        ScenarioValidationError: on a payload that fails validation.
    """
    scenarios = load_scenario_file(path, profile)
    logger.info("loaded %d scenarios from %s", len(scenarios), path)
    return run_scenarios(scenarios, str(path), profile)


__all__ = [
    "finish_group",
    "run_file",
    "run_scenario",
    "run_scenarios",
]
