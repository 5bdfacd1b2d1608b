"""The built-in selftest: ten suites of exact checks on seeded random data.

Each suite is a pure function of ``(cfg, seed)``, so suites fan out over
``batch_run`` and the report is assembled in suite order whatever order
they finish in.
"""

import asyncio
import time
from collections.abc import Callable
from fractions import Fraction

from starforge.configs import SUITE_NAMES, SelftestCfg, SuiteName
from starforge.core import CRational, HSeries, TruncationProfile
from starforge.dgla import polyvector_context
from starforge.fedosov import fedosov_fixtures, fedosov_recursion, star_modified
from starforge.flows._checks import (
    Outcome,
    b_symmetry_residuals,
    bfield_checks,
    chain_rule_residual,
    commutator_check,
    dgla_residuals,
    exp_prefactor_residuals,
    fedosov_checks,
    gauge_residuals,
    integrability_residual,
    jacobi_checks,
    monomial_tuples,
    moyal_checks,
    non_closed_witness,
    normalizer_checks,
    ode_residuals,
    star_exponential_residuals,
    transition_checks,
)
from starforge.flows._random import RandomData
from starforge.flows._report import (
    Check,
    CheckGroup,
    Report,
    family_check,
    residual_check,
)
from starforge.flows.batch import batch_run
from starforge.flows.scenario import finish_group
from starforge.gauge import gauge_transform
from starforge.polyvector import GenSection, schouten
from starforge.star import ConstPoissonMatrix, Exponent, moyal
from starforge.utils import get_logger

logger = get_logger(__name__)

J = [[0, 1], [-1, 0]]


def _dims(n: int) -> list[int]:
    """``n`` instances on the plane, then ``n`` on three-space."""
    return [d for d in (2, 3) for _ in range(n)]


def _at_dim(profile: TruncationProfile, dim: int) -> TruncationProfile:
    return profile if profile.dim == dim else profile.with_bounds(dim=dim)


def _families(name_values: dict[str, list]) -> list[Check]:
    return [family_check(n, v) for n, v in name_values.items()]


def _collect(into: dict[str, list], more: dict[str, list]) -> None:
    for k, v in more.items():
        into.setdefault(k, []).extend(v)


def moyal_suite(cfg: SelftestCfg, rd: RandomData) -> Outcome:
    p = cfg.profile
    checks: list[Check] = []
    fixed = ConstPoissonMatrix.from_orders({1: J, 3: J}, p)
    checks += moyal_checks(fixed, p.x_degree)
    checks.append(commutator_check(fixed))
    random_pi = rd.constant_pi(p)
    checks += [
        c.model_copy(update={"name": f"random_{c.name}"})
        for c in moyal_checks(random_pi, p.x_degree)
    ]
    return checks, []


def identities_suite(cfg: SelftestCfg, rd: RandomData) -> Outcome:
    """Polyvector and Courant identities on random data in dims 2 and 3."""
    out: dict[str, list] = {
        "jacobi_half_schouten": [],
        "jacobi_nested": [],
        "chain_rule": [],
        "courant_integrability": [],
        "b_transform_courant": [],
        "b_transform_pairing": [],
    }
    for dim in _dims(cfg.identities):
        p = _at_dim(cfg.profile, dim)
        pi = rd.bivector(p)
        f, g, h = (rd.series(p, 2) for _ in range(3))
        half, nested = jacobi_checks(pi, f, g, h)
        out["jacobi_half_schouten"].append(half)
        out["jacobi_nested"].append(nested)
        out["courant_integrability"].append(integrability_residual(pi, f, g, h))
        eta = rd.one_form(p, 2)
        out["chain_rule"].append(chain_rule_residual(rd.poisson_bivector(p), eta))
        b = rd.closed_two_form(p)
        e1, e2 = (
            GenSection(rd.vector_field(p, 1), rd.one_form(p, 1)) for _ in range(2)
        )
        bracket, pair = b_symmetry_residuals(b, e1, e2)
        out["b_transform_courant"].append(bracket)
        out["b_transform_pairing"].append(pair)
    checks = _families(out)
    witness = non_closed_witness(_at_dim(cfg.profile, 3))
    checks.append(residual_check("non_closed_b_witness", witness, expect="nonzero"))
    return checks, []


def gauge_suite(cfg: SelftestCfg, rd: RandomData) -> Outcome:
    out: dict[str, list] = {"input_jacobi": []}
    for dim in _dims(cfg.gauge):
        p = _at_dim(cfg.profile, dim)
        pi = rd.poisson_bivector(p)
        bs = [rd.closed_two_form(p), rd.closed_two_form(p)]
        out["input_jacobi"].append(schouten(pi, pi))
        _collect(out, gauge_residuals(pi, bs))
    return _families(out), []


def normalizer_suite(cfg: SelftestCfg, rd: RandomData) -> Outcome:
    checks: list[Check] = []
    for i in range(cfg.normalizer):
        pi = rd.constant_pi(cfg.profile)
        found, _ = normalizer_checks(pi, cfg.profile.x_degree)
        checks += [
            c.model_copy(update={"name": f"{c.name} #{i + 1}"}) for c in found
        ]
    return checks, []


def bfield_suite(cfg: SelftestCfg, rd: RandomData) -> Outcome:
    checks: list[Check] = []
    for i in range(cfg.bfield):
        pi = rd.constant_pi(cfg.profile)
        b = rd.constant_two_form(cfg.profile)
        found, _ = bfield_checks(pi, b, cfg.profile.x_degree)
        checks += [
            c.model_copy(update={"name": f"{c.name} #{i + 1}"}) for c in found
        ]
    return checks, []


def fedosov_suite(cfg: SelftestCfg, rd: RandomData) -> Outcome:
    """Every fixture, plus the hbar^2 gap between ``r`` and ``r^cl``."""
    checks: list[Check] = []
    notes: list[str] = []
    gaps = []
    for fixture in fedosov_fixtures(cfg.profile):
        out = fedosov_checks(
            fixture.connection, fixture.pi, flat=fixture.name == "flat"
        )
        checks += [
            c.model_copy(update={"name": f"{fixture.name}: {c.name}"})
            for c in out.checks
        ]
        if fixture.name != "flat":
            gaps.append(out.discrepancy)
            notes.append(f"{fixture.name}: hbar^2 part of r - r_cl = {gaps[-1]}")
    checks.append(residual_check("r_vs_r_classical_hbar2", gaps, expect="nonzero"))
    return checks, notes


def ode_suite(cfg: SelftestCfg, rd: RandomData) -> Outcome:
    p = cfg.profile
    out: dict[str, list] = {
        "ode_residual": [],
        "initial": [],
        "exp_prefactor_residual": [],
        "exp_prefactor_initial": [],
    }
    for _ in range(cfg.ode):
        # invertible hbar^0 part: nonzero constant plus a linear term
        v0 = HSeries.constant(rd.nonzero_rational(), p) + rd.series(p, 2, min_hbar=1)
        v0 = v0 + HSeries.variable(0, p).scale(rd.rational())
        w = {n: rd.formal_series(p, 2) for n in range(rd.rng.randint(0, 2))}
        d = {n: rd.formal_series(p, 1) for n in range(rd.rng.randint(1, 2))}
        linear, start = ode_residuals(v0, w, d)
        out["ode_residual"].append(linear)
        out["initial"].append(start)
        amplitude, amp_start = exp_prefactor_residuals(
            CRational(rd.rational()), d, v0
        )
        out["exp_prefactor_residual"].append(amplitude)
        out["exp_prefactor_initial"].append(amp_start)
        star = moyal(rd.constant_pi(p))
        exponent = HSeries.constant(rd.rational(), p) + rd.series(
            p, 1, min_hbar=2, max_hbar=3
        )
        _collect(
            out,
            {k: [v] for k, v in star_exponential_residuals(exponent, star).items()},
        )
    return _families(out), []


def dgla_suite(cfg: SelftestCfg, rd: RandomData) -> Outcome:
    out: dict[str, list] = {}
    for dim in _dims(cfg.dgla):
        p = _at_dim(cfg.profile, dim)
        alpha = rd.poisson_bivector(p, 2)
        gauges = [rd.gauge_element(p), rd.gauge_element(p)]
        _collect(out, dgla_residuals(alpha, gauges, polyvector_context(p)))
    return _families(out), []


def transition_suite(cfg: SelftestCfg, rd: RandomData) -> Outcome:
    """Trivial and winding-one cocycles on three charts."""
    star = moyal(ConstPoissonMatrix.from_orders({1: J}, cfg.profile))

    def value(q: Fraction, m: int = 0) -> Exponent:
        return Exponent(CRational(q), Fraction(m))

    cases = {
        0: {(1, 2): value(Fraction(1, 2)), (2, 3): value(Fraction(1, 3))},
        1: {(1, 2): value(Fraction(1, 2), 1), (2, 3): value(Fraction(1, 3))},
    }
    checks: list[Check] = []
    notes: list[str] = []
    for winding, cocycle in cases.items():
        cocycle[(3, 1)] = value(Fraction(-5, 6))
        found, lines = transition_checks(star, cocycle, winding)
        checks += [
            c.model_copy(update={"name": f"winding {winding}: {c.name}"})
            for c in found
        ]
        notes += [f"winding {winding}: {line}" for line in lines]
    return checks, notes


def stability_suite(cfg: SelftestCfg, rd: RandomData) -> Outcome:
    """Raising N and Dy by two changes nothing inside the default profile."""
    p = cfg.profile
    big = p.with_bounds(hbar_order=p.hbar_order + 2, y_degree=p.y_degree + 2)

    small_star = moyal(ConstPoissonMatrix.from_orders({1: J, 3: J}, p))
    big_star = moyal(ConstPoissonMatrix.from_orders({1: J, 3: J}, big))
    moyal_gaps = [
        big_star(f.reduce(big), g.reduce(big)).reduce(p) - small_star(f, g)
        for f, g in monomial_tuples(p, 2, p.x_degree)
    ]

    gauge_gaps = []
    for dim in _dims(2):
        q = _at_dim(big, dim)
        pi, b = rd.poisson_bivector(q), rd.closed_two_form(q)
        low = _at_dim(p, dim)
        moved = gauge_transform(b, pi).reduce(low)
        gauge_gaps.append(moved - gauge_transform(b.reduce(low), pi.reduce(low)))

    r_gaps, star_gaps = [], []
    x1, x2 = HSeries.variable(0, p), HSeries.variable(1, p)
    pairs = [(x1, x2), (x1 * x1, x2), (x1 * x2, x2 * x2)]
    small = {f.name: f for f in fedosov_fixtures(p)}
    for fixture in fedosov_fixtures(big):
        if fixture.name == "flat":
            continue
        hi = fedosov_recursion(fixture.connection, fixture.pi)
        lo_fix = small[fixture.name]
        lo = fedosov_recursion(lo_fix.connection, lo_fix.pi)
        r_gaps.append(hi.r.reduce(p) - lo.r)
        for f, g in pairs:
            value = star_modified(hi, f.reduce(big), g.reduce(big)).reduce(p)
            star_gaps.append(
                value.truncate_hbar(p.fiber_hbar_order) - star_modified(lo, f, g)
            )

    checks = [
        family_check("moyal_products", moyal_gaps),
        family_check("gauge_transforms", gauge_gaps),
        family_check("fedosov_r", r_gaps),
        family_check("fedosov_star_modified", star_gaps),
    ]
    return checks, [f"raised profile: {big}"]


SUITES: dict[SuiteName, Callable[[SelftestCfg, RandomData], Outcome]] = {
    "moyal": moyal_suite,
    "identities": identities_suite,
    "gauge": gauge_suite,
    "normalizer": normalizer_suite,
    "bfield": bfield_suite,
    "fedosov": fedosov_suite,
    "ode": ode_suite,
    "dgla": dgla_suite,
    "transition": transition_suite,
    "stability": stability_suite,
}


def run_suite(name: SuiteName, cfg: SelftestCfg) -> CheckGroup:
    """One suite, seeded by its position so the result ignores concurrency."""
    rd = RandomData(cfg.seed + SUITE_NAMES.index(name))
    logger.debug("suite %s starting", name)
    return finish_group(name, lambda: SUITES[name](cfg, rd))


async def _suite_job(name: SuiteName, *, cfg: SelftestCfg) -> CheckGroup:
    return await asyncio.to_thread(run_suite, name, cfg)


async def selftest(
    cfg: SelftestCfg,
    on_progress: Callable[[int, int], None] | None = None,
) -> Report:
    """Run the selected suites with ``cfg.concurrency`` in flight."""
    started = time.monotonic()
    names = cfg.selected()
    batch = await batch_run(
        _suite_job,
        names,
        concurrency=cfg.concurrency,
        on_error="skip",
        on_progress=on_progress,
        cfg=cfg,
    )
    groups = list(batch.results)
    for i, exc in batch.errors:
        logger.error("suite %s raised: %s", names[i], exc)
        groups[i] = CheckGroup(title=names[i], error=f"{type(exc).__name__}: {exc}")
    return Report(
        command="selftest",
        source=f"seed {cfg.seed}",
        profile=str(cfg.profile),
        groups=[g for g in groups if g is not None],
        seconds=time.monotonic() - started,
    )


def run_selftest(cfg: SelftestCfg | None = None) -> Report:
    return asyncio.run(selftest(cfg or SelftestCfg()))


__all__ = ["SUITES", "run_selftest", "run_suite", "selftest"]
