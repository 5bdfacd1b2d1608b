"""Check builders shared by the scenario runner and the selftest suites.

Each builder takes validated engine values, runs one construction and
returns named residual checks (plus informative notes for scenarios).
"""

import itertools
from collections.abc import Iterator
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, prod

import sympy

from starforge.core import (
    CRational,
    HMatrix,
    HSeries,
    TruncationProfile,
    WeylElement,
    to_sympy,
)
from starforge.dgla import MCContext, campbell_hausdorff, gauge_action, mc_residual
from starforge.fedosov import (
    ConnectionData,
    FedosovState,
    FiberProduct,
    certificate_residual,
    fedosov_class_residual,
    fedosov_recursion,
    flat_lift,
    original_fedosov,
    star_modified,
    star_original,
    substitute_y,
    xi_bridge,
)
from starforge.flows._report import (
    Check,
    equality_check,
    family_check,
    residual_check,
)
from starforge.gauge import (
    gauge_matrix,
    gauge_transform,
    gauge_transform_ode,
    group_action_residual,
    jacobi_preservation_residual,
)
from starforge.hochschild import multi_indices
from starforge.ode import (
    TOperator,
    TPolySeries,
    ode_residual,
    solve_exp_prefactor,
    solve_linear,
    star_exponential,
    star_product_t,
)
from starforge.polyvector import (
    DiffForm,
    GenSection,
    PolyVectorField,
    b_transform,
    courant,
    de_rham,
    evaluate,
    graph_section,
    jacobiator,
    pairing,
    pi_sharp,
    schouten,
)
from starforge.star import (
    ConstPoissonMatrix,
    Exponent,
    StarProduct,
    assoc_residual,
    bfield_equivalence,
    intertwining_residual,
    mc_form,
    moyal,
    moyal_normalizer,
    transition_demo,
)

HALF = CRational(Fraction(1, 2))

Outcome = tuple[list[Check], list[str]]
PolyContext = MCContext[PolyVectorField]


def monomials(profile: TruncationProfile, max_degree: int) -> list[HSeries]:
    exps = multi_indices(profile.dim, max_degree)
    return [HSeries.monomial(e, profile) for e in exps]


def monomial_tuples(
    profile: TruncationProfile,
    arity: int,
    max_total: int,
    max_each: int | None = None,
) -> Iterator[tuple[HSeries, ...]]:
    """Tuples of x-monomials with total degree <= ``max_total``."""
    exps = multi_indices(profile.dim, max_total if max_each is None else max_each)
    for combo in itertools.product(exps, repeat=arity):
        if sum(sum(e) for e in combo) <= max_total:
            yield tuple(HSeries.monomial(e, profile) for e in combo)


def y_monomial_pairs(
    profile: TruncationProfile,
) -> Iterator[tuple[WeylElement, WeylElement]]:
    """Pairs of fiber monomials ``y^a, y^b`` with ``|a| + |b| <= Dy``."""
    exps = multi_indices(profile.dim, profile.y_degree)
    for a, b in itertools.product(exps, repeat=2):
        if sum(a) + sum(b) <= profile.y_degree:
            yield (
                WeylElement.monomial(profile, y=a),
                WeylElement.monomial(profile, y=b),
            )


# -- star products --------------------------------------------------------


def moyal_checks(pi: ConstPoissonMatrix, max_degree: int) -> list[Check]:
    s = moyal(pi)
    triples = monomial_tuples(pi.profile, 3, max_degree)
    return [
        family_check("assoc_residual", (assoc_residual(s, *t) for t in triples)),
        residual_check("mc_residual", mc_form(s)),
    ]


def commutator_check(pi: ConstPoissonMatrix) -> Check:
    """``[x^i, x^j]_* = 2 pi^(ij)`` for every pair of coordinates."""
    s = moyal(pi)
    p = pi.profile
    xs = [HSeries.variable(i, p) for i in range(p.dim)]
    return family_check(
        "coordinate_commutators",
        (
            s.commutator(xs[i], xs[j]) - pi.matrix[i, j].scale(2)
            for i in range(p.dim)
            for j in range(i + 1, p.dim)
        ),
    )


def normalizer_checks(pi: ConstPoissonMatrix, max_degree: int) -> Outcome:
    """Fiberwise and base-level equivalence to ``hbar pi_1``."""
    p = pi.profile
    n = moyal_normalizer(pi)
    source, target = FiberProduct(pi.matrix), FiberProduct(n.target.matrix)
    sub = n.substitution

    def fiberwise(a: WeylElement, b: WeylElement) -> WeylElement:
        moved = target(substitute_y(a, sub), substitute_y(b, sub))
        return substitute_y(source(a, b), sub) - moved

    new, old = moyal(pi), moyal(n.target)
    checks = [
        residual_check(
            "target_minus_hbar_pi1",
            n.target.matrix - pi.order(1).scale(HSeries.hbar(p)),
        ),
        family_check(
            "fiberwise_equivalence",
            (fiberwise(a, b) for a, b in y_monomial_pairs(p)),
        ),
        family_check(
            "base_intertwining",
            (
                intertwining_residual(n.equivalence, new, old, f, g)
                for f, g in monomial_tuples(p, 2, max_degree)
            ),
        ),
    ]
    notes = [f"stages: {sorted(n.chis)}", f"substitution: {n.substitution}"]
    return checks, notes


def _sympy_entry(e: HSeries, h: sympy.Symbol) -> sympy.Expr:
    return sympy.Add(*(to_sympy(c) * h**k for (k, _), c in e))


def _sympy_matrix(m: HMatrix, h: sympy.Symbol) -> sympy.Matrix:
    return sympy.Matrix(m.size, m.size, lambda i, j: _sympy_entry(m[i, j], h))


def gauge_oracle(p: HMatrix, b: HMatrix) -> sympy.Matrix:
    """``(I + P B)^-1 P`` in closed form, expanded in hbar to order N."""
    h = sympy.Symbol("hbar")
    big_p, big_b = _sympy_matrix(p, h), _sympy_matrix(b, h)
    exact = (sympy.eye(p.size) + big_p * big_b).inv() * big_p
    order = p.profile.hbar_order + 1
    return exact.applyfunc(
        lambda e: sympy.expand(sympy.series(e, h, 0, order).removeO())
    )


def bfield_checks(
    pi: ConstPoissonMatrix, b: DiffForm, max_degree: int
) -> Outcome:
    flow = bfield_equivalence(pi, b)
    moved = flow.pi_t.at(1)
    ours = _sympy_matrix(moved, sympy.Symbol("hbar")).applyfunc(sympy.expand)
    pairs = monomial_tuples(pi.profile, 2, max_degree)
    checks = [
        residual_check("intertwining_family", flow.residual),
        family_check(
            "intertwining_at_one",
            (
                intertwining_residual(flow.equivalence, flow.product, moyal(pi), f, g)
                for f, g in pairs
            ),
        ),
        residual_check(
            "neumann_vs_flow", gauge_matrix(b.to_matrix(), pi.matrix) - moved
        ),
        equality_check(
            "matrix_oracle", ours, gauge_oracle(pi.matrix, b.to_matrix())
        ),
    ]
    return checks, [f"theta: {flow.theta}", f"target: {moved}"]


def transition_checks(
    star: StarProduct, cocycle: dict[tuple[int, int], Exponent], winding: int
) -> Outcome:
    report = transition_demo(star, cocycle, winding)
    t = sympy.Symbol("t")
    expected = sympy.exp(2 * sympy.pi * sympy.I * winding * t)
    symbolic = sympy.simplify(report.triple_exponent.to_sympy(t) - expected)
    checks = [
        family_check("identity_residuals", report.identity_residuals.values()),
        family_check("inverse_residuals", report.inverse_residuals.values()),
        residual_check("triple_amplitude", report.triple_amplitude_residual),
        equality_check("triple_at_one", report.triple_at_one, sympy.Integer(1)),
        equality_check("triple_symbolic", symbolic, sympy.Integer(0)),
    ]
    return checks, report.lines()


# -- polyvector identities ------------------------------------------------


def jacobi_checks(
    pi: PolyVectorField, f: HSeries, g: HSeries, h: HSeries
) -> list[HSeries]:
    """``1/2 [pi, pi](df, dg, dh)`` and ``[pi, [pi, f]](dg, dh)`` minus ``Jac``."""
    df, dg, dh = (DiffForm.exact(u) for u in (f, g, h))
    jac = jacobiator(pi, f, g, h)
    half = evaluate(schouten(pi, pi).scale(HALF), df, dg, dh) - jac
    nested = schouten(pi, schouten(pi, PolyVectorField.function(f)))
    return [half, evaluate(nested, dg, dh) - jac]


def chain_rule_residual(pi: PolyVectorField, eta: DiffForm) -> PolyVectorField:
    """``pi#(d eta) + [pi, pi# eta]`` for a Poisson ``pi``."""
    return pi_sharp(pi, de_rham(eta)) + schouten(pi, pi_sharp(pi, eta))


def integrability_residual(
    pi: PolyVectorField, f: HSeries, g: HSeries, h: HSeries
) -> HSeries:
    """``<[[e_f, e_g]], e_h> - Jac`` on graph sections ``e_u = (pi# du, du)``."""
    ef, eg, eh = (graph_section(pi, DiffForm.exact(u)) for u in (f, g, h))
    return pairing(courant(ef, eg), eh) - jacobiator(pi, f, g, h)


def b_symmetry_residuals(
    b: DiffForm, e1: GenSection, e2: GenSection
) -> tuple[GenSection, HSeries]:
    """Courant and pairing defects of ``lambda_B``; both vanish iff ``dB = 0``."""
    tb1, tb2 = b_transform(b, e1), b_transform(b, e2)
    bracket = courant(tb1, tb2) - b_transform(b, courant(e1, e2))
    return bracket, pairing(tb1, tb2) - pairing(e1, e2)


def non_closed_witness(profile: TruncationProfile) -> GenSection:
    """Courant defect of ``B = x^3 dx^1 dx^2`` on ``(d_1, 0), (d_2, 0)``."""
    x3 = HSeries.variable(2, profile)
    b = DiffForm.from_components({(0, 1): x3}, profile)
    zero = DiffForm.zero(profile)
    e1 = GenSection(PolyVectorField.generator(0, profile), zero)
    e2 = GenSection(PolyVectorField.generator(1, profile), zero)
    return b_symmetry_residuals(b, e1, e2)[0]


# -- gauge ---------------------------------------------------------------


def gauge_residuals(pi: PolyVectorField, bs: list[DiffForm]) -> dict[str, list]:
    out: dict[str, list] = {"neumann_vs_ode": [], "jacobi_preserved": []}
    for b in bs:
        ode = gauge_transform_ode(b, pi)
        out["neumann_vs_ode"].append(gauge_transform(b, pi) - ode)
        out["jacobi_preserved"].append(jacobi_preservation_residual(b, pi))
    if len(bs) == 2:
        out["group_action"] = [group_action_residual(bs[0], bs[1], pi)]
    return out


def gauge_checks(pi: PolyVectorField, bs: list[DiffForm]) -> Outcome:
    checks = [residual_check("input_jacobi", schouten(pi, pi))]
    for name, values in gauge_residuals(pi, bs).items():
        checks.append(family_check(name, values))
    notes = [
        f"gauge_transform(B{i + 1}): {gauge_transform(b, pi)}"
        for i, b in enumerate(bs)
    ]
    return checks, notes


# -- dgla ----------------------------------------------------------------


def dgla_residuals(
    alpha: PolyVectorField, gauges: list[PolyVectorField], ctx: PolyContext
) -> dict[str, list]:
    moved = [gauge_action(alpha, xi, ctx) for xi in gauges]
    out: dict[str, list] = {
        "mc_input": [mc_residual(alpha, ctx)],
        "mc_preserved": [mc_residual(m, ctx) for m in moved],
    }
    if len(gauges) == 2:
        xi, eta = gauges
        twice = gauge_action(moved[0], eta, ctx)
        once = gauge_action(alpha, campbell_hausdorff(xi, eta, ctx), ctx)
        out["action_is_right"] = [twice - once]
    return out


def dgla_checks(
    alpha: PolyVectorField, gauges: list[PolyVectorField], ctx: PolyContext
) -> Outcome:
    residuals = dgla_residuals(alpha, gauges, ctx)
    checks = [family_check(n, v) for n, v in residuals.items()]
    notes = [
        f"alpha^xi{i + 1}: {gauge_action(alpha, xi, ctx)}"
        for i, xi in enumerate(gauges)
    ]
    return checks, notes


# -- formal ODEs ---------------------------------------------------------


def multiplication_operator(parts: dict[int, HSeries]) -> TOperator[HSeries]:
    return TOperator({n: (lambda v, _m=m: _m * v) for n, m in parts.items()})


def ode_residuals(
    v0: HSeries, w: dict[int, HSeries], d: dict[int, HSeries]
) -> list[TPolySeries[HSeries]]:
    """Derivative substitution and initial condition of ``v' = w + D v``."""
    zero = v0.scale(0)
    wt = TPolySeries(w, zero) if w else None
    op = multiplication_operator(d)
    v = solve_linear(wt, op, v0)
    start = TPolySeries.constant(v.coeff(0) - v0, zero)
    return [ode_residual(v, wt, op), start]


def exp_prefactor_residuals(
    d0: CRational, d: dict[int, HSeries], h: HSeries
) -> list[TPolySeries[HSeries]]:
    """``f = exp(t d0) A`` solves ``f' = (d0 + D) f`` iff ``A' = D A``."""
    op = multiplication_operator(d)
    amplitude = solve_exp_prefactor(d0, op, h).amplitude()
    start = TPolySeries.constant(amplitude.coeff(0) - h, h.scale(0))
    return [ode_residual(amplitude, None, op), start]


def star_exponential_residuals(
    d: HSeries, star: StarProduct
) -> dict[str, TPolySeries[HSeries]]:
    se = star_exponential(d, star)
    tail = d - d.truncate_hbar(0)
    one = TPolySeries.constant(HSeries.one(d.profile))
    op = TOperator.constant(lambda v: star(tail, v))
    return {
        "star_exp_ode": ode_residual(se.g, None, op),
        "star_exp_inverse": star_product_t(se.g, se.g_inv, star) - one,
        "star_exp_inverse_left": star_product_t(se.g_inv, se.g, star) - one,
    }


# -- Fedosov -------------------------------------------------------------


def taylor_shift(f: HSeries) -> WeylElement:
    """``sum_alpha d^alpha f y^alpha / alpha!``."""
    p = f.profile
    out = WeylElement.zero(p)
    for alpha in multi_indices(p.dim, p.x_degree):
        df = f.diff(alpha)
        if df:
            c = CRational(Fraction(1, prod(factorial(a) for a in alpha)))
            y = WeylElement.monomial(p, c=c, y=alpha)
            out = out + WeylElement.from_series(df) * y
    return out


@dataclass
class FedosovOutcome:
    checks: list[Check] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    quantum: FedosovState | None = None
    classical: FedosovState | None = None

    @property
    def discrepancy(self) -> WeylElement:
        """The hbar^2 part of ``r - r^cl``."""
        assert self.quantum is not None and self.classical is not None
        return (self.quantum.r - self.classical.r).hbar_part(2)


def fedosov_checks(
    connection: ConnectionData,
    pi: HMatrix,
    *,
    mode: str = "quantum",
    max_degree: int = 2,
    flat: bool = False,
) -> FedosovOutcome:
    """Certificate, class, r versus r^cl and the two products.

    ``max_degree`` bounds each factor of the sampled monomial pairs; their
    total degree stays <= Dx.
    """
    p = pi.profile
    out = FedosovOutcome()
    quantum = fedosov_recursion(connection, pi, "quantum")
    classical = fedosov_recursion(connection, pi, "classical")
    out.quantum, out.classical = quantum, classical
    out.checks += [
        residual_check("classical_certificate", certificate_residual(classical)),
        residual_check(
            "r_minus_r_classical_mod_hbar2",
            (quantum.r - classical.r).truncate_hbar(1),
        ),
    ]
    out.notes += [f"r_classical: {classical.r}", f"b_classical: {classical.b}"]
    if mode == "classical":
        return out

    out.checks += [
        residual_check("certificate_residual", certificate_residual(quantum)),
        residual_check("class_residual", fedosov_class_residual(quantum)),
    ]
    xi = xi_bridge(quantum, classical)
    out.notes += [f"r: {quantum.r}", f"b: {quantum.b}", f"xi: {xi}"]

    original = original_fedosov(quantum)
    out.checks.append(
        residual_check("original_class_residual", original.class_residual())
    )
    fs = monomials(p, min(max_degree, p.x_degree))
    lifts = [flat_lift(quantum, f) for f in fs]
    lifts_f = [original.lift(f) for f in fs]
    out.checks.append(
        family_check(
            "normalizer_bridge",
            (original.conjugate(t) - u for t, u in zip(lifts, lifts_f, strict=True)),
        )
    )
    order = p.fiber_hbar_order

    def star_gap(i: int, j: int) -> HSeries:
        m = quantum.product(lifts[i], lifts[j]).sigma()
        f = original.product(lifts_f[i], lifts_f[j]).sigma()
        return (m - f).truncate_hbar(order)

    degrees = [f.x_degree() or 0 for f in fs]
    pairs = [
        (i, j)
        for i in range(len(fs))
        for j in range(len(fs))
        if degrees[i] + degrees[j] <= p.x_degree
    ]
    out.checks.append(
        family_check(
            "star_original_vs_modified", (star_gap(i, j) for i, j in pairs)
        )
    )

    if p.dim >= 2:
        x1, x2 = HSeries.variable(0, p), HSeries.variable(1, p)
        out.notes.append(f"x1 *_m x2 = {star_modified(quantum, x1, x2)}")
        out.notes.append(f"x1 *_F x2 = {star_original(quantum, x1, x2)}")

    if flat:
        out.checks += flat_checks(quantum, fs)
    return out


def flat_checks(state: FedosovState, fs: list[HSeries]) -> list[Check]:
    """On a flat chart ``r = 0``, lifts are Taylor shifts and ``*_m`` is Moyal."""
    p = state.profile
    s = moyal(ConstPoissonMatrix(state.product.pi))
    order = p.fiber_hbar_order
    pairs = monomial_tuples(p, 2, p.x_degree, max_each=3)
    return [
        residual_check("r", state.r),
        family_check(
            "taylor_shift", (flat_lift(state, f) - taylor_shift(f) for f in fs)
        ),
        family_check(
            "star_modified_vs_moyal",
            (
                star_modified(state, f, g) - s(f, g).truncate_hbar(order)
                for f, g in pairs
            ),
        ),
    ]


__all__ = [
    "FedosovOutcome",
    "Outcome",
    "b_symmetry_residuals",
    "bfield_checks",
    "chain_rule_residual",
    "commutator_check",
    "dgla_checks",
    "dgla_residuals",
    "exp_prefactor_residuals",
    "fedosov_checks",
    "flat_checks",
    "gauge_checks",
    "gauge_oracle",
    "gauge_residuals",
    "integrability_residual",
    "jacobi_checks",
    "monomial_tuples",
    "monomials",
    "moyal_checks",
    "multiplication_operator",
    "non_closed_witness",
    "normalizer_checks",
    "ode_residuals",
    "star_exponential_residuals",
    "taylor_shift",
    "transition_checks",
    "y_monomial_pairs",
]
