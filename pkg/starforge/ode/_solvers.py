"""Fixed-point solvers for formal ODEs in ``(V[t])[[hbar]]``.

Each right-hand side raises the hbar-order, so the Picard iteration
``v <- v0 + int_0^t (w + D v)`` gains one order per pass and becomes
stationary after at most N + 1 passes.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass
from typing import Generic, TypeVar

from starforge.core import (
    CRational,
    HSeries,
    NoConvergence,
    NonConstantZerothOrder,
    NonInvertible,
    NonInvertibleInitialCondition,
    ScalarLike,
    ZerothOrderViolation,
    series_invert,
)
from starforge.ode._tpoly import TOperator, TPolySeries
from starforge.utils import get_logger

logger = get_logger(__name__)

V = TypeVar("V")

Product = Callable[[HSeries, HSeries], HSeries]


def _valuation(v) -> int | None:
    return v.hbar_valuation()


def check_raises_order(
    op: TOperator[V], probes: Iterable[V], what: str = "D"
) -> None:
    """Probe ``op`` and require it to raise the hbar-order by at least one.

    Raises:
        ZerothOrderViolation: if some ``D_n`` keeps the order of a probe.
    """
    for probe in probes:
        base = _valuation(probe)
        if base is None:
            continue
        for n, part in op.parts.items():
            out = _valuation(part(probe))
            if out is not None and out < base + 1:
                raise ZerothOrderViolation(
                    f"{what} has an hbar^0 part (t^{n} term keeps order {base})"
                )


def _max_passes(zero) -> int:
    profile = getattr(zero, "profile", None)
    order = profile.hbar_order if profile is not None else 16
    return order + 3


def solve_picard(
    rhs: Callable[[TPolySeries[V]], TPolySeries[V]],
    v0: V,
    max_passes: int | None = None,
) -> TPolySeries[V]:
    """Solve ``dv/dt = rhs(v)``, ``v(0) = v0`` by Picard iteration.

    ``rhs`` must be a contraction in the hbar-adic sense (it raises the
    order of differences). Used directly for nonlinear equations such as
    the Riccati flow of a gauge-transformed bivector.

    Raises:
        NoConvergence: if the iteration is not stationary in time.
    """
    start = TPolySeries.constant(v0)
    limit = max_passes if max_passes is not None else _max_passes(start.zero)
    v = start
    for n in range(1, limit + 1):
        nxt = start + rhs(v).integral()
        if nxt == v:
            logger.debug("Picard iteration stationary after %d passes", n)
            return v
        v = nxt
    raise NoConvergence(f"Picard iteration not stationary after {limit} passes")


def solve_linear(
    w: TPolySeries[V] | None,
    d: TOperator[V],
    v0: V,
    *,
    reverse: bool = False,
) -> TPolySeries[V]:
    """Unique solution of ``dv/dt = w + D v``, ``v(0) = v0``.

    ``reverse`` sums the operator terms in the opposite order; the
    result is identical.

    Raises:
        ZerothOrderViolation: if ``w`` or ``D`` has an hbar^0 part.
        NoConvergence: if the iteration fails to settle.
    """
    zero = v0.scale(0)  # type: ignore[attr-defined]
    w = w if w is not None else TPolySeries({}, zero)
    for n, coeff in w.coeffs.items():
        if _valuation(coeff) == 0:
            raise ZerothOrderViolation(f"w has an hbar^0 part at t^{n}")
    check_raises_order(d, [v0, *w.coeffs.values()])
    return solve_picard(lambda v: w + d(v, reverse=reverse), v0)


def ode_residual(
    v: TPolySeries[V], w: TPolySeries[V] | None, d: TOperator[V]
) -> TPolySeries[V]:
    """``dv/dt - w - D v``; zero for a solution."""
    out = v.derivative() - d(v)
    return out - w if w is not None else out


@dataclass(frozen=True, slots=True)
class ExpPrefactorSolution:
    """``f(t) = exp(t d0) h0 g(t)`` with scalar ``d0``."""

    d0: CRational
    h0: HSeries
    g: TPolySeries[HSeries]

    def amplitude(self) -> TPolySeries[HSeries]:
        """``h0 g(t)``, i.e. ``f`` with the scalar exponential stripped."""
        return self.g.map(lambda v: self.h0 * v, self.g.zero)


def _scalar_d0(d0: HSeries | ScalarLike) -> CRational:
    if isinstance(d0, HSeries):
        if not d0.is_scalar or any(k for k, _ in d0.terms):
            raise NonConstantZerothOrder(f"d0 = {d0} is not a scalar constant")
        return d0.constant_term
    return CRational.of(d0)


def solve_exp_prefactor(
    d0: HSeries | ScalarLike,
    d: TOperator[HSeries],
    h: HSeries,
) -> ExpPrefactorSolution:
    """Solve ``df/dt = (d0 + D) f``, ``f(0) = h`` in the form
    ``exp(t d0) h0 g(t)``.

    ``h0`` is the hbar^0 part of ``h``; ``g`` solves
    ``dg/dt = h0^-1 D(h0 g)`` with ``g(0) = h0^-1 h = 1 + O(hbar)``.

    Raises:
        NonConstantZerothOrder: if ``d0`` is not a scalar constant.
        NonInvertibleInitialCondition: if ``h0`` is not invertible.
        ZerothOrderViolation: if ``D`` has an hbar^0 part.
    """
    c = _scalar_d0(d0)
    h0 = h.truncate_hbar(0)
    try:
        h0_inv = series_invert(h0)
    except NonInvertible as exc:
        raise NonInvertibleInitialCondition(f"h0 = {h0} is not invertible") from exc
    conj = TOperator(
        {n: (lambda v, _op=op: h0_inv * _op(h0 * v)) for n, op in d.parts.items()}
    )
    g = solve_linear(None, conj, h0_inv * h)
    return ExpPrefactorSolution(c, h0, g)


@dataclass(frozen=True, slots=True)
class StarExponential:
    """``Exp_star(t d) = exp(t c) g(t)`` with its star-inverse
    ``exp(-t c) g_inv(t)``; ``c`` is the scalar hbar^0 part of ``d``."""

    c: CRational
    g: TPolySeries[HSeries]
    g_inv: TPolySeries[HSeries]


def star_exponential(d: HSeries, star: Product) -> StarExponential:
    """Solve ``df/dt = d * f``, ``f(0) = 1`` and the inverse equation
    ``df^-1/dt = -f^-1 * d``.

    Raises:
        NonConstantZerothOrder: if the hbar^0 part of ``d`` is not a
            scalar constant.
    """
    head = d.truncate_hbar(0)
    c = _scalar_d0(head)
    tail = d - head
    one = HSeries.one(d.profile)
    g = solve_linear(None, TOperator.constant(lambda v: star(tail, v)), one)
    g_inv = solve_linear(
        None, TOperator.constant(lambda v: -star(v, tail)), one
    )
    return StarExponential(c, g, g_inv)


def star_product_t(
    a: TPolySeries[HSeries], b: TPolySeries[HSeries], star: Product
) -> TPolySeries[HSeries]:
    """``a(t) * b(t)`` for a t-independent product."""
    return a.combine(b, star, a.zero)
