"""Maurer-Cartan residuals, the gauge action and Campbell-Hausdorff."""

from __future__ import annotations

from fractions import Fraction
from functools import cache
from math import factorial
from typing import TypeVar

import sympy

from starforge.core import (
    CRational,
    FiltrationViolation,
    NonTermination,
)
from starforge.dgla._context import MAX_SERIES_STEPS, MCContext
from starforge.utils import get_logger

logger = get_logger(__name__)

X = TypeVar("X")


def _require_filt(ctx: MCContext[X], x: X, what: str) -> int | None:
    f = ctx.filt(x)
    if f is not None and f < 1:
        raise FiltrationViolation(f"{what} has filtration degree {f} < 1")
    return f


def _frac(n: int, d: int = 1) -> CRational:
    return CRational(Fraction(n, d))


def mc_residual(alpha: X, ctx: MCContext[X]) -> X:
    """``d alpha + 1/2 [alpha, alpha]``.

    Raises:
        FiltrationViolation: if ``alpha`` has filtration degree below 1.
    """
    _require_filt(ctx, alpha, "alpha")
    return ctx.d(alpha) + ctx.bracket(alpha, alpha).scale(_frac(1, 2))  # type: ignore[operator, attr-defined]


def gauge_action(alpha: X, xi: X, ctx: MCContext[X]) -> X:
    """Right action of ``exp(xi)`` on the Maurer-Cartan element ``alpha``.

    ``alpha^exp(xi) = exp(ad) alpha + ((exp(ad) - 1) / ad) d xi`` with
    ``ad = [., xi]``; both series are summed until a term vanishes.

    Raises:
        FiltrationViolation: if ``xi`` has filtration degree below 1.
        NonTermination: if the series does not die out.
    """
    _require_filt(ctx, xi, "xi")
    result = alpha
    term_a = alpha
    term_d = ctx.d(xi)
    result = result + term_d  # type: ignore[operator]
    n = 0
    while term_a or term_d:
        n += 1
        if n > MAX_SERIES_STEPS:
            raise NonTermination(
                f"gauge action series still alive after {MAX_SERIES_STEPS} steps"
            )
        term_a = ctx.bracket(term_a, xi).scale(_frac(1, n))  # type: ignore[attr-defined]
        term_d = ctx.bracket(term_d, xi).scale(_frac(1, n + 1))  # type: ignore[attr-defined]
        result = result + term_a + term_d  # type: ignore[operator]
    logger.debug("gauge action on %s converged after %d steps", ctx.name, n)
    return result


@cache
def bernoulli_even(p: int) -> Fraction:
    """``B_2p`` as an exact fraction."""
    b = sympy.bernoulli(2 * p)
    return Fraction(int(b.p), int(b.q))


def _compositions(n: int, parts: int):
    if parts == 1:
        if n >= 1:
            yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in _compositions(n - first, parts - 1):
            yield (first, *rest)


def campbell_hausdorff(xi: X, eta: X, ctx: MCContext[X]) -> X:
    """``log(exp(xi) exp(eta))`` via the graded recursion

    ``(n+1) Z_(n+1) = 1/2 [xi - eta, Z_n]
    + sum_p B_2p/(2p)! sum_(k_1+..+k_2p = n) [Z_k1, [.., [Z_k2p, xi + eta]]]``

    with ``Z_1 = xi + eta``. The recursion runs until the homogeneous
    components are forced into the vanishing range of the filtration.

    Raises:
        FiltrationViolation: if either argument has filtration below 1.
        NonTermination: if the filtration does not grow.
    """
    f_xi = _require_filt(ctx, xi, "xi")
    f_eta = _require_filt(ctx, eta, "eta")
    low = min(f for f in (f_xi, f_eta, ctx.bound + 1) if f is not None)
    s = xi + eta  # type: ignore[operator]
    diff = xi - eta  # type: ignore[operator]
    z: list[X] = [s]
    total = s
    n = 1
    while (n + 1) * low <= ctx.bound:
        if n >= MAX_SERIES_STEPS:
            raise NonTermination("Campbell-Hausdorff recursion does not terminate")
        acc = ctx.bracket(diff, z[n - 1]).scale(_frac(1, 2))  # type: ignore[attr-defined]
        p = 1
        while 2 * p <= n:
            coeff = bernoulli_even(p) / factorial(2 * p)
            if coeff:
                for ks in _compositions(n, 2 * p):
                    nested = s
                    for k in reversed(ks):
                        nested = ctx.bracket(z[k - 1], nested)
                    acc = acc + nested.scale(CRational(coeff))  # type: ignore[operator, attr-defined]
            p += 1
        z_next = acc.scale(_frac(1, n + 1))  # type: ignore[attr-defined]
        z.append(z_next)
        total = total + z_next  # type: ignore[operator]
        n += 1
    logger.debug("Campbell-Hausdorff on %s used %d orders", ctx.name, n)
    return total


def twist(ctx: MCContext[X], alpha: X) -> MCContext[X]:
    """The context with differential ``d + [alpha, .]``."""
    if not alpha:
        return ctx
    base = ctx

    def twisted(x: X) -> X:
        return base.d(x) + base.bracket(alpha, x)  # type: ignore[operator]

    return ctx.with_differential(twisted, f"{ctx.name}^alpha")
