"""Transition functions ``G_ab(t) = Exp_*(t c_ab)`` of a constant cocycle.

Constant exponents are tracked exactly as ``r + 2 pi i m`` with rational
``r`` and ``m``; ``exp(2 pi i n) = 1`` is applied only for integral ``n``
at ``t = 1``.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass, field
from fractions import Fraction

import sympy

from starforge.core import (
    CheckFailed,
    CRational,
    HSeries,
    NonConstantCocycle,
    format_scalar,
    to_sympy,
)
from starforge.ode import TPolySeries, star_exponential, star_product_t
from starforge.star._moyal import StarProduct
from starforge.utils import get_logger

logger = get_logger(__name__)

Pair = tuple[int, int]


@dataclass(frozen=True, slots=True)
class Exponent:
    """``rational + two_pi_i * 2 pi i``."""

    rational: CRational = field(default_factory=lambda: CRational.of(0))
    two_pi_i: Fraction = Fraction(0)

    @classmethod
    def of(cls, c: HSeries | Exponent) -> Exponent:
        """Promote a constant series.

        Raises:
            NonConstantCocycle: if ``c`` depends on ``x`` or ``hbar``.
        """
        if isinstance(c, Exponent):
            return c
        if any(k or any(x) for k, x in c.terms):
            raise NonConstantCocycle(f"cocycle value {c} is not a constant")
        return cls(c.constant_term)

    def __add__(self, other: Exponent) -> Exponent:
        return Exponent(self.rational + other.rational, self.two_pi_i + other.two_pi_i)

    def __neg__(self) -> Exponent:
        return Exponent(-self.rational, -self.two_pi_i)

    @property
    def is_zero(self) -> bool:
        return not self.rational and not self.two_pi_i

    def to_sympy(self, t: sympy.Expr | int = 1) -> sympy.Expr:
        """``exp(t * self)``; SymPy rewrites ``exp(2 pi i n)`` to 1."""
        value = to_sympy(self.rational) + 2 * sympy.pi * sympy.I * sympy.Rational(
            self.two_pi_i.numerator, self.two_pi_i.denominator
        )
        return sympy.exp(t * value)

    def __str__(self) -> str:
        parts = []
        if self.rational:
            parts.append(format_scalar(self.rational))
        if self.two_pi_i:
            parts.append(f"{self.two_pi_i} 2pi i")
        return " + ".join(parts) or "0"


@dataclass(frozen=True, slots=True)
class TransitionFunction:
    """``exp(t exponent) g(t)`` with ``g(0) = 1``."""

    exponent: Exponent
    g: TPolySeries[HSeries]
    g_inv: TPolySeries[HSeries]


@dataclass(frozen=True, slots=True)
class TransitionReport:
    functions: dict[Pair, TransitionFunction]
    identity_residuals: dict[int, TPolySeries[HSeries]]
    inverse_residuals: dict[Pair, TPolySeries[HSeries]]
    triple_exponent: Exponent
    triple_amplitude_residual: TPolySeries[HSeries]
    triple_at_one: sympy.Expr

    @property
    def ok(self) -> bool:
        return (
            all(r.is_zero for r in self.identity_residuals.values())
            and all(r.is_zero for r in self.inverse_residuals.values())
            and self.triple_amplitude_residual.is_zero
            and self.triple_at_one == 1
        )

    def lines(self) -> list[str]:
        out = [
            f"G_{a}{b}(t) = exp(t ({f.exponent})) [{f.g}]"
            for (a, b), f in sorted(self.functions.items())
        ]
        out.append(f"triple exponent: {self.triple_exponent}")
        out.append(f"triple product at t=1: {self.triple_at_one}")
        return out


def _complete(cocycle: Mapping[Pair, HSeries | Exponent]) -> dict[Pair, Exponent]:
    out: dict[Pair, Exponent] = {}
    for (a, b), c in cocycle.items():
        e = Exponent.of(c)
        if (b, a) in out and not (out[(b, a)] + e).is_zero:
            raise CheckFailed(f"c_{a}{b} and c_{b}{a} do not cancel")
        out[(a, b)] = e
        out[(b, a)] = -e
    for a in {i for pair in out for i in pair}:
        out.setdefault((a, a), Exponent())
        if not out[(a, a)].is_zero:
            raise CheckFailed(f"c_{a}{a} must vanish")
    return out


def transition_demo(
    star: StarProduct,
    cocycle: Mapping[Pair, HSeries | Exponent],
    winding: int = 0,
) -> TransitionReport:
    """Build ``G_ab`` from constant ``c_ab`` on a cover with three charts and
    check the cocycle identities; ``winding`` is the declared ``n`` with
    ``c_12 + c_23 + c_31 = 2 pi i n``.

    Raises:
        NonConstantCocycle: on a non-constant ``c_ab``.
        CheckFailed: if the data violates the declared cocycle condition.
    """
    exps = _complete(cocycle)
    charts = sorted({a for a, _ in exps})
    if len(charts) != 3:
        raise CheckFailed(f"transition demo needs three charts, got {charts}")
    profile = star.profile
    one = TPolySeries.constant(HSeries.one(profile))
    functions: dict[Pair, TransitionFunction] = {}
    for pair, e in exps.items():
        # the 2 pi i part is scalar and stays in the exponent
        sol = star_exponential(HSeries.constant(e.rational, profile), star)
        functions[pair] = TransitionFunction(e, sol.g, sol.g_inv)
        logger.debug("G_%d%d built with exponent %s", *pair, e)

    def amplitude(*pairs: Pair) -> TPolySeries[HSeries]:
        out = one
        for pair in pairs:
            out = star_product_t(out, functions[pair].g, star)
        return out

    identity_residuals = {a: functions[(a, a)].g - one for a in charts}
    inverse_residuals = {}
    for (a, b) in exps:
        if not (exps[(a, b)] + exps[(b, a)]).is_zero:
            raise CheckFailed(f"exponents of G_{a}{b} and G_{b}{a} do not cancel")
        inverse_residuals[(a, b)] = amplitude((a, b), (b, a)) - one

    i, j, k = charts
    triple = exps[(i, j)] + exps[(j, k)] + exps[(k, i)]
    if triple != Exponent(CRational.of(0), Fraction(winding)):
        raise CheckFailed(
            f"cocycle sum {triple} differs from the declared 2 pi i * {winding}"
        )
    residual = amplitude((i, j), (j, k), (k, i)) - one
    at_one = sympy.simplify(triple.to_sympy(1))
    logger.info("transition demo: triple product at t=1 is %s", at_one)
    return TransitionReport(
        functions,
        identity_residuals,
        inverse_residuals,
        triple,
        residual,
        at_one,
    )
