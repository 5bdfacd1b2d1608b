"""Filtered DGLA presentations over which Maurer-Cartan theory runs."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, replace
from typing import Any, Generic, TypeVar

from starforge.core import TruncationProfile
from starforge.hochschild import PolyDiffOp, gerstenhaber, hoch_coboundary
from starforge.polyvector import PolyVectorField, schouten

X = TypeVar("X")

MAX_SERIES_STEPS = 64


def sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


@dataclass(frozen=True, slots=True)
class MCContext(Generic[X]):
    """A filtered DGLA ``(L, d, [., .])`` given by its structure maps.

    ``differential`` may be ``None`` for ``d = 0``. ``filt`` returns the
    filtration degree of an element (``None`` for zero) and ``degree`` its
    homogeneous Lie degree. Carrier elements must support ``+``, ``-``,
    ``scale`` and truthiness.
    """

    name: str
    bracket: Callable[[X, X], X]
    filt: Callable[[X], int | None]
    degree: Callable[[X], int]
    bound: int
    differential: Callable[[X], X] | None = None

    def d(self, x: X) -> X:
        if self.differential is None:
            return x.scale(0)  # type: ignore[attr-defined]
        return self.differential(x)

    def with_differential(
        self, differential: Callable[[X], X], name: str
    ) -> MCContext[X]:
        return replace(self, differential=differential, name=name)


def _hbar_filt(x: Any) -> int | None:
    return x.hbar_valuation()


def polyvector_context(profile: TruncationProfile) -> MCContext[PolyVectorField]:
    """``(X^(.+1)[[hbar]], 0, [., .]_SN)`` filtered by hbar-order."""
    return MCContext(
        name="polyvector",
        bracket=schouten,
        filt=_hbar_filt,
        degree=lambda p: p.degree - 1,
        bound=profile.hbar_order,
    )


def cochain_context(
    profile: TruncationProfile, product: PolyDiffOp | None = None
) -> MCContext[PolyDiffOp]:
    """``(C^(.+1)[[hbar]], d_m, [., .]_G)`` filtered by hbar-order.

    ``product`` is the 2-cochain ``m`` defining the differential; the
    default is the pointwise product.
    """
    return MCContext(
        name="cochain",
        bracket=gerstenhaber,
        filt=_hbar_filt,
        degree=lambda p: p.degree,
        bound=profile.hbar_order,
        differential=lambda p: hoch_coboundary(p, product),
    )


def differential_square(ctx: MCContext[X], v: X) -> X:
    """``d(d v)``; zero for a genuine differential."""
    return ctx.d(ctx.d(v))


def jacobi_residual(ctx: MCContext[X], a: X, b: X, c: X) -> X:
    """``[a, [b, c]] - [[a, b], c] - (-1)^(|a||b|) [b, [a, c]]``."""
    br = ctx.bracket
    third = br(b, br(a, c))
    if sign(ctx.degree(a) * ctx.degree(b)) < 0:
        third = -third  # type: ignore[operator]
    return br(a, br(b, c)) - br(br(a, b), c) - third  # type: ignore[operator]


def leibniz_residual(ctx: MCContext[X], a: X, b: X) -> X:
    """``d[a, b] - [da, b] - (-1)^|a| [a, db]``."""
    br = ctx.bracket
    last = br(a, ctx.d(b))
    if sign(ctx.degree(a)) < 0:
        last = -last  # type: ignore[operator]
    return ctx.d(br(a, b)) - br(ctx.d(a), b) - last  # type: ignore[operator]
