"""Finite L-infinity morphisms, their action on MC elements and twisting."""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Any, Generic, TypeVar

from starforge.core import CRational, FiltrationViolation
from starforge.dgla._context import MCContext, sign

X = TypeVar("X")
Y = TypeVar("Y")

StructureMap = Callable[..., Any]


@dataclass(frozen=True, slots=True)
class LInfMorphism(Generic[X, Y]):
    """``F_1 .. F_M`` between two filtered DGLAs; ``F_n`` for ``n > M`` is 0.

    ``structure_maps[n - 1]`` is the n-ary graded-symmetric map ``F_n``
    of degree ``1 - n``.
    """

    source: MCContext[X]
    target: MCContext[Y]
    structure_maps: tuple[StructureMap, ...]

    @property
    def cutoff(self) -> int:
        return len(self.structure_maps)

    def component(self, n: int) -> StructureMap | None:
        if 1 <= n <= self.cutoff:
            return self.structure_maps[n - 1]
        return None

    @classmethod
    def strict(
        cls, source: MCContext[X], target: MCContext[Y], f1: Callable[[X], Y]
    ) -> LInfMorphism[X, Y]:
        """A DGLA morphism viewed as an L-infinity morphism."""
        return cls(source, target, (f1,))

    @classmethod
    def identity(cls, ctx: MCContext[X]) -> LInfMorphism[X, X]:
        return cls(ctx, ctx, (lambda x: x,))


def _scaled(value: Any, n: int) -> Any:
    return value.scale(CRational(Fraction(1, factorial(n))))


def linf_push(f: LInfMorphism[X, Y], alpha: X) -> Y | None:
    """``sum_n 1/n! F_n(alpha, .., alpha)``; ``None`` if every term is zero.

    Raises:
        FiltrationViolation: if ``alpha`` has filtration degree below 1.
    """
    filt = f.source.filt(alpha)
    if filt is not None and filt < 1:
        raise FiltrationViolation(f"alpha has filtration degree {filt} < 1")
    total = None
    for n, fn in enumerate(f.structure_maps, start=1):
        term = _scaled(fn(*([alpha] * n)), n)
        total = term if total is None else total + term
    return total


def linf_twist(f: LInfMorphism[X, Y], alpha: X) -> LInfMorphism[X, Y]:
    """Twisted maps ``F^alpha_n(g..) = sum_k 1/k! F_(n+k)(alpha^k, g..)``.

    The source is twisted by ``alpha`` and the target by ``F_*(alpha)``.
    """
    from starforge.dgla._mc import twist

    if not alpha:
        return f
    pushed = linf_push(f, alpha)
    maps = []
    for n in range(1, f.cutoff + 1):

        def twisted(*gammas: Any, _n: int = n) -> Any:
            total = None
            for k in range(0, f.cutoff - _n + 1):
                fn = f.structure_maps[_n + k - 1]
                term = _scaled(fn(*([alpha] * k), *gammas), k)
                total = term if total is None else total + term
            return total

        maps.append(twisted)
    target = twist(f.target, pushed) if pushed is not None else f.target
    return LInfMorphism(twist(f.source, alpha), target, tuple(maps))


def bracket_defect(f: LInfMorphism[X, Y], g1: X, g2: X) -> Y:
    """Failure of ``F_1`` to respect brackets, corrected by ``F_2``.

    ``F_1[g1, g2] - [F_1 g1, F_1 g2]
    - (d F_2(g1, g2) - F_2(d g1, g2) - (-1)^|g1| F_2(g1, d g2))``,
    which vanishes for an L-infinity morphism.
    """
    src, tgt = f.source, f.target
    f1 = f.structure_maps[0]
    out = f1(src.bracket(g1, g2)) - tgt.bracket(f1(g1), f1(g2))
    f2 = f.component(2)
    if f2 is not None:
        last = f2(g1, src.d(g2))
        if sign(src.degree(g1)) < 0:
            last = -last
        out = out - (tgt.d(f2(g1, g2)) - f2(src.d(g1), g2) - last)
    return out


def intertwining_residual(f: LInfMorphism[X, Y], gamma: X) -> Y:
    """``F_1 (d gamma) - d' (F_1 gamma)`` for the contexts of ``f``."""
    f1 = f.structure_maps[0]
    return f1(f.source.d(gamma)) - f.target.d(f1(gamma))

