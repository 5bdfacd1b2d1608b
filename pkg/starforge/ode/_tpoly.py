"""Polynomials in a formal time ``t`` with coefficients in a carrier space.

The carrier (``HSeries``, ``PolyDiffOp``, ``PolyVectorField``, ``HMatrix``)
holds its own hbar-expansion, so an element of ``(V[t])[[hbar]]`` truncated
at hbar^N is a finite map ``t-power -> carrier value``. Carriers must
support ``+``, ``-``, ``scale``, ``is_zero`` and ``hbar_valuation``.
"""

from __future__ import annotations

from collections.abc import Callable, Mapping
from fractions import Fraction
from typing import Any, Generic, TypeVar

from starforge.core import CRational, ScalarLike

V = TypeVar("V")
W = TypeVar("W")


class TPolySeries(Generic[V]):
    """``sum_n t^n v_n`` with carrier coefficients ``v_n``."""

    __slots__ = ("coeffs", "zero")

    coeffs: dict[int, V]
    zero: V

    def __init__(self, coeffs: Mapping[int, V], zero: V) -> None:
        clean = {
            n: v
            for n, v in coeffs.items()
            if not v.is_zero  # type: ignore[attr-defined]
        }
        if any(n < 0 for n in clean):
            raise ValueError("t-powers must be >= 0")
        object.__setattr__(self, "coeffs", dict(sorted(clean.items())))
        object.__setattr__(self, "zero", zero)

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("TPolySeries is immutable")

    @classmethod
    def constant(cls, v: V, zero: V | None = None) -> TPolySeries[V]:
        return cls({0: v}, zero if zero is not None else v.scale(0))  # type: ignore[attr-defined]

    # -- queries ------------------------------------------------------------

    def coeff(self, n: int) -> V:
        return self.coeffs.get(n, self.zero)

    @property
    def t_degree(self) -> int:
        return max(self.coeffs, default=-1)

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def hbar_valuation(self) -> int | None:
        vals = [
            v
            for c in self.coeffs.values()
            if (v := c.hbar_valuation()) is not None  # type: ignore[attr-defined]
        ]
        return min(vals, default=None)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TPolySeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    # -- linear structure ---------------------------------------------------

    def _merge(self, other: TPolySeries[V], fn: Callable[[V, V], V]) -> TPolySeries[V]:
        keys = set(self.coeffs) | set(other.coeffs)
        return TPolySeries(
            {n: fn(self.coeff(n), other.coeff(n)) for n in keys}, self.zero
        )

    def __add__(self, other: TPolySeries[V]) -> TPolySeries[V]:
        return self._merge(other, lambda a, b: a + b)  # type: ignore[operator]

    def __sub__(self, other: TPolySeries[V]) -> TPolySeries[V]:
        return self._merge(other, lambda a, b: a - b)  # type: ignore[operator]

    def __neg__(self) -> TPolySeries[V]:
        return TPolySeries({n: -v for n, v in self.coeffs.items()}, self.zero)  # type: ignore[operator]

    def scale(self, c: ScalarLike) -> TPolySeries[V]:
        return TPolySeries(
            {n: v.scale(c) for n, v in self.coeffs.items()},  # type: ignore[attr-defined]
            self.zero,
        )

    def map(self, fn: Callable[[V], W], zero: W) -> TPolySeries[W]:
        return TPolySeries({n: fn(v) for n, v in self.coeffs.items()}, zero)

    def combine(
        self, other: TPolySeries[W], op: Callable[[V, W], Any], zero: Any
    ) -> TPolySeries[Any]:
        """Bilinear product ``sum t^(a+b) op(self_a, other_b)``."""
        out: dict[int, Any] = {}
        for a, x in self.coeffs.items():
            for b, y in other.coeffs.items():
                value = op(x, y)
                out[a + b] = value if a + b not in out else out[a + b] + value
        return TPolySeries(out, zero)

    # -- calculus in t ------------------------------------------------------

    def derivative(self) -> TPolySeries[V]:
        return TPolySeries(
            {
                n - 1: v.scale(n)  # type: ignore[attr-defined]
                for n, v in self.coeffs.items()
                if n > 0
            },
            self.zero,
        )

    def integral(self) -> TPolySeries[V]:
        """``int_0^t``."""
        return TPolySeries(
            {
                n + 1: v.scale(CRational(Fraction(1, n + 1)))  # type: ignore[attr-defined]
                for n, v in self.coeffs.items()
            },
            self.zero,
        )

    def at(self, t: ScalarLike) -> V:
        """Substitute an exact scalar for ``t``."""
        t = CRational.of(t)
        total = self.zero
        power = CRational.of(1)
        for n in range(self.t_degree + 1):
            if n in self.coeffs:
                total = total + self.coeffs[n].scale(power)  # type: ignore[operator, attr-defined]
            power = power * t
        return total

    def rescale_time(self, factor: ScalarLike) -> TPolySeries[V]:
        """``v(factor * t)``."""
        factor = CRational.of(factor)
        out = {}
        power = CRational.of(1)
        for n in range(self.t_degree + 1):
            if n in self.coeffs:
                out[n] = self.coeffs[n].scale(power)  # type: ignore[attr-defined]
            power = power * factor
        return TPolySeries(out, self.zero)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"t^{n} ({v})" for n, v in self.coeffs.items())

    def __repr__(self) -> str:
        return f"TPolySeries({self})"


class TOperator(Generic[V]):
    """``D(t) = sum_n t^n D_n`` with linear maps ``D_n`` on the carrier."""

    __slots__ = ("parts",)

    parts: dict[int, Callable[[V], V]]

    def __init__(self, parts: Mapping[int, Callable[[V], V]]) -> None:
        object.__setattr__(self, "parts", dict(sorted(parts.items())))

    def __setattr__(self, name: str, value: Any) -> None:
        raise AttributeError("TOperator is immutable")

    @classmethod
    def constant(cls, op: Callable[[V], V]) -> TOperator[V]:
        return cls({0: op})

    @classmethod
    def zero(cls) -> TOperator[V]:
        return cls({})

    def __call__(self, v: TPolySeries[V], reverse: bool = False) -> TPolySeries[V]:
        out: dict[int, V] = {}
        parts = sorted(self.parts.items(), reverse=reverse)
        coeffs = sorted(v.coeffs.items(), reverse=reverse)
        for a, op in parts:
            for b, x in coeffs:
                value = op(x)
                out[a + b] = value if a + b not in out else out[a + b] + value  # type: ignore[operator]
        return TPolySeries(out, v.zero)

    def scale(self, c: ScalarLike) -> TOperator[V]:
        return TOperator(
            {
                n: (lambda x, _op=op: _op(x).scale(c))  # type: ignore[attr-defined]
                for n, op in self.parts.items()
            }
        )
