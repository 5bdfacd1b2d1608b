"""Exact Gaussian rationals, the scalar field Q(i) of every computation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from starforge.core._errors import NonInvertible

ScalarLike = Union["CRational", Fraction, int]

_ZERO = Fraction(0)


@dataclass(frozen=True, slots=True)
class CRational:
    """A complex number ``re + im*i`` with exact rational parts.

    ``Fraction`` keeps both parts in lowest terms with a positive
    denominator, so equality is structural.
    """

    re: Fraction = _ZERO
    im: Fraction = _ZERO

    def __post_init__(self) -> None:
        if not isinstance(self.re, Fraction):
            object.__setattr__(self, "re", Fraction(self.re))
        if not isinstance(self.im, Fraction):
            object.__setattr__(self, "im", Fraction(self.im))

    @classmethod
    def _make(cls, re: Fraction, im: Fraction) -> CRational:
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    @classmethod
    def of(cls, value: ScalarLike) -> CRational:
        """Coerce an int, Fraction or CRational."""
        if isinstance(value, CRational):
            return value
        return cls._make(Fraction(value), _ZERO)

    @property
    def is_real(self) -> bool:
        return not self.im

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __neg__(self) -> CRational:
        return CRational._make(-self.re, -self.im)

    def __add__(self, other: ScalarLike) -> CRational:
        o = CRational.of(other)
        return CRational._make(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: ScalarLike) -> CRational:
        o = CRational.of(other)
        return CRational._make(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: ScalarLike) -> CRational:
        return CRational.of(other) - self

    def __mul__(self, other: ScalarLike) -> CRational:
        o = CRational.of(other)
        if not self.im and not o.im:
            return CRational._make(self.re * o.re, _ZERO)
        return CRational._make(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def inverse(self) -> CRational:
        """Multiplicative inverse; raises ``NonInvertible`` on zero."""
        if not self:
            raise NonInvertible("zero has no inverse in Q(i)")
        if not self.im:
            return CRational._make(1 / self.re, _ZERO)
        norm = self.re * self.re + self.im * self.im
        return CRational._make(self.re / norm, -self.im / norm)

    def __truediv__(self, other: ScalarLike) -> CRational:
        return self * CRational.of(other).inverse()

    def __rtruediv__(self, other: ScalarLike) -> CRational:
        return CRational.of(other) * self.inverse()

    def conjugate(self) -> CRational:
        return CRational._make(self.re, -self.im)

    def __str__(self) -> str:
        return format_scalar(self)


ZERO = CRational()
ONE = CRational(Fraction(1))
I = CRational(_ZERO, Fraction(1))


def _frac_text(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def format_scalar(c: CRational) -> str:
    """Render ``c`` as ``p/q``, ``r/s*i`` or ``p/q+r/s*i``."""
    if not c.im:
        return _frac_text(c.re)
    imag = f"{_frac_text(c.im)}*i"
    if not c.re:
        return imag
    sign = "+" if c.im > 0 else ""
    return f"{_frac_text(c.re)}{sign}{imag}"
