"""Truncated formal power series in hbar with polynomial coefficients."""

from __future__ import annotations

from collections.abc import Mapping
from typing import TypeVar

from starforge.core._errors import NonDivisible, NonInvertible
from starforge.core._poly import Exponent, TruncPoly, multi_falling, unit_exponent
from starforge.core._profile import TruncationProfile
from starforge.core._scalar import CRational, ScalarLike
from starforge.core._terms import TermMap, accumulate, add_exponents

SeriesKey = tuple[int, Exponent]
S = TypeVar("S", bound=TermMap)


class HSeries(TermMap[SeriesKey]):
    """``sum_k hbar^k f_k(x)`` modulo ``hbar^(N+1)`` and ``(x)^(Dx+1)``.

    Terms are stored flat as ``(k, exponent) -> coefficient``; ``coeffs``
    regroups them by hbar power.
    """

    __slots__ = ()

    @staticmethod
    def _normalize_key(key, profile: TruncationProfile) -> SeriesKey:
        k, exp = key
        exp = tuple(exp)
        if len(exp) != profile.dim:
            raise ValueError(f"exponent {exp} does not match dim={profile.dim}")
        return (int(k), exp)

    @staticmethod
    def _keep(key: SeriesKey, profile: TruncationProfile) -> bool:
        k, exp = key
        return 0 <= k <= profile.hbar_order and sum(exp) <= profile.x_degree

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, profile: TruncationProfile) -> HSeries:
        return cls._raw({}, profile)

    @classmethod
    def constant(
        cls, c: ScalarLike, profile: TruncationProfile, hbar_power: int = 0
    ) -> HSeries:
        return cls({(hbar_power, (0,) * profile.dim): c}, profile)

    @classmethod
    def one(cls, profile: TruncationProfile) -> HSeries:
        return cls.constant(1, profile)

    @classmethod
    def hbar(cls, profile: TruncationProfile, power: int = 1) -> HSeries:
        return cls.constant(1, profile, hbar_power=power)

    @classmethod
    def variable(cls, i: int, profile: TruncationProfile) -> HSeries:
        """The coordinate ``x_{i+1}`` as a series."""
        return cls({(0, unit_exponent(i, profile.dim)): 1}, profile)

    @classmethod
    def monomial(
        cls,
        exp: Exponent,
        profile: TruncationProfile,
        c: ScalarLike = 1,
        hbar_power: int = 0,
    ) -> HSeries:
        return cls({(hbar_power, tuple(exp)): c}, profile)

    @classmethod
    def from_coeffs(
        cls, coeffs: Mapping[int, TruncPoly], profile: TruncationProfile
    ) -> HSeries:
        """Assemble ``sum hbar^k coeffs[k]``."""
        return cls(
            [
                ((k, exp), c)
                for k, poly in coeffs.items()
                for exp, c in poly.terms.items()
            ],
            profile,
        )

    # -- views --------------------------------------------------------------

    @property
    def coeffs(self) -> dict[int, TruncPoly]:
        grouped: dict[int, dict[Exponent, CRational]] = {}
        for (k, exp), c in self.terms.items():
            grouped.setdefault(k, {})[exp] = c
        return {
            k: TruncPoly._raw(terms, self.profile)
            for k, terms in sorted(grouped.items())
        }

    def coeff(self, k: int) -> TruncPoly:
        return TruncPoly._raw(
            {exp: c for (j, exp), c in self.terms.items() if j == k},
            self.profile,
        )

    @property
    def constant_term(self) -> CRational:
        return self.terms.get((0, (0,) * self.profile.dim), CRational())

    def hbar_valuation(self) -> int | None:
        """Lowest hbar power present, ``None`` for zero."""
        return min((k for k, _ in self.terms), default=None)

    def x_degree(self) -> int | None:
        return max((sum(e) for _, e in self.terms), default=None)

    @property
    def is_scalar(self) -> bool:
        """True when no term depends on x."""
        return all(not any(exp) for _, exp in self.terms)

    def truncate_hbar(self, order: int) -> HSeries:
        """Drop hbar powers above ``order``."""
        return self.filter(lambda key: key[0] <= order)

    def truncate_x(self, degree: int) -> HSeries:
        """Drop x-degrees above ``degree``."""
        return self.filter(lambda key: sum(key[1]) <= degree)

    # -- ring structure -----------------------------------------------------

    def __mul__(self, other: HSeries | ScalarLike) -> HSeries:
        if not isinstance(other, HSeries):
            return self.scale(other)
        self._check(other)
        n_cap = self.profile.hbar_order
        x_cap = self.profile.x_degree
        out: dict[SeriesKey, CRational] = {}
        for (ka, ea), ca in self.terms.items():
            da = sum(ea)
            for (kb, eb), cb in other.terms.items():
                if ka + kb > n_cap or da + sum(eb) > x_cap:
                    continue
                accumulate(out, (ka + kb, add_exponents(ea, eb)), ca * cb)
        return HSeries._raw(out, self.profile)

    def __rmul__(self, other: ScalarLike) -> HSeries:
        return self.scale(other)

    def __pow__(self, n: int) -> HSeries:
        result = HSeries.one(self.profile)
        for _ in range(n):
            result = result * self
        return result

    def shift(self, k: int) -> HSeries:
        """Multiply by ``hbar^k``.

        Negative ``k`` divides exactly; a term that would fall below
        ``hbar^0`` raises ``NonDivisible``.
        """
        if k < 0 and any(j + k < 0 for j, _ in self.terms):
            raise NonDivisible(f"{self} is not divisible by hbar^{-k}")
        return HSeries(
            [((j + k, exp), c) for (j, exp), c in self.terms.items()],
            self.profile,
        )

    def diff(self, alpha: Exponent) -> HSeries:
        """``d^alpha / dx^alpha``."""
        out: dict[SeriesKey, CRational] = {}
        for (k, exp), c in self.terms.items():
            f = multi_falling(exp, alpha)
            if f:
                key = tuple(n - a for n, a in zip(exp, alpha, strict=True))
                out[(k, key)] = c * f
        return HSeries._raw(out, self.profile)

    def partial(self, i: int) -> HSeries:
        return self.diff(unit_exponent(i, self.profile.dim))

    def at_origin(self) -> HSeries:
        """Restrict to x = 0 (keep the x-constant part)."""
        return self.filter(lambda key: not any(key[1]))

    def __str__(self) -> str:
        from starforge.core._text import format_element

        return format_element(self)


def series_invert(s: S) -> S:
    """Inverse of ``s`` in the truncated ring.

    Accepts an ``HSeries`` or a dx-free ``WeylElement``.

    Writes ``s = c (1 - u)`` with ``c`` the constant term and ``u`` in the
    maximal ideal (hbar, x, y), then sums the geometric series. ``u`` is
    nilpotent in the quotient, so the loop ends once ``u^n`` vanishes.

    Raises:
        NonInvertible: if the constant term is zero or ``s`` carries ``dx``.
    """
    dx_degrees = getattr(s, "dx_degrees", None)
    if dx_degrees is not None and dx_degrees() - {0}:
        raise NonInvertible(f"{s} has dx-degree above 0")
    c = s.constant_term
    if not c:
        raise NonInvertible(f"constant term of {s} is zero")
    c_inv = c.inverse()
    one = type(s).one(s.profile)
    u = one - s.scale(c_inv)
    result = one
    power = one
    while True:
        power = power * u
        if power.is_zero:
            break
        result = result + power
    return result.scale(c_inv)
