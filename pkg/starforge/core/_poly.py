"""Polynomials in the base coordinates x_1..x_d truncated at total degree Dx."""

from __future__ import annotations

from math import factorial, prod

from starforge.core._profile import TruncationProfile
from starforge.core._scalar import CRational, ScalarLike
from starforge.core._terms import TermMap, accumulate, add_exponents

Exponent = tuple[int, ...]


def falling(n: int, k: int) -> int:
    """``n (n-1) ... (n-k+1)``; zero when ``k > n``."""
    if k > n:
        return 0
    return factorial(n) // factorial(n - k)


def multi_falling(exp: Exponent, alpha: Exponent) -> int:
    """Coefficient of ``x^(exp-alpha)`` in ``d^alpha x^exp``."""
    return prod(falling(n, k) for n, k in zip(exp, alpha, strict=True))


def unit_exponent(i: int, dim: int, power: int = 1) -> Exponent:
    return tuple(power if j == i else 0 for j in range(dim))


class TruncPoly(TermMap[Exponent]):
    """Sparse polynomial ``sum c_a x^a`` with ``|a| <= Dx``."""

    __slots__ = ()

    @staticmethod
    def _normalize_key(key, profile: TruncationProfile) -> Exponent:
        key = tuple(key)
        if len(key) != profile.dim:
            raise ValueError(
                f"exponent {key} does not match dim={profile.dim}"
            )
        return key

    @staticmethod
    def _keep(key: Exponent, profile: TruncationProfile) -> bool:
        return sum(key) <= profile.x_degree

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, profile: TruncationProfile) -> TruncPoly:
        return cls._raw({}, profile)

    @classmethod
    def constant(cls, c: ScalarLike, profile: TruncationProfile) -> TruncPoly:
        return cls({(0,) * profile.dim: c}, profile)

    @classmethod
    def variable(cls, i: int, profile: TruncationProfile) -> TruncPoly:
        """The coordinate ``x_{i+1}`` (indices are 0-based)."""
        return cls({unit_exponent(i, profile.dim): 1}, profile)

    @classmethod
    def monomial(
        cls, exp: Exponent, profile: TruncationProfile, c: ScalarLike = 1
    ) -> TruncPoly:
        return cls({tuple(exp): c}, profile)

    # -- queries ------------------------------------------------------------

    @property
    def constant_term(self) -> CRational:
        return self.terms.get((0,) * self.profile.dim, CRational())

    def degree(self) -> int | None:
        """Maximal total degree, ``None`` for zero."""
        return max((sum(e) for e in self.terms), default=None)

    def valuation(self) -> int | None:
        """Minimal total degree, ``None`` for zero."""
        return min((sum(e) for e in self.terms), default=None)

    # -- ring structure -----------------------------------------------------

    def __mul__(self, other: TruncPoly) -> TruncPoly:
        self._check(other)
        cap = self.profile.x_degree
        out: dict[Exponent, CRational] = {}
        for ea, ca in self.terms.items():
            da = sum(ea)
            for eb, cb in other.terms.items():
                if da + sum(eb) > cap:
                    continue
                accumulate(out, add_exponents(ea, eb), ca * cb)
        return TruncPoly._raw(out, self.profile)

    def diff(self, alpha: Exponent) -> TruncPoly:
        """``d^alpha`` applied to the polynomial."""
        out: dict[Exponent, CRational] = {}
        for exp, c in self.terms.items():
            f = multi_falling(exp, alpha)
            if f:
                key = tuple(n - k for n, k in zip(exp, alpha, strict=True))
                out[key] = c * f
        return TruncPoly._raw(out, self.profile)

    def partial(self, i: int) -> TruncPoly:
        return self.diff(unit_exponent(i, self.profile.dim))

    def __str__(self) -> str:
        from starforge.core._text import format_element

        return format_element(self)
