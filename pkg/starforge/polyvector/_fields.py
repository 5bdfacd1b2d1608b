"""Polyvector fields and differential forms as odd superfunctions.

Both are polynomials in x (and hbar) times monomials in d anticommuting
generators: ``theta_i = d/dx^i`` for polyvectors, ``dx^i`` for forms. A
component with sorted index tuple ``S`` is the coefficient of the ordered
monomial, so ``hbar d_1 ^ d_2`` is stored as ``{(1, 0, (0, 1)): 1}``.
Degrees above d vanish automatically.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from typing import TypeVar

from starforge.core import (
    CRational,
    Exponent,
    HMatrix,
    HSeries,
    NonDivisible,
    ScalarLike,
    TermMap,
    TruncationProfile,
    accumulate,
    add_exponents,
    merge_sign,
    multi_falling,
    sort_sign,
    unit_exponent,
)

OddKey = tuple[int, Exponent, tuple[int, ...]]
F = TypeVar("F", bound="SuperField")


class SuperField(TermMap[OddKey]):
    """Common machinery of ``PolyVectorField`` and ``DiffForm``."""

    __slots__ = ()

    @staticmethod
    def _normalize_key(key, profile: TruncationProfile) -> OddKey:
        k, x, odd = key
        x = tuple(x)
        if len(x) != profile.dim:
            raise ValueError(f"exponent {x} does not match dim={profile.dim}")
        odd = tuple(odd)
        if list(odd) != sorted(set(odd)) or any(
            i < 0 or i >= profile.dim for i in odd
        ):
            raise ValueError(f"odd index tuple {odd} must be sorted and in range")
        return (int(k), x, odd)

    @staticmethod
    def _keep(key: OddKey, profile: TruncationProfile) -> bool:
        k, x, _ = key
        return 0 <= k <= profile.hbar_order and sum(x) <= profile.x_degree

    def _check(self, other: TermMap) -> None:
        if type(other) is not type(self):
            raise TypeError(
                f"cannot combine {type(self).__name__} with {type(other).__name__}"
            )
        super()._check(other)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls: type[F], profile: TruncationProfile) -> F:
        return cls._raw({}, profile)

    @classmethod
    def function(cls: type[F], f: HSeries) -> F:
        """Degree-0 element with coefficient ``f``."""
        return cls._raw(
            {(k, x, ()): c for (k, x), c in f.terms.items()}, f.profile
        )

    @classmethod
    def generator(cls: type[F], i: int, profile: TruncationProfile) -> F:
        return cls({(0, (0,) * profile.dim, (i,)): 1}, profile)

    @classmethod
    def from_components(
        cls: type[F],
        components: Mapping[tuple[int, ...], HSeries],
        profile: TruncationProfile,
    ) -> F:
        """Build from ``{index tuple: coefficient}``.

        Unsorted tuples pick up the sign of the sorting permutation; a
        repeated index contributes nothing.
        """
        terms: list[tuple[OddKey, CRational]] = []
        for idx, coeff in components.items():
            if len(set(idx)) != len(idx):
                continue
            sign, ordered = sort_sign(tuple(idx))
            for (k, x), c in coeff.terms.items():
                terms.append(((k, x, ordered), c if sign > 0 else -c))
        return cls(terms, profile)

    @classmethod
    def from_matrix(cls: type[F], m: HMatrix) -> F:
        """Degree-2 element with components ``m[i, j]`` for ``i < j``."""
        n = m.size
        return cls.from_components(
            {(i, j): m[i, j] for i in range(n) for j in range(i + 1, n)},
            m.profile,
        )

    # -- views --------------------------------------------------------------

    def degrees(self) -> set[int]:
        return {len(key[2]) for key in self.terms}

    @property
    def degree(self) -> int:
        """Homogeneous degree; 0 for zero, error for mixed degree."""
        degs = self.degrees()
        if len(degs) > 1:
            raise ValueError(f"{type(self).__name__} has mixed degrees {degs}")
        return degs.pop() if degs else 0

    def part(self: F, degree: int) -> F:
        return self.filter(lambda key: len(key[2]) == degree)

    def component(self, idx: tuple[int, ...]) -> HSeries:
        """Coefficient of ``gen_{idx[0]} ... gen_{idx[-1]}``."""
        if len(set(idx)) != len(idx):
            return HSeries.zero(self.profile)
        sign, ordered = sort_sign(tuple(idx))
        s = HSeries(
            [((k, x), c) for (k, x, odd), c in self.terms.items() if odd == ordered],
            self.profile,
        )
        return s if sign > 0 else -s

    def to_matrix(self) -> HMatrix:
        """Antisymmetric matrix of the degree-2 components."""
        d = self.profile.dim
        return HMatrix.from_function(
            d,
            self.profile,
            lambda i, j: (
                self.component((i, j)) if i != j else HSeries.zero(self.profile)
            ),
        )

    def scalar_part(self) -> HSeries:
        """The degree-0 coefficient as a series."""
        return HSeries(
            [((k, x), c) for (k, x, o), c in self.terms.items() if not o],
            self.profile,
        )

    def is_constant(self) -> bool:
        return all(not any(x) for _, x, _ in self.terms)

    def hbar_valuation(self) -> int | None:
        return min((key[0] for key in self.terms), default=None)

    def hbar_part(self: F, k: int) -> F:
        return self.filter(lambda key: key[0] == k)

    def truncate_hbar(self: F, order: int) -> F:
        return self.filter(lambda key: key[0] <= order)

    def shift(self: F, power: int) -> F:
        """Multiply by ``hbar^power`` (``power`` may be negative if exact)."""
        if any(key[0] + power < 0 for key in self.terms):
            raise NonDivisible(f"{self} is not divisible by hbar^{-power}")
        return type(self)(
            [((k + power, x, o), c) for (k, x, o), c in self.terms.items()],
            self.profile,
        )

    # -- algebra ------------------------------------------------------------

    def __mul__(self: F, other: F | HSeries | ScalarLike) -> F:
        """Wedge product with the Koszul sign."""
        if isinstance(other, HSeries):
            other = type(self).function(other)
        elif not isinstance(other, SuperField):
            return self.scale(other)
        self._check(other)
        p = self.profile
        out: dict[OddKey, CRational] = {}
        for (ka, xa, oa), ca in self.terms.items():
            da = sum(xa)
            for (kb, xb, ob), cb in other.terms.items():
                if ka + kb > p.hbar_order or da + sum(xb) > p.x_degree:
                    continue
                sign = merge_sign(oa, ob)
                if not sign:
                    continue
                c = ca * cb
                key = (ka + kb, add_exponents(xa, xb), tuple(sorted(oa + ob)))
                accumulate(out, key, c if sign > 0 else -c)
        return type(self)._raw(out, p)

    def __rmul__(self: F, other: HSeries | ScalarLike) -> F:
        if isinstance(other, HSeries):
            return type(self).function(other) * self
        return self.scale(other)

    def partial(self: F, i: int) -> F:
        """``d/dx^i`` of every coefficient."""
        e = unit_exponent(i, self.profile.dim)
        out: dict[OddKey, CRational] = {}
        for (k, x, o), c in self.terms.items():
            f = multi_falling(x, e)
            if f:
                out[(k, tuple(a - b for a, b in zip(x, e, strict=True)), o)] = c * f
        return type(self)._raw(out, self.profile)

    def left_derivative(self: F, i: int) -> F:
        """Odd left derivative along generator ``i``."""
        out: dict[OddKey, CRational] = {}
        for (k, x, o), c in self.terms.items():
            if i in o:
                pos = o.index(i)
                out[(k, x, o[:pos] + o[pos + 1 :])] = -c if pos % 2 else c
        return type(self)._raw(out, self.profile)

    def right_derivative(self: F, i: int) -> F:
        """Odd right derivative along generator ``i``."""
        out: dict[OddKey, CRational] = {}
        for (k, x, o), c in self.terms.items():
            if i in o:
                pos = o.index(i)
                after = len(o) - 1 - pos
                out[(k, x, o[:pos] + o[pos + 1 :])] = -c if after % 2 else c
        return type(self)._raw(out, self.profile)


class PolyVectorField(SuperField):
    """Element of X(U)[[hbar]]; generators are ``d_1 .. d_d``."""

    __slots__ = ()

    @property
    def arity(self) -> int:
        return self.degree

    @classmethod
    def vector(
        cls, components: list[HSeries], profile: TruncationProfile
    ) -> PolyVectorField:
        """The vector field ``sum components[i] d_i``."""
        return cls.from_components(
            {(i,): c for i, c in enumerate(components)}, profile
        )

    def __str__(self) -> str:
        from starforge.polyvector._text import format_field

        return format_field(self)


class DiffForm(SuperField):
    """Element of Omega(U)[[hbar]]; generators are ``dx^1 .. dx^d``."""

    __slots__ = ()

    @classmethod
    def one_form(
        cls, components: list[HSeries], profile: TruncationProfile
    ) -> DiffForm:
        return cls.from_components(
            {(i,): c for i, c in enumerate(components)}, profile
        )

    @classmethod
    def exact(cls, f: HSeries) -> DiffForm:
        """``df``."""
        return cls.one_form(
            [f.partial(i) for i in range(f.profile.dim)], f.profile
        )

    def __str__(self) -> str:
        from starforge.polyvector._text import format_field

        return format_field(self)


@dataclass(frozen=True, slots=True)
class GenSection:
    """Section ``(X, xi)`` of the generalized tangent bundle ``TM + T*M``."""

    vec: PolyVectorField
    form: DiffForm

    def __post_init__(self) -> None:
        if self.vec.degrees() - {1} or self.form.degrees() - {1}:
            raise ValueError("GenSection needs a vector field and a 1-form")
        self.vec._check(PolyVectorField.zero(self.form.profile))

    @classmethod
    def zero(cls, profile: TruncationProfile) -> GenSection:
        return cls(PolyVectorField.zero(profile), DiffForm.zero(profile))

    def __add__(self, other: GenSection) -> GenSection:
        return GenSection(self.vec + other.vec, self.form + other.form)

    def __sub__(self, other: GenSection) -> GenSection:
        return GenSection(self.vec - other.vec, self.form - other.form)

    def scale(self, c: ScalarLike) -> GenSection:
        return GenSection(self.vec.scale(c), self.form.scale(c))

    def __str__(self) -> str:
        return f"({self.vec}, {self.form})"
