"""Polydifferential operators with truncated series coefficients.

A k-cochain is ``sum c hbar^j x^b d^(a_1) (x) .. (x) d^(a_k)`` acting on k
function arguments. Terms are stored flat as ``(j, b, (a_1, .., a_k))``.
Slot orders above Dx are dropped since they annihilate every argument.
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence
from itertools import product
from math import factorial, prod

from starforge.core import (
    ArityMismatch,
    CRational,
    Exponent,
    HSeries,
    TermMap,
    TruncationProfile,
    accumulate,
    add_exponents,
    multi_falling,
    unit_exponent,
)

OpKey = tuple[int, Exponent, tuple[Exponent, ...]]


def _compositions(n: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first, *rest)


def splittings(
    alpha: Exponent, parts: int
) -> Iterator[tuple[int, tuple[Exponent, ...]]]:
    """Multinomial splittings ``alpha = s_0 + .. + s_(parts-1)``.

    Yields ``(coefficient, (s_0, ..))`` with the multinomial coefficient of
    the Leibniz rule for ``d^alpha`` of a product of ``parts`` factors.
    """
    per_coord = [list(_compositions(a, parts)) for a in alpha]
    for choice in product(*per_coord):
        coeff = 1
        for a, comp in zip(alpha, choice, strict=True):
            coeff *= factorial(a) // prod(factorial(c) for c in comp)
        yield coeff, tuple(
            tuple(comp[p] for comp in choice) for p in range(parts)
        )


class PolyDiffOp(TermMap[OpKey]):
    """A polydifferential cochain of fixed ``arity``."""

    __slots__ = ("arity",)

    arity: int

    def __init__(self, terms, profile: TruncationProfile, arity: int) -> None:
        if arity < 0:
            raise ValueError("arity must be >= 0")
        object.__setattr__(self, "arity", arity)
        super().__init__(terms, profile)

    @classmethod
    def _raw_op(
        cls, terms: dict, profile: TruncationProfile, arity: int
    ) -> PolyDiffOp:
        obj = cls._raw(terms, profile)
        object.__setattr__(obj, "arity", arity)
        return obj

    def _like(self, terms: dict) -> PolyDiffOp:
        return PolyDiffOp._raw_op(terms, self.profile, self.arity)

    def _normalize_key(self, key, profile: TruncationProfile) -> OpKey:  # type: ignore[override]
        k, x, alphas = key
        x = tuple(x)
        alphas = tuple(tuple(a) for a in alphas)
        if len(alphas) != self.arity:
            raise ArityMismatch(
                f"term {key} has {len(alphas)} slots, arity is {self.arity}"
            )
        if len(x) != profile.dim or any(len(a) != profile.dim for a in alphas):
            raise ValueError(f"key {key} does not match dim={profile.dim}")
        return (int(k), x, alphas)

    @staticmethod
    def _keep(key: OpKey, profile: TruncationProfile) -> bool:
        k, x, alphas = key
        return (
            0 <= k <= profile.hbar_order
            and sum(x) <= profile.x_degree
            and all(sum(a) <= profile.x_degree for a in alphas)
        )

    def _check(self, other: TermMap) -> None:
        super()._check(other)
        if isinstance(other, PolyDiffOp) and other.arity != self.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PolyDiffOp):
            return NotImplemented
        return (
            self.arity == other.arity
            and self.profile == other.profile
            and self.terms == other.terms
        )

    __hash__ = None  # type: ignore[assignment]

    def reduce(self, profile: TruncationProfile) -> PolyDiffOp:
        return PolyDiffOp(list(self.terms.items()), profile, self.arity)

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, profile: TruncationProfile, arity: int) -> PolyDiffOp:
        return cls._raw_op({}, profile, arity)

    @classmethod
    def from_series(cls, f: HSeries) -> PolyDiffOp:
        """The arity-0 cochain ``f``."""
        return cls._raw_op(
            {(k, x, ()): c for (k, x), c in f.terms.items()}, f.profile, 0
        )

    @classmethod
    def identity(cls, profile: TruncationProfile) -> PolyDiffOp:
        z = (0,) * profile.dim
        return cls({(0, z, (z,)): 1}, profile, 1)

    @classmethod
    def derivation(
        cls, alpha: Exponent, profile: TruncationProfile, coeff: HSeries | None = None
    ) -> PolyDiffOp:
        """``coeff * d^alpha`` as a 1-cochain."""
        coeff = coeff if coeff is not None else HSeries.one(profile)
        return cls(
            [((k, x, (tuple(alpha),)), c) for (k, x), c in coeff.terms.items()],
            profile,
            1,
        )

    @classmethod
    def multiplication(cls, f: HSeries) -> PolyDiffOp:
        """The (non-normalized) 1-cochain ``g -> f g``."""
        z = (0,) * f.profile.dim
        return cls._raw_op(
            {(k, x, (z,)): c for (k, x), c in f.terms.items()}, f.profile, 1
        )

    @classmethod
    def monomial(
        cls,
        alphas: Sequence[Exponent],
        profile: TruncationProfile,
        coeff: HSeries | None = None,
    ) -> PolyDiffOp:
        """``coeff * d^(a_1) (x) .. (x) d^(a_k)``."""
        coeff = coeff if coeff is not None else HSeries.one(profile)
        alphas = tuple(tuple(a) for a in alphas)
        return cls(
            [((k, x, alphas), c) for (k, x), c in coeff.terms.items()],
            profile,
            len(alphas),
        )

    # -- views --------------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree in the shifted cochain complex: ``arity - 1``."""
        return self.arity - 1

    def coefficients(self) -> dict[tuple[Exponent, ...], HSeries]:
        """``{(a_1, .., a_k): coefficient series}``."""
        grouped: dict[tuple[Exponent, ...], list] = {}
        for (k, x, alphas), c in self.terms.items():
            grouped.setdefault(alphas, []).append(((k, x), c))
        return {
            alphas: HSeries(items, self.profile)
            for alphas, items in sorted(grouped.items())
        }

    def hbar_valuation(self) -> int | None:
        return min((key[0] for key in self.terms), default=None)

    def hbar_part(self, k: int) -> PolyDiffOp:
        return self.filter(lambda key: key[0] == k)

    def truncate_hbar(self, order: int) -> PolyDiffOp:
        return self.filter(lambda key: key[0] <= order)

    def shift(self, power: int) -> PolyDiffOp:
        """Multiply by ``hbar^power``; negative powers must divide exactly."""
        if any(key[0] + power < 0 for key in self.terms):
            raise ValueError(f"cochain not divisible by hbar^{-power}")
        return PolyDiffOp(
            [((k + power, x, a), c) for (k, x, a), c in self.terms.items()],
            self.profile,
            self.arity,
        )

    def order(self) -> int:
        """Maximal total derivative order over all slots (-1 for zero)."""
        return max(
            (sum(sum(a) for a in key[2]) for key in self.terms), default=-1
        )

    def is_normalized(self) -> bool:
        """Every term differentiates every slot (vacuous for arity 0)."""
        return all(all(any(a) for a in key[2]) for key in self.terms)

    def normalized(self) -> PolyDiffOp:
        """Drop the terms that leave some slot undifferentiated."""
        return self.filter(lambda key: all(any(a) for a in key[2]))

    def mul_series(self, f: HSeries) -> PolyDiffOp:
        """Multiply every coefficient by ``f``."""
        p = self.profile
        out: dict[OpKey, CRational] = {}
        for (ka, xa, alphas), ca in self.terms.items():
            for (kb, xb), cb in f.terms.items():
                if ka + kb <= p.hbar_order and sum(xa) + sum(xb) <= p.x_degree:
                    accumulate(out, (ka + kb, add_exponents(xa, xb), alphas), ca * cb)
        return self._like(out)

    # -- evaluation ---------------------------------------------------------

    def apply(self, *args: HSeries) -> HSeries:
        """Evaluate on ``arity`` series.

        Raises:
            ArityMismatch: on a wrong number of arguments.
        """
        if len(args) != self.arity:
            raise ArityMismatch(
                f"cochain of arity {self.arity} applied to {len(args)} arguments"
            )
        profile = self.profile
        result = HSeries.zero(profile)
        derived: dict[tuple[int, Exponent], HSeries] = {}
        for alphas, coeff in self.coefficients().items():
            value = coeff
            for slot, (alpha, f) in enumerate(zip(alphas, args, strict=True)):
                key = (slot, alpha)
                if key not in derived:
                    derived[key] = f.diff(alpha)
                value = value * derived[key]
                if value.is_zero:
                    break
            result = result + value
        return result

    def __call__(self, *args: HSeries) -> HSeries:
        return self.apply(*args)

    # -- operadic insertion -------------------------------------------------

    def insert(self, slot: int, other: PolyDiffOp) -> PolyDiffOp:
        """``self o_slot other``: feed ``other``'s output into ``slot``.

        The derivative in ``slot`` is distributed over ``other``'s
        coefficient and its arguments by the Leibniz rule.
        """
        if not 0 <= slot < self.arity:
            raise ArityMismatch(f"slot {slot} out of range for arity {self.arity}")
        self._check_profile(other)
        p = self.profile
        q = other.arity
        arity = self.arity + q - 1
        out: dict[OpKey, CRational] = {}
        split_cache: dict[Exponent, list] = {}
        for (ka, xa, alphas), ca in self.terms.items():
            alpha = alphas[slot]
            splits = split_cache.get(alpha)
            if splits is None:
                splits = list(splittings(alpha, q + 1))
                split_cache[alpha] = splits
            before, after = alphas[:slot], alphas[slot + 1 :]
            for (kb, xb, betas), cb in other.terms.items():
                k = ka + kb
                if k > p.hbar_order:
                    continue
                for mult, parts in splits:
                    s0 = parts[0]
                    f = multi_falling(xb, s0)
                    if not f:
                        continue
                    x_coeff = tuple(b - s for b, s in zip(xb, s0, strict=True))
                    x = add_exponents(xa, x_coeff)
                    if sum(x) > p.x_degree:
                        continue
                    middle = tuple(
                        add_exponents(beta, s)
                        for beta, s in zip(betas, parts[1:], strict=True)
                    )
                    new_alphas = before + middle + after
                    if any(sum(a) > p.x_degree for a in middle):
                        continue
                    accumulate(out, (k, x, new_alphas), ca * cb * (mult * f))
        return PolyDiffOp._raw_op(out, p, arity)

    def _check_profile(self, other: PolyDiffOp) -> None:
        TermMap._check(self, other)

    def compose(self, other: PolyDiffOp) -> PolyDiffOp:
        """Composition of 1-cochains ``self o other``."""
        if self.arity != 1 or other.arity != 1:
            raise ArityMismatch("compose needs two 1-cochains")
        return self.insert(0, other)

    def __matmul__(self, other: PolyDiffOp) -> PolyDiffOp:
        return self.compose(other)

    def __str__(self) -> str:
        from starforge.hochschild._text import format_op

        return format_op(self)


def pointwise(profile: TruncationProfile) -> PolyDiffOp:
    """The commutative product ``m(a, b) = a b`` as a 2-cochain."""
    z = (0,) * profile.dim
    return PolyDiffOp({(0, z, (z, z)): 1}, profile, 2)


def partial_op(i: int, profile: TruncationProfile) -> PolyDiffOp:
    """``d_i`` as a 1-cochain."""
    return PolyDiffOp.derivation(unit_exponent(i, profile.dim), profile)
