"""Star products on a chart and Moyal products of constant Poisson data."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from starforge.core import (
    CRational,
    HMatrix,
    HSeries,
    NotAntisymmetric,
    NotFormal,
    ScalarLike,
    TruncationProfile,
    accumulate,
    add_exponents,
    unit_exponent,
)
from starforge.hochschild import (
    PolyDiffOp,
    associator,
    gerstenhaber,
    hoch_coboundary,
    pointwise,
)


class ConstPoissonMatrix:
    """Constant antisymmetric ``pi = hbar pi_1 + hbar^2 pi_2 + ..``.

    Raises:
        NotAntisymmetric: if the matrix is not antisymmetric.
        NotFormal: if it has an hbar^0 part.
    """

    __slots__ = ("matrix",)

    matrix: HMatrix

    def __init__(self, matrix: HMatrix) -> None:
        matrix.check_antisymmetric("Poisson matrix")
        if any(not e.is_scalar for row in matrix.rows for e in row):
            raise ValueError("Poisson matrix must have constant entries")
        if not matrix.truncate_hbar(0).is_zero:
            raise NotFormal("Poisson matrix has an hbar^0 part")
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("ConstPoissonMatrix is immutable")

    @classmethod
    def from_orders(
        cls,
        orders: dict[int, list[list[ScalarLike]]],
        profile: TruncationProfile,
    ) -> ConstPoissonMatrix:
        """``sum_k hbar^k orders[k]`` from plain scalar matrices."""
        n = profile.dim
        total = HMatrix.zero(n, profile)
        for k, rows in orders.items():
            total = total + HMatrix.from_scalars(rows, profile, hbar_power=k)
        return cls(total)

    @property
    def profile(self) -> TruncationProfile:
        return self.matrix.profile

    @property
    def dim(self) -> int:
        return self.matrix.size

    def order(self, k: int) -> HMatrix:
        """The coefficient matrix of hbar^k (without the hbar)."""
        return self.matrix.map(lambda e: e.filter(lambda key: key[0] == k).shift(-k))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ConstPoissonMatrix):
            return NotImplemented
        return self.matrix == other.matrix

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        return str(self.matrix)


def compose_constant(a: PolyDiffOp, b: PolyDiffOp) -> PolyDiffOp:
    """Product of two commuting constant-coefficient cochains of equal arity:
    slot multi-indices add and coefficients multiply."""
    if a.arity != b.arity:
        raise ValueError("arity mismatch")
    if any(any(key[1]) for key in (*a.terms, *b.terms)):
        raise ValueError("compose_constant needs constant coefficients")
    p = a.profile
    out: dict = {}
    for (ka, xa, al), ca in a.terms.items():
        for (kb, _, be), cb in b.terms.items():
            if ka + kb > p.hbar_order:
                continue
            slots = tuple(add_exponents(u, v) for u, v in zip(al, be, strict=True))
            if any(sum(s) > p.x_degree for s in slots):
                continue
            accumulate(out, (ka + kb, xa, slots), ca * cb)
    return PolyDiffOp._raw_op(out, p, a.arity)


def poisson_bidifferential(matrix: HMatrix) -> PolyDiffOp:
    """``pi^(ij) d_i (x) d_j`` for a constant matrix."""
    p = matrix.profile
    d = matrix.size
    out = PolyDiffOp.zero(p, 2)
    for i in range(d):
        for j in range(d):
            entry = matrix[i, j]
            if entry:
                out = out + PolyDiffOp.monomial(
                    (unit_exponent(i, d), unit_exponent(j, d)), p, entry
                )
    return out


def exp_constant(b: PolyDiffOp) -> PolyDiffOp:
    """``sum_(n>=1) b^n / n!`` for a constant cochain of positive hbar-order."""
    total = PolyDiffOp.zero(b.profile, b.arity)
    power = b
    n = 1
    while power:
        total = total + power
        n += 1
        power = compose_constant(power, b).scale(CRational(Fraction(1, n)))
    return total


@dataclass(frozen=True, slots=True)
class StarProduct:
    """``f * g = f g + Pi(f, g)`` with ``Pi`` of positive hbar-order."""

    bidiff: PolyDiffOp

    def __post_init__(self) -> None:
        if self.bidiff.arity != 2:
            raise ValueError("a star product needs a 2-cochain")
        v = self.bidiff.hbar_valuation()
        if v is not None and v < 1:
            raise NotFormal("star product correction has an hbar^0 part")

    @property
    def profile(self) -> TruncationProfile:
        return self.bidiff.profile

    @classmethod
    def pointwise(cls, profile: TruncationProfile) -> StarProduct:
        return cls(PolyDiffOp.zero(profile, 2))

    def full(self) -> PolyDiffOp:
        """``m + Pi`` as a single 2-cochain."""
        return pointwise(self.profile) + self.bidiff

    def __call__(self, f: HSeries, g: HSeries) -> HSeries:
        return f * g + self.bidiff.apply(f, g)

    def commutator(self, f: HSeries, g: HSeries) -> HSeries:
        return self(f, g) - self(g, f)

    def power(self, f: HSeries, n: int) -> HSeries:
        out = HSeries.one(self.profile)
        for _ in range(n):
            out = self(out, f)
        return out

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, StarProduct):
            return NotImplemented
        return self.bidiff == other.bidiff

    __hash__ = None  # type: ignore[assignment]


def moyal(pi: ConstPoissonMatrix) -> StarProduct:
    """``f * g = m exp(pi^(ij) d_i (x) d_j)(f (x) g)``; no factor 1/2, so
    ``[x^i, x^j]_* = 2 pi^(ij)``."""
    return StarProduct(exp_constant(poisson_bidifferential(pi.matrix)))


def assoc_residual(s: StarProduct, f: HSeries, g: HSeries, h: HSeries) -> HSeries:
    """``(f * g) * h - f * (g * h)``."""
    return s(s(f, g), h) - s(f, s(g, h))


def mc_form(s: StarProduct) -> PolyDiffOp:
    """``d Pi + 1/2 [Pi, Pi]_G``; equals minus the associator cochain."""
    pi = s.bidiff
    return hoch_coboundary(pi) + gerstenhaber(pi, pi).scale(CRational(Fraction(1, 2)))


def associator_op(s: StarProduct) -> PolyDiffOp:
    return associator(s.full())
