"""Equivalence transformations and the Moyal normalizer."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from starforge.core import (
    CRational,
    DegeneratePi1,
    HMatrix,
    HSeries,
    NonInvertible,
    TruncationProfile,
    unit_exponent,
)
from starforge.hochschild import PolyDiffOp, interpolate
from starforge.star._moyal import ConstPoissonMatrix, StarProduct
from starforge.utils import get_logger

logger = get_logger(__name__)


def op_exp(v: PolyDiffOp) -> PolyDiffOp:
    """``exp(v)`` for a 1-cochain of positive hbar-order."""
    total = PolyDiffOp.identity(v.profile)
    power = total
    n = 0
    while True:
        n += 1
        power = power.compose(v).scale(CRational(Fraction(1, n)))
        if not power:
            return total
        total = total + power


def linear_vector_field(m: HMatrix) -> PolyDiffOp:
    """``(M x)^i d_i`` as a 1-cochain."""
    p = m.profile
    d = m.size
    out = PolyDiffOp.zero(p, 1)
    for i in range(d):
        for j in range(d):
            entry = m[i, j]
            if entry:
                coeff = entry * HSeries.variable(j, p)
                out = out + PolyDiffOp.derivation(unit_exponent(i, d), p, coeff)
    return out


@dataclass(frozen=True, slots=True)
class Equivalence:
    """``T = id + hbar T_1 + hbar^2 T_2 + ..`` with ``T(1) = 1``."""

    op: PolyDiffOp

    def __post_init__(self) -> None:
        if self.op.arity != 1:
            raise ValueError("an equivalence is a 1-cochain")
        rest = self.op - PolyDiffOp.identity(self.op.profile)
        v = rest.hbar_valuation()
        if v is not None and v < 1:
            raise ValueError("equivalence must be the identity at hbar^0")
        if not rest.is_normalized():
            raise ValueError("equivalence must fix constants")

    @classmethod
    def identity(cls, profile: TruncationProfile) -> Equivalence:
        return cls(PolyDiffOp.identity(profile))

    @property
    def profile(self) -> TruncationProfile:
        return self.op.profile

    def __call__(self, f: HSeries) -> HSeries:
        return self.op.apply(f)

    def compose(self, other: Equivalence) -> Equivalence:
        """``self o other``."""
        return Equivalence(self.op.compose(other.op))

    def inverse(self) -> Equivalence:
        """Neumann series ``sum (-U)^n`` for ``T = id + U``."""
        ident = PolyDiffOp.identity(self.profile)
        minus_u = ident - self.op
        total = ident
        power = ident
        while True:
            power = power.compose(minus_u)
            if not power:
                break
            total = total + power
        return Equivalence(total)

    def is_identity(self) -> bool:
        return self.op == PolyDiffOp.identity(self.profile)


def conjugate(t: Equivalence, s: StarProduct) -> StarProduct:
    """``f *' g = T^-1(T f * T g)``, re-interpolated from monomials."""
    t_inv = t.inverse()

    def product(f: HSeries, g: HSeries) -> HSeries:
        return t_inv(s(t(f), t(g))) - f * g

    return StarProduct(interpolate(product, 2, s.profile).normalized())


def intertwining_residual(
    t: Equivalence, s_new: StarProduct, s_old: StarProduct, f: HSeries, g: HSeries
) -> HSeries:
    """``T(f *_new g) - T f *_old T g``."""
    return t(s_new(f, g)) - s_old(t(f), t(g))


@dataclass(frozen=True, slots=True)
class Normalizer:
    """``P = .. P_3 P_2`` removing the higher orders of a constant ``pi``.

    ``P f = f(L x)`` with ``L = L_2 L_3 ..`` and
    ``P(f *_pi g) = P f *_(hbar pi_1) P g``.
    """

    chis: dict[int, HMatrix]
    substitution: HMatrix
    equivalence: Equivalence
    target: ConstPoissonMatrix


def solve_chi(pi_m: HMatrix, pi1_inv: HMatrix) -> HMatrix:
    """``chi = 1/2 pi_m pi_1^-1`` solves ``chi pi_1 + pi_1 chi^T = pi_m``."""
    return (pi_m @ pi1_inv).scale(CRational(Fraction(1, 2)))


@dataclass(frozen=True, slots=True)
class MatrixNormalizer:
    """``L = L_2 L_3 ..`` with ``L^-1 pi L^-T = hbar pi_1``.

    Entries may depend on ``x``; every stage acts pointwise.
    """

    chis: dict[int, HMatrix]
    substitution: HMatrix
    inverse_substitution: HMatrix
    target: HMatrix


def hbar_order(m: HMatrix, k: int) -> HMatrix:
    """The coefficient matrix of hbar^k (without the hbar)."""
    return m.map(lambda e: e.filter(lambda key: key[0] == k).shift(-k))


def normalize_matrix(pi: HMatrix) -> MatrixNormalizer:
    """Stage ``m`` conjugates by ``exp(hbar^(m-1) chi_m)``; ``pi_m`` is the
    lowest surviving correction of the current matrix.

    Raises:
        DegeneratePi1: if ``pi_1`` is singular at the origin.
    """
    profile = pi.profile
    n = pi.size
    pi1 = hbar_order(pi, 1)
    try:
        pi1_inv = pi1.inverse()
    except NonInvertible as exc:
        raise DegeneratePi1("pi_1 is degenerate") from exc
    target = pi1.scale(HSeries.hbar(profile))
    current = pi
    total = HMatrix.identity(n, profile)
    total_inv = total
    chis: dict[int, HMatrix] = {}
    for m in range(2, profile.hbar_order + 1):
        pi_m = hbar_order(current, m)
        if pi_m.is_zero:
            continue
        chi = solve_chi(pi_m, pi1_inv)
        chis[m] = chi
        gen = chi.scale(HSeries.hbar(profile, m - 1))
        l_inv = (-gen).exp()
        current = l_inv @ current @ l_inv.transpose()
        total = total @ gen.exp()
        total_inv = l_inv @ total_inv
        logger.debug("normalizer stage %d removed hbar^%d correction", m, m)
    if current != target:
        raise ValueError("normalizer did not reach hbar pi_1")
    return MatrixNormalizer(chis, total, total_inv, target)


def moyal_normalizer(pi: ConstPoissonMatrix) -> Normalizer:
    """``P f = f(L x)`` with ``L`` from ``normalize_matrix``.

    Raises:
        DegeneratePi1: if ``pi_1`` is singular.
    """
    stages = normalize_matrix(pi.matrix)
    profile = pi.profile
    op = PolyDiffOp.identity(profile)
    for m in sorted(stages.chis):
        stage = op_exp(
            linear_vector_field(stages.chis[m].scale(HSeries.hbar(profile, m - 1)))
        )
        op = stage.compose(op)
    return Normalizer(
        stages.chis,
        stages.substitution,
        Equivalence(op),
        ConstPoissonMatrix(stages.target),
    )
