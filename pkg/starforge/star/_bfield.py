"""Equivalence flow of Moyal products under an exact constant B-field.

``pi_t`` solves ``dP/dt = -P B P`` (the sharp-map form of the gauge
action of ``tB``), ``V^t = -pi_t# theta`` and ``T^t`` solves
``dT/dt = T o V^t`` with ``T^0 = id``. Then
``T^t(f *_t g) = T^t f * T^t g`` for every ``t``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from starforge.core import CRational, HMatrix, NotClosed, unit_exponent
from starforge.gauge import riccati_flow
from starforge.hochschild import PolyDiffOp, pointwise
from starforge.ode import TOperator, TPolySeries, solve_linear
from starforge.polyvector import (
    DiffForm,
    PolyVectorField,
    de_rham,
    linear_primitive,
    pi_sharp,
)
from starforge.star._equivalence import Equivalence
from starforge.star._moyal import (
    ConstPoissonMatrix,
    StarProduct,
    compose_constant,
    moyal,
    poisson_bidifferential,
)
from starforge.utils import get_logger

logger = get_logger(__name__)


def vector_field_op(x: PolyVectorField) -> PolyDiffOp:
    """``X^i d_i`` as a 1-cochain."""
    p = x.profile
    d = p.dim
    out = PolyDiffOp.zero(p, 1)
    for i in range(d):
        coeff = x.component((i,))
        if coeff:
            out = out + PolyDiffOp.derivation(unit_exponent(i, d), p, coeff)
    return out


@dataclass(frozen=True, slots=True)
class BFieldFlow:
    """Everything the flow produces; ``residual`` is ``D^t`` as a
    polynomial in ``t`` of 2-cochains and vanishes identically."""

    theta: DiffForm
    pi_t: TPolySeries[HMatrix]
    generator: TPolySeries[PolyDiffOp]
    flow: TPolySeries[PolyDiffOp]
    equivalence: Equivalence
    product: StarProduct
    residual: TPolySeries[PolyDiffOp]

    def matrix_at(self, t: int) -> ConstPoissonMatrix:
        return ConstPoissonMatrix(self.pi_t.at(t))


def _moyal_t(pi_t: TPolySeries[HMatrix]) -> TPolySeries[PolyDiffOp]:
    """``m exp(pi_t^(ij) d_i (x) d_j)`` with polynomial ``t``."""
    profile = pi_t.zero.profile
    zero = PolyDiffOp.zero(profile, 2)
    base = pi_t.map(poisson_bidifferential, zero)
    total = TPolySeries.constant(pointwise(profile), zero)
    power = base
    n = 1
    while not power.is_zero:
        total = total + power
        n += 1
        power = power.combine(base, compose_constant, zero).scale(
            CRational(Fraction(1, n))
        )
    return total


def intertwining_family(
    flow: TPolySeries[PolyDiffOp], pi_t: TPolySeries[HMatrix]
) -> TPolySeries[PolyDiffOp]:
    """``D^t = T^t o *_t - *_0 o (T^t (x) T^t)`` as a polynomial in ``t``."""
    profile = pi_t.zero.profile
    zero = PolyDiffOp.zero(profile, 2)
    star_t = _moyal_t(pi_t)
    star_0 = pointwise(profile) + moyal(ConstPoissonMatrix(pi_t.coeff(0))).bidiff
    left = flow.combine(star_t, lambda t, m: t.insert(0, m), zero)
    once = flow.map(lambda t: star_0.insert(0, t), zero)
    right = once.combine(flow, lambda m, t: m.insert(1, t), zero)
    return left - right


def bfield_equivalence(pi: ConstPoissonMatrix, b: DiffForm) -> BFieldFlow:
    """Flow ``T^t`` for the constant B-field ``b`` and the product at ``t = 1``.

    Raises:
        NotClosed: if ``d b`` is nonzero.
        ValueError: if ``b`` is not a constant 2-form.
    """
    if de_rham(b):
        raise NotClosed(f"B-field is not closed: dB = {de_rham(b)}")
    theta = linear_primitive(b)
    profile = pi.profile
    pi_t = riccati_flow(pi.matrix, b.to_matrix())
    logger.debug("pi_t has t-degree %d", pi_t.t_degree)
    op_zero = PolyDiffOp.zero(profile, 1)
    generator = pi_t.map(
        lambda m: -vector_field_op(pi_sharp(PolyVectorField.from_matrix(m), theta)),
        op_zero,
    )
    parts = {
        n: (lambda t, _v=v: t.compose(_v)) for n, v in generator.coeffs.items()
    }
    flow = solve_linear(None, TOperator(parts), PolyDiffOp.identity(profile))
    t_one = Equivalence(flow.at(1))
    product = moyal(ConstPoissonMatrix(pi_t.at(1)))
    residual = intertwining_family(flow, pi_t)
    logger.debug(
        "B-field flow: T has t-degree %d, residual %s",
        flow.t_degree,
        "zero" if residual.is_zero else "nonzero",
    )
    return BFieldFlow(theta, pi_t, generator, flow, t_one, product, residual)
