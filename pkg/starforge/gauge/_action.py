"""The B-field action ``pi -> a(B, pi)`` on formal bivectors.

Matrices act on row covectors: ``pi#(xi) = xi P`` and ``B#(X) = X B``, so
``a(B, pi)# = pi# (id + B# pi#)^-1`` is the matrix ``(I + P B)^-1 P``.
Along ``t`` it solves the Riccati equation ``dP/dt = -P B P``.
"""

from __future__ import annotations

from dataclasses import dataclass

from starforge.core import (
    HMatrix,
    NotClosed,
    NotFormal,
    ScalarLike,
)
from starforge.ode import TPolySeries, solve_picard
from starforge.polyvector import (
    DiffForm,
    PolyVectorField,
    de_rham,
    is_poisson,
    pi_sharp,
    schouten,
)
from starforge.utils import get_logger

logger = get_logger(__name__)


def bivector_matrix(pi: PolyVectorField) -> HMatrix:
    if pi.degrees() - {2}:
        raise ValueError(f"expected a bivector, got degrees {sorted(pi.degrees())}")
    return pi.to_matrix()


def check_gauge_input(b: DiffForm, pi: PolyVectorField) -> None:
    """Raises:
    NotClosed: if ``d b`` is nonzero within the profile.
    NotFormal: if ``pi`` has an hbar^0 part.
    """
    if b.degrees() - {2}:
        raise ValueError("B-field must be a 2-form")
    db = de_rham(b)
    if db:
        raise NotClosed(f"B-field is not closed: dB = {db}")
    if pi.hbar_part(0):
        raise NotFormal(f"bivector has an hbar^0 part: {pi.hbar_part(0)}")


def gauge_matrix(b: HMatrix, p: HMatrix) -> HMatrix:
    """``(I + P B)^-1 P``; antisymmetric whenever ``P`` and ``B`` are."""
    one = HMatrix.identity(p.size, p.profile)
    out = (one + p @ b).inverse() @ p
    out.check_antisymmetric("gauge-transformed bivector")
    return out


def gauge_transform(b: DiffForm, pi: PolyVectorField) -> PolyVectorField:
    """``a(B, pi)`` by Neumann inversion of its sharp map.

    Raises:
        NotClosed: if ``B`` is not closed.
        NotFormal: if ``pi`` has an hbar^0 part.
    """
    check_gauge_input(b, pi)
    out = gauge_matrix(b.to_matrix(), bivector_matrix(pi))
    return PolyVectorField.from_matrix(out)


def riccati_flow(p: HMatrix, b: HMatrix) -> TPolySeries[HMatrix]:
    """``P_t`` with ``dP_t/dt = -P_t B P_t`` and ``P_0 = P``."""

    def rhs(v: TPolySeries[HMatrix]) -> TPolySeries[HMatrix]:
        return v.combine(v, lambda x, y: -(x @ b @ y), v.zero)

    flow = solve_picard(rhs, p)
    logger.debug("Riccati flow has t-degree %d", flow.t_degree)
    return flow


def gauge_flow(b: DiffForm, pi: PolyVectorField) -> TPolySeries[PolyVectorField]:
    """``a(tB, pi)`` as a polynomial in ``t``."""
    check_gauge_input(b, pi)
    flow = riccati_flow(bivector_matrix(pi), b.to_matrix())
    return flow.map(PolyVectorField.from_matrix, PolyVectorField.zero(pi.profile))


def gauge_transform_ode(
    b: DiffForm, pi: PolyVectorField, t: ScalarLike = 1
) -> PolyVectorField:
    """``a(tB, pi)`` from the Riccati flow; equals ``gauge_transform(tB, pi)``."""
    return gauge_flow(b, pi).at(t)


def group_action_residual(
    b1: DiffForm, b2: DiffForm, pi: PolyVectorField
) -> PolyVectorField:
    """``a(B1, a(B2, pi)) - a(B1 + B2, pi)``."""
    return gauge_transform(b1, gauge_transform(b2, pi)) - gauge_transform(b1 + b2, pi)


def jacobi_preservation_residual(b: DiffForm, pi: PolyVectorField) -> PolyVectorField:
    """``[a, a]`` for ``a = a(B, pi)``; zero whenever ``[pi, pi]`` is."""
    a = gauge_transform(b, pi)
    return schouten(a, a)


@dataclass(frozen=True, slots=True)
class ExactEquivalenceResidual:
    """``d/dt a_t - [a_t, X_t]`` with ``X_t = -a_t#(theta)``.

    The identity only holds for Poisson ``pi``; ``pi_is_poisson`` records
    whether the residual is expected to vanish.
    """

    residual: TPolySeries[PolyVectorField]
    generator: TPolySeries[PolyVectorField]
    pi_is_poisson: bool

    @property
    def ok(self) -> bool:
        return self.residual.is_zero


def exact_equivalence_residual(
    theta: DiffForm, pi: PolyVectorField
) -> ExactEquivalenceResidual:
    """Check that ``B = d theta`` acts on ``pi`` through the flow of the
    vector fields ``X_t``, i.e. by equivalences."""
    b = de_rham(theta)
    zero = PolyVectorField.zero(pi.profile)
    a_t = gauge_flow(b, pi)
    x_t = a_t.map(lambda a: -pi_sharp(a, theta), zero)
    residual = a_t.derivative() - a_t.combine(x_t, schouten, zero)
    return ExactEquivalenceResidual(residual, x_t, is_poisson(pi))
