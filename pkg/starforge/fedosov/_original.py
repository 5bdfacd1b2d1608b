"""The original Fedosov product, reached through the fiberwise normalizer.

The normalizer ``P(a)(y) = a(L(x) y)`` satisfies
``P(a <>_m b) = P a <>_F P b`` where ``<>_F`` only sees ``hbar pi_1``.
Conjugating ``D`` by ``P`` gives ``D^F = nabla_0 - delta + (1/hbar)[r^F, .]_F``
with ``nabla_0 = P nabla P^-1`` and ``r^F = P b + dx^i Omega^F_ij y^j``,
``Omega^F = (1/2) pi_1^-1`` being the matrix that makes ``delta`` inner
for ``<>_F``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from starforge.core import (
    CheckFailed,
    HMatrix,
    HSeries,
    WeylElement,
)
from starforge.fedosov._connection import dx_omega_y, omega_form, symplectic_matrix
from starforge.fedosov._fiber import FiberProduct, delta, delta_inverse
from starforge.fedosov._recursion import HALF, FedosovState, fixed_point, flat_lift
from starforge.star import MatrixNormalizer, normalize_matrix
from starforge.utils import get_logger

logger = get_logger(__name__)


def substitute_y(a: WeylElement, m: HMatrix) -> WeylElement:
    """``a(x, M(x) y, dx)``."""
    p = a.profile
    z = (0,) * p.dim
    images = []
    for i in range(m.size):
        image = WeylElement.zero(p)
        for j in range(m.size):
            entry = m[i, j]
            if entry:
                image = image + WeylElement.y(j, p) * entry
        images.append(image)
    powers: dict[tuple[int, int], WeylElement] = {}

    def power(i: int, n: int) -> WeylElement:
        if (i, n) not in powers:
            powers[(i, n)] = images[i] if n == 1 else power(i, n - 1) * images[i]
        return powers[(i, n)]

    out = WeylElement.zero(p)
    for (k, x, y, dx), c in a.terms.items():
        term = WeylElement({(k, x, z, dx): c}, p)
        for i, n in enumerate(y):
            if n and term:
                term = term * power(i, n)
        out = out + term
    return out


@dataclass(frozen=True)
class OriginalFedosov:
    """Everything ``D^F = P D P^-1`` needs, built from a quantum state."""

    state: FedosovState
    normalizer: MatrixNormalizer

    @cached_property
    def product(self) -> FiberProduct:
        return FiberProduct(self.normalizer.target)

    @cached_property
    def omega(self) -> HMatrix:
        return symplectic_matrix(self.normalizer.target)

    def conjugate(self, a: WeylElement) -> WeylElement:
        """``P(a)``."""
        return substitute_y(a, self.normalizer.substitution)

    def unconjugate(self, a: WeylElement) -> WeylElement:
        """``P^-1(a)``."""
        return substitute_y(a, self.normalizer.inverse_substitution)

    def nabla(self, a: WeylElement) -> WeylElement:
        """``nabla_0 = P nabla P^-1``."""
        return self.conjugate(self.state.nabla(self.unconjugate(a)))

    @cached_property
    def b(self) -> WeylElement:
        return self.conjugate(self.state.b)

    @cached_property
    def r(self) -> WeylElement:
        return self.b + dx_omega_y(self.omega)

    def bracket(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self.product.bracket_over_hbar(a, b)

    def differential(self, a: WeylElement) -> WeylElement:
        return self.nabla(a) - delta(a) + self.bracket(self.r, a)

    def lift(self, f: HSeries) -> WeylElement:
        """``tau^F = f + delta^-1(nabla_0 tau^F + (1/hbar)[r^F, tau^F]_F)``."""
        start = WeylElement.from_series(f)

        def step(tau: WeylElement) -> WeylElement:
            return start + delta_inverse(self.nabla(tau) + self.bracket(self.r, tau))

        tau, _ = fixed_point(step, start, "original lift")
        return tau

    def class_residual(self) -> WeylElement:
        """``P(R) + nabla_0 P(b) + (1/2hbar)[P b, P b]_F + 1/2 Omega_ij dx^i dx^j``."""
        return (
            self.conjugate(self.state.curvature)
            + self.nabla(self.b)
            + self.bracket(self.b, self.b).scale(HALF)
            + omega_form(self.state.omega)
        )

    def bridge_residual(self, f: HSeries) -> WeylElement:
        """``P(tau^m f) - tau^F f``."""
        return self.conjugate(flat_lift(self.state, f)) - self.lift(f)

    def star(self, f: HSeries, g: HSeries) -> HSeries:
        """``sigma(tau^F f <>_F tau^F g)`` through ``fiber_hbar_order``."""
        value = self.product(self.lift(f), self.lift(g)).sigma()
        return value.truncate_hbar(self.state.profile.fiber_hbar_order)


def original_fedosov(state: FedosovState) -> OriginalFedosov:
    """Raises:
    DegeneratePi1: if ``pi_1`` is singular.
    """
    if state.mode != "quantum":
        raise ValueError("the original Fedosov product needs a quantum state")
    stages = normalize_matrix(state.product.pi)
    logger.debug("fiber normalizer has %d stages", len(stages.chis))
    return OriginalFedosov(state, stages)


def star_original(state: FedosovState, f: HSeries, g: HSeries) -> HSeries:
    """``f *_F g``, after checking ``P tau^m = tau^F`` on both arguments.

    Raises:
        DegeneratePi1: if ``pi_1`` is singular.
        CheckFailed: if a lift fails to match across ``P``.
    """
    original = original_fedosov(state)
    for h in (f, g):
        residual = original.bridge_residual(h)
        if residual:
            raise CheckFailed(f"P tau^m({h}) differs from tau^F: {residual}")
    return original.star(f, g)
