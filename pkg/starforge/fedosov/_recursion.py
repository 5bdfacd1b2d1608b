"""Fedosov recursions, flat lifts and the modified Fedosov product.

Quantum mode solves ``r = delta^-1(R + nabla r + (1/2hbar) [r, r])`` with
the commutator of ``<>``; classical mode uses the fiberwise Poisson bracket
instead. Every recursion is iterated until the term map stops changing.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass
from fractions import Fraction
from typing import Literal

from starforge.core import (
    CheckFailed,
    CRational,
    HMatrix,
    HSeries,
    NoConvergence,
    TruncationProfile,
    WeylElement,
)
from starforge.fedosov._connection import (
    ConnectionData,
    WeylConnection,
    dx_omega_y,
    omega_form,
)
from starforge.fedosov._fiber import FiberProduct, delta, delta_inverse
from starforge.utils import get_logger

logger = get_logger(__name__)

Mode = Literal["quantum", "classical"]

HALF = CRational(Fraction(1, 2))


def iteration_bound(profile: TruncationProfile) -> int:
    return profile.y_degree + 2 * profile.hbar_order + 2


def fixed_point(
    step: Callable[[WeylElement], WeylElement], start: WeylElement, what: str
) -> tuple[WeylElement, int]:
    """Iterate ``step`` from ``start`` until it stops changing.

    Raises:
        NoConvergence: past ``iteration_bound``.
    """
    current = start
    bound = iteration_bound(start.profile)
    for n in range(1, bound + 1):
        nxt = step(current)
        if nxt == current:
            logger.debug("%s converged after %d iterations", what, n)
            return current, n
        logger.debug(
            "%s iteration %d: update has %d terms", what, n, len(nxt - current)
        )
        current = nxt
    raise NoConvergence(f"{what} did not converge within {bound} iterations")


def _sign(a: WeylElement) -> int:
    return -1 if a.parity() else 1


@dataclass(frozen=True)
class FedosovState:
    """A converged ``r`` with ``b = r - dx^i Omega_ij y^j``.

    ``D = nabla - delta + bracket(r, .)`` is the assembled differential;
    in classical mode it is the Emmrich-Weinstein differential.
    """

    r: WeylElement
    b: WeylElement
    mode: Mode
    omega: HMatrix
    nabla: WeylConnection
    iterations: int

    @property
    def profile(self) -> TruncationProfile:
        return self.r.profile

    @property
    def product(self) -> FiberProduct:
        return self.nabla.product

    @property
    def curvature(self) -> WeylElement:
        return self.nabla.curvature

    def bracket(self, a: WeylElement, b: WeylElement) -> WeylElement:
        """``(1/hbar) [a, b]`` or ``(1/hbar) {a, b}`` by mode."""
        if self.mode == "quantum":
            return self.product.bracket_over_hbar(a, b)
        return self.product.poisson_over_hbar(a, b)

    def multiply(self, a: WeylElement, b: WeylElement) -> WeylElement:
        """``<>`` in quantum mode, the commutative product otherwise."""
        if self.mode == "quantum":
            return self.product(a, b)
        return a * b

    def differential(self, a: WeylElement) -> WeylElement:
        return self.nabla(a) - delta(a) + self.bracket(self.r, a)

    def flatness_residual(self, a: WeylElement) -> WeylElement:
        """``D^2 a``."""
        return self.differential(self.differential(a))

    def derivation_residual(self, a: WeylElement, b: WeylElement) -> WeylElement:
        """``D(ab) - D(a) b - (-1)^|a| a D(b)`` for the mode's product."""
        d = self.differential
        return (
            d(self.multiply(a, b))
            - self.multiply(d(a), b)
            - self.multiply(a, d(b)).scale(_sign(a))
        )


def fedosov_recursion(
    connection: ConnectionData, pi: HMatrix, mode: Mode = "quantum"
) -> FedosovState:
    """Solve for ``r`` on the Weyl bundle of ``pi``.

    Raises:
        IncompatibleConnection: if ``connection`` does not preserve ``pi``.
        DegenerateOmega: if ``pi_1`` is singular at the origin.
        NoConvergence: if the iteration does not settle.
    """
    if mode not in ("quantum", "classical"):
        raise ValueError(f"unknown Fedosov mode {mode!r}")
    nabla = WeylConnection(connection, pi)
    nabla.check_compatible()
    omega = nabla.omega
    big_r = nabla.curvature
    product = nabla.product
    bracket = (
        product.bracket_over_hbar if mode == "quantum" else product.poisson_over_hbar
    )

    def step(r: WeylElement) -> WeylElement:
        return delta_inverse(big_r + nabla(r) + bracket(r, r).scale(HALF))

    r, n = fixed_point(step, WeylElement.zero(pi.profile), f"{mode} r")
    b = r - dx_omega_y(omega)
    return FedosovState(r, b, mode, omega, nabla, n)


def certificate_residual(state: FedosovState) -> WeylElement:
    """``R + nabla r - delta r + (1/2) bracket(r, r)``."""
    r = state.r
    return (
        state.curvature
        + state.nabla(r)
        - delta(r)
        + state.bracket(r, r).scale(HALF)
    )


def fedosov_class_residual(state: FedosovState) -> WeylElement:
    """``hbar`` times the class equation:
    ``R + nabla b + (1/2) bracket(b, b) + 1/2 Omega_ij dx^i dx^j``."""
    b = state.b
    return (
        state.curvature
        + state.nabla(b)
        + state.bracket(b, b).scale(HALF)
        + omega_form(state.omega)
    )


def xi_bridge(quantum: FedosovState, classical: FedosovState) -> WeylElement:
    """``(b^cl - b) / hbar``.

    Raises:
        NonDivisible: if ``r`` and ``r^cl`` differ at hbar^0.
    """
    if quantum.mode != "quantum" or classical.mode != "classical":
        raise ValueError("xi_bridge needs a quantum and a classical state")
    return (classical.b - quantum.b).divide_by_hbar()


@dataclass(frozen=True)
class GeometricData:
    """``D = nabla - delta + A`` with ``A = tail[j] d/dy^j`` and ``D^2 = 0``."""

    nabla: WeylConnection
    tail: tuple[WeylElement, ...]
    iterations: int

    @property
    def profile(self) -> TruncationProfile:
        return self.nabla.profile

    def apply_tail(self, a: WeylElement) -> WeylElement:
        """``A(a) = sum_j A^j d_(y^j) a``."""
        out = WeylElement.zero(a.profile)
        for j, aj in enumerate(self.tail):
            if aj:
                dj = a.partial_y(j)
                if dj:
                    out = out + aj * dj
        return out

    def differential(self, a: WeylElement) -> WeylElement:
        return self.nabla(a) - delta(a) + self.apply_tail(a)

    def flatness_residual(self, a: WeylElement) -> WeylElement:
        return self.differential(self.differential(a))


def geometric_data(connection: ConnectionData, pi: HMatrix) -> GeometricData:
    """Iterate ``A^j = delta^-1(nabla^2 y^j + nabla A^j + A(nabla y^j) + A(A^j))``.

    A supplied ``connection.a_tail`` is taken as is and checked instead.

    Raises:
        IncompatibleConnection: if ``connection`` does not preserve ``pi``.
        CheckFailed: if a supplied tail does not make ``D`` flat.
        NoConvergence: if the iteration does not settle.
    """
    nabla = WeylConnection(connection, pi)
    nabla.check_compatible()
    p = pi.profile
    ys = [WeylElement.y(j, p) for j in range(connection.dim)]
    if connection.a_tail is not None:
        data = GeometricData(nabla, connection.a_tail, 0)
        for j, y in enumerate(ys):
            residual = data.flatness_residual(y)
            if residual:
                raise CheckFailed(f"supplied tail is not flat on y^{j + 1}: {residual}")
        return data
    nabla_y = [nabla(y) for y in ys]
    squares = [nabla(ny) for ny in nabla_y]
    tail = tuple(WeylElement.zero(p) for _ in ys)
    bound = iteration_bound(p)
    for n in range(1, bound + 1):
        current = GeometricData(nabla, tail, n)
        nxt = tuple(
            delta_inverse(
                squares[j]
                + nabla(tail[j])
                + current.apply_tail(nabla_y[j])
                + current.apply_tail(tail[j])
            )
            for j in range(len(ys))
        )
        if nxt == tail:
            logger.debug("geometric tail converged after %d iterations", n)
            return current
        tail = nxt
    raise NoConvergence(f"geometric tail did not converge within {bound} iterations")


def flat_lift(data: FedosovState | GeometricData, f: HSeries) -> WeylElement:
    """The unique ``D``-flat section with ``sigma = f``.

    Raises:
        NoConvergence: if the iteration does not settle.
    """
    start = WeylElement.from_series(f)
    if isinstance(data, FedosovState):
        nabla = data.nabla

        def step(tau: WeylElement) -> WeylElement:
            return start + delta_inverse(nabla(tau) + data.bracket(data.r, tau))

    else:

        def step(tau: WeylElement) -> WeylElement:
            return start + delta_inverse(data.nabla(tau) + data.apply_tail(tau))

    tau, _ = fixed_point(step, start, "flat lift")
    return tau


def star_modified(state: FedosovState, f: HSeries, g: HSeries) -> HSeries:
    """``sigma(tau f <> tau g)`` through ``fiber_hbar_order``."""
    if state.mode != "quantum":
        raise ValueError("the modified Fedosov product needs a quantum state")
    product = state.product(flat_lift(state, f), flat_lift(state, g))
    return product.sigma().truncate_hbar(state.profile.fiber_hbar_order)
