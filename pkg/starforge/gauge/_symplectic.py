"""The dictionary between nondegenerate formal bivectors and 2-form series.

``pi = hbar pi_1 + hbar^2 pi_2 + ..`` with invertible ``pi_1`` corresponds
to ``omega = hbar^-1 omega_-1 + omega_0 + hbar omega_1 + ..`` whose flat map
inverts ``pi#``. The series is stored shifted, as the ordinary 2-form
``hbar omega`` with matrix ``(P / hbar)^-1``; dividing by ``hbar`` costs
the top order, so it is kept through ``hbar^(N-1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from starforge.core import (
    DegenerateOmega,
    DegeneratePi1,
    HMatrix,
    NonInvertible,
    NotClosed,
    NotFormal,
)
from starforge.gauge._action import bivector_matrix, check_gauge_input, gauge_matrix
from starforge.polyvector import (
    DiffForm,
    PolyVectorField,
    de_rham,
    is_poisson,
)


@dataclass(frozen=True, slots=True)
class OmegaSeries:
    """``hbar omega`` as a 2-form; ``order(j)`` is ``omega_j`` (``j >= -1``)."""

    shifted: DiffForm

    @property
    def profile(self):
        return self.shifted.profile

    def order(self, j: int) -> DiffForm:
        return self.shifted.hbar_part(j + 1).shift(-(j + 1))

    def matrix(self) -> HMatrix:
        return self.shifted.to_matrix()

    def is_closed(self) -> bool:
        return not de_rham(self.shifted)

    def __str__(self) -> str:
        return f"hbar^-1 ({self.shifted})"


def omega_from_pi(pi: PolyVectorField) -> OmegaSeries:
    """Raises:
    NotFormal: if ``pi`` has an hbar^0 part.
    DegeneratePi1: if ``pi_1`` at the origin is singular.
    """
    if pi.hbar_part(0):
        raise NotFormal("bivector has an hbar^0 part")
    p = bivector_matrix(pi)
    top = pi.profile.hbar_order - 1
    reduced = p.map(lambda e: e.shift(-1))
    try:
        w = reduced.inverse().truncate_hbar(top)
    except NonInvertible as exc:
        raise DegeneratePi1("pi_1 is degenerate at the origin") from exc
    w.check_antisymmetric("symplectic form")
    return OmegaSeries(DiffForm.from_matrix(w))


def pi_from_omega(omega: OmegaSeries) -> PolyVectorField:
    """Inverse of ``omega_from_pi``.

    Raises:
        NotClosed: if some ``omega_j`` is not closed.
        DegenerateOmega: if ``omega_-1`` is singular at the origin.
    """
    if not omega.is_closed():
        raise NotClosed(f"symplectic series is not closed: {de_rham(omega.shifted)}")
    try:
        inv = omega.matrix().inverse()
    except NonInvertible as exc:
        raise DegenerateOmega("omega_-1 is degenerate at the origin") from exc
    return PolyVectorField.from_matrix(inv.map(lambda e: e.shift(1)))


def poisson_closed_agree(pi: PolyVectorField) -> bool:
    """``[pi, pi] = 0`` through hbar^N holds exactly when ``d omega_j = 0``
    for ``j <= N - 3``, the orders ``[pi, pi]`` sees."""
    top = pi.profile.hbar_order - 2
    d_omega = de_rham(omega_from_pi(pi).shifted).truncate_hbar(top)
    return is_poisson(pi) == d_omega.is_zero


def symplectic_gauge_residual(b: DiffForm, pi: PolyVectorField) -> DiffForm:
    """``omega(a(B, pi)) - omega(pi) - B`` in shifted form.

    With ``a# = pi# (id + B# pi#)^-1`` the flat maps add: the residual is
    zero through ``hbar^(N-1)``.
    """
    check_gauge_input(b, pi)
    a = PolyVectorField.from_matrix(gauge_matrix(b.to_matrix(), bivector_matrix(pi)))
    top = pi.profile.hbar_order - 1
    shifted_b = b.shift(1).truncate_hbar(top)
    return omega_from_pi(a).shifted - omega_from_pi(pi).shifted - shifted_b
