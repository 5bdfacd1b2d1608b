"""Torsion-free connections on the Weyl bundle and their curvature.

``nabla a = dx^i d_(x^i) a - dx^i Gamma^k_ij(x, hbar) y^j d_(y^k) a``. The
connection must preserve the fiber Poisson matrix; this is checked on the
generators, and a violation is reported before any curvature is built.
"""

from __future__ import annotations

from collections.abc import Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from starforge.core import (
    CRational,
    DegenerateOmega,
    HMatrix,
    HSeries,
    IncompatibleConnection,
    NonInvertible,
    TruncationProfile,
    WeylElement,
    same_profile,
)
from starforge.fedosov._fiber import FiberProduct
from starforge.utils import get_logger

logger = get_logger(__name__)

Index3 = tuple[int, int, int]


@dataclass(frozen=True, slots=True)
class ConnectionData:
    """``gamma[k][i, j] = Gamma^k_ij`` and an optional tail
    ``A = sum_j a_tail[j] d/dy^j`` of one-forms with y-degree >= 2.

    Raises:
        IncompatibleConnection: if some ``gamma[k]`` is not symmetric.
        ValueError: on a malformed tail.
    """

    gamma: tuple[HMatrix, ...]
    a_tail: tuple[WeylElement, ...] | None = None

    def __post_init__(self) -> None:
        d = len(self.gamma)
        if not d:
            raise ValueError("connection needs at least one coordinate")
        profile = self.gamma[0].profile
        for k, g in enumerate(self.gamma):
            if g.size != d:
                raise ValueError(f"Gamma^{k + 1} is not {d}x{d}")
            same_profile(g.profile, profile)
            if g != g.transpose():
                raise IncompatibleConnection(
                    f"connection has torsion: Gamma^{k + 1}_ij is not symmetric"
                )
        if self.a_tail is None:
            return
        if len(self.a_tail) != d:
            raise ValueError(f"tail needs {d} components, got {len(self.a_tail)}")
        for j, a in enumerate(self.a_tail):
            if a and (a.dx_degrees() != {1} or min(a.y_degrees()) < 2):
                raise ValueError(
                    f"tail component {j + 1} must be a 1-form of y-degree >= 2"
                )

    @classmethod
    def flat(cls, profile: TruncationProfile) -> ConnectionData:
        zero = HMatrix.zero(profile.dim, profile)
        return cls(tuple(zero for _ in range(profile.dim)))

    @classmethod
    def from_entries(
        cls,
        entries: Mapping[Index3, HSeries],
        profile: TruncationProfile,
        a_tail: tuple[WeylElement, ...] | None = None,
    ) -> ConnectionData:
        """Build from ``{(k, i, j): Gamma^k_ij}`` (0-based) with ``i <= j``;
        the symmetric entries are filled in.

        Raises:
            IncompatibleConnection: if both ``(k, i, j)`` and ``(k, j, i)``
                are given with different values.
        """
        d = profile.dim
        full: dict[Index3, HSeries] = {}
        for (k, i, j), value in entries.items():
            for key in ((k, i, j), (k, j, i)):
                if key in full and full[key] != value:
                    raise IncompatibleConnection(
                        f"Gamma^{k + 1}_{i + 1}{j + 1} given twice with "
                        "different values"
                    )
                full[key] = value
        zero = HSeries.zero(profile)
        gamma = tuple(
            HMatrix.from_function(
                d, profile, lambda i, j, _k=k: full.get((_k, i, j), zero)
            )
            for k in range(d)
        )
        return cls(gamma, a_tail)

    @property
    def profile(self) -> TruncationProfile:
        return self.gamma[0].profile

    @property
    def dim(self) -> int:
        return len(self.gamma)

    def is_flat(self) -> bool:
        return all(g.is_zero for g in self.gamma)


def symplectic_matrix(pi: HMatrix) -> HMatrix:
    """``Omega = (2 pi / hbar)^-1``, so that ``Omega pi = (hbar / 2) I``.

    Raises:
        DegenerateOmega: if ``pi_1`` is singular at the origin.
    """
    try:
        return pi.map(lambda e: e.shift(-1)).scale(2).inverse()
    except NonInvertible as exc:
        raise DegenerateOmega("omega_-1 is degenerate at the origin") from exc


def omega_form(omega: HMatrix) -> WeylElement:
    """``1/2 Omega_ij dx^i dx^j``."""
    p = omega.profile
    out = WeylElement.zero(p)
    for i in range(omega.size):
        for j in range(i + 1, omega.size):
            entry = omega[i, j]
            if entry:
                out = out + WeylElement.dx(j, p).dx_left(i) * entry
    return out


def dx_omega_y(omega: HMatrix) -> WeylElement:
    """``dx^i Omega_ij y^j``; ``delta = (1/hbar) [dx Omega y, .]``."""
    p = omega.profile
    out = WeylElement.zero(p)
    for i in range(omega.size):
        row = WeylElement.zero(p)
        for j in range(omega.size):
            entry = omega[i, j]
            if entry:
                row = row + WeylElement.y(j, p) * entry
        if row:
            out = out + row.dx_left(i)
    return out


class WeylConnection:
    """``nabla`` for a connection compatible with the fiber matrix ``pi``."""

    def __init__(self, connection: ConnectionData, pi: HMatrix) -> None:
        if pi.size != connection.dim:
            raise ValueError(
                f"pi is {pi.size}x{pi.size}, connection has dim {connection.dim}"
            )
        same_profile(pi.profile, connection.profile)
        self.connection = connection
        self.product = FiberProduct(pi)

    @property
    def pi(self) -> HMatrix:
        return self.product.pi

    @property
    def profile(self) -> TruncationProfile:
        return self.product.profile

    @cached_property
    def omega(self) -> HMatrix:
        return symplectic_matrix(self.pi)

    @cached_property
    def _rotations(self) -> list[list[WeylElement]]:
        # [i][k] = Gamma^k_ij y^j
        p = self.profile
        d = self.connection.dim
        out = []
        for i in range(d):
            row = []
            for k in range(d):
                acc = WeylElement.zero(p)
                for j in range(d):
                    entry = self.connection.gamma[k][i, j]
                    if entry:
                        acc = acc + WeylElement.y(j, p) * entry
                row.append(acc)
            out.append(row)
        return out

    def __call__(self, a: WeylElement) -> WeylElement:
        out = WeylElement.zero(a.profile)
        for i, rotations in enumerate(self._rotations):
            part = a.partial_x(i)
            for k, rot in enumerate(rotations):
                if not rot:
                    continue
                dk = a.partial_y(k)
                if dk:
                    part = part - rot * dk
            if part:
                out = out + part.dx_left(i)
        return out

    def compatibility_residuals(self) -> dict[tuple[int, int], WeylElement]:
        """``nabla {y^k, y^l} - {nabla y^k, y^l} - {y^k, nabla y^l}`` for
        ``k < l``; all vanish exactly when ``nabla pi = 0``."""
        p = self.profile
        bracket = self.product.poisson
        ys = [WeylElement.y(k, p) for k in range(self.connection.dim)]
        out = {}
        for k, yk in enumerate(ys):
            for j in range(k + 1, len(ys)):
                yj = ys[j]
                out[(k, j)] = (
                    self(bracket(yk, yj))
                    - bracket(self(yk), yj)
                    - bracket(yk, self(yj))
                )
        return out

    def check_compatible(self) -> None:
        """Raises:
        IncompatibleConnection: naming the first nonzero residual.
        """
        for (k, j), residual in sorted(self.compatibility_residuals().items()):
            if residual:
                raise IncompatibleConnection(
                    f"connection does not preserve pi^{k + 1}{j + 1}: {residual}"
                )

    @cached_property
    def curvature(self) -> WeylElement:
        """``R = -1/2 y^q Omega_qm nabla^2 y^m``.

        Raises:
            IncompatibleConnection: if ``nabla pi != 0``.
        """
        self.check_compatible()
        p = self.profile
        out = WeylElement.zero(p)
        for m in range(self.connection.dim):
            k_m = self(self(WeylElement.y(m, p)))
            if not k_m:
                continue
            for q in range(self.connection.dim):
                entry = self.omega[q, m]
                if entry:
                    out = out + WeylElement.y(q, p) * k_m * entry
        out = out.scale(CRational(Fraction(-1, 2)))
        logger.debug("curvature has %d terms", len(out))
        return out

    def curvature_residual(self, a: WeylElement) -> WeylElement:
        """``nabla^2 a - (1/hbar) [R, a]``."""
        return self(self(a)) - self.product.bracket_over_hbar(self.curvature, a)


def curvature(connection: ConnectionData, pi: HMatrix) -> WeylElement:
    """Curvature 2-form of ``connection`` on the Weyl bundle of ``pi``.

    Raises:
        IncompatibleConnection: if the connection does not preserve ``pi``.
    """
    return WeylConnection(connection, pi).curvature
