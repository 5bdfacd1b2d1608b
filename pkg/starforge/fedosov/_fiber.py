"""Fiberwise calculus on the Weyl bundle of a chart.

``a <> b = a exp(pi^(ij)(x) <d/dy^i d/dy^j>) b`` carries no factor 1/2,
so ``[y^i, y^j] = 2 pi^(ij)`` and the matching fiberwise Poisson bracket is
``{a, b} = 2 pi^(ij) d_i a d_j b``.
"""

from __future__ import annotations

from collections.abc import Iterator
from fractions import Fraction
from functools import cached_property

from starforge.core import (
    CRational,
    Exponent,
    HMatrix,
    HSeries,
    TruncationProfile,
    WeylElement,
    add_exponents,
    unit_exponent,
)

Table = dict[tuple[Exponent, Exponent], HSeries]


def delta(a: WeylElement) -> WeylElement:
    """``dx^i d/dy^i``."""
    out = WeylElement.zero(a.profile)
    for i in range(a.profile.dim):
        dy = a.partial_y(i)
        if dy:
            out = out + dy.dx_left(i)
    return out


def delta_inverse(a: WeylElement) -> WeylElement:
    """``y^k d/d(dx^k)`` scaled by ``1/(p+q)`` on terms of y-degree ``p`` and
    dx-degree ``q > 0``; zero on 0-forms."""
    p = a.profile

    def rule(key, c):
        k, x, y, dx = key
        if not dx:
            return []
        scale = c * CRational(Fraction(1, sum(y) + len(dx)))
        out = []
        for pos, i in enumerate(dx):
            rest = dx[:pos] + dx[pos + 1 :]
            ny = add_exponents(y, unit_exponent(i, p.dim))
            out.append(((k, x, ny, rest), -scale if pos % 2 else scale))
        return out

    return a.map_terms(rule)


def hodge_residual(a: WeylElement) -> WeylElement:
    """``a - sigma(a) - delta delta^-1 a - delta^-1 delta a``; always zero."""
    sigma = WeylElement.from_series(a.sigma())
    return a - sigma - delta(delta_inverse(a)) - delta_inverse(delta(a))


def homogeneous_parts(a: WeylElement) -> Iterator[tuple[int, WeylElement]]:
    """Split into even and odd dx-parity."""
    for parity in (0, 1):
        part = a.filter(lambda key, _p=parity: len(key[3]) % 2 == _p)
        if part:
            yield parity, part


def _extend(table: Table, pi: HMatrix, n: int) -> Table:
    d = pi.size
    out: Table = {}
    scale = CRational(Fraction(1, n))
    for (alpha, beta), c in table.items():
        for i in range(d):
            for j in range(d):
                entry = pi[i, j]
                if not entry:
                    continue
                key = (
                    add_exponents(alpha, unit_exponent(i, d)),
                    add_exponents(beta, unit_exponent(j, d)),
                )
                value = (c * entry).scale(scale)
                out[key] = out[key] + value if key in out else value
    return {k: v for k, v in out.items() if v}


class FiberProduct:
    """``<>`` for an antisymmetric ``pi(x, hbar)`` of positive hbar-order.

    ``levels[n]`` holds the coefficients of ``d^alpha (x) d^beta`` in the
    n-th exponential term; ``reduced[n]`` the same divided by hbar, built
    from ``pi / hbar`` so that brackets divided by hbar lose no order.
    """

    def __init__(self, pi: HMatrix) -> None:
        pi.check_antisymmetric("fiber Poisson matrix")
        if not pi.truncate_hbar(0).is_zero:
            raise ValueError("fiber Poisson matrix needs positive hbar-order")
        self.pi = pi

    @property
    def profile(self) -> TruncationProfile:
        return self.pi.profile

    @cached_property
    def pi_over_hbar(self) -> HMatrix:
        return self.pi.map(lambda e: e.shift(-1))

    def _levels(self, first: HMatrix) -> list[Table]:
        p = self.profile
        z = (0,) * p.dim
        levels: list[Table] = [{(z, z): HSeries.one(p)}]
        n = 1
        current = _extend(levels[0], first, 1)
        while current and 2 * n <= p.y_degree:
            levels.append(current)
            n += 1
            current = _extend(current, self.pi, n)
        return levels

    @cached_property
    def levels(self) -> list[Table]:
        return self._levels(self.pi)

    @cached_property
    def reduced(self) -> list[Table]:
        out = self._levels(self.pi_over_hbar)
        out[0] = {}
        return out

    @staticmethod
    def _apply(
        levels: list[Table], a: WeylElement, b: WeylElement, start: int
    ) -> WeylElement:
        out = WeylElement.zero(a.profile)
        da: dict[Exponent, WeylElement] = {}
        db: dict[Exponent, WeylElement] = {}
        for table in levels[start:]:
            for (alpha, beta), c in table.items():
                if alpha not in da:
                    da[alpha] = a.diff_y(alpha)
                if not da[alpha]:
                    continue
                if beta not in db:
                    db[beta] = b.diff_y(beta)
                if not db[beta]:
                    continue
                out = out + (da[alpha] * db[beta]) * c
        return out

    def __call__(self, a: WeylElement, b: WeylElement) -> WeylElement:
        return self._apply(self.levels, a, b, 0)

    def _graded(self, a: WeylElement, b: WeylElement, fn) -> WeylElement:
        out = WeylElement.zero(a.profile)
        for pa, xa in homogeneous_parts(a):
            for pb, xb in homogeneous_parts(b):
                sign = -1 if pa and pb else 1
                out = out + fn(xa, xb) - fn(xb, xa).scale(sign)
        return out

    def commutator(self, a: WeylElement, b: WeylElement) -> WeylElement:
        """Graded commutator ``a <> b - (-1)^(|a||b|) b <> a``."""
        return self._graded(a, b, self)

    def bracket_over_hbar(self, a: WeylElement, b: WeylElement) -> WeylElement:
        """``(1/hbar) [a, b]``, exact."""
        return self._graded(
            a, b, lambda u, v: self._apply(self.reduced, u, v, 1)
        )

    def poisson(self, a: WeylElement, b: WeylElement) -> WeylElement:
        """``{a, b} = 2 pi^(ij) d_i a d_j b``."""
        return self._first_order(self.pi, a, b)

    def poisson_over_hbar(self, a: WeylElement, b: WeylElement) -> WeylElement:
        """``(1/hbar) {a, b}``, exact."""
        return self._first_order(self.pi_over_hbar, a, b)

    @staticmethod
    def _first_order(m: HMatrix, a: WeylElement, b: WeylElement) -> WeylElement:
        out = WeylElement.zero(a.profile)
        d = m.size
        for i in range(d):
            ai = a.partial_y(i)
            if not ai:
                continue
            for j in range(d):
                entry = m[i, j]
                if entry:
                    bj = b.partial_y(j)
                    if bj:
                        out = out + (ai * bj) * entry
        return out.scale(2)


def fiber_products(
    a1: WeylElement, a2: WeylElement, pi: HMatrix
) -> tuple[WeylElement, WeylElement, WeylElement]:
    """``(a1 <>_m a2, {a1, a2}, a1 <>_F a2)``; ``<>_F`` keeps ``hbar pi_1`` only."""
    full = FiberProduct(pi)
    first = pi.map(lambda e: e.filter(lambda key: key[0] == 1))
    return full(a1, a2), full.poisson(a1, a2), FiberProduct(first)(a1, a2)
