"""Hochschild coboundary, Gerstenhaber bracket and operator interpolation."""

from __future__ import annotations

from collections.abc import Callable, Iterator
from fractions import Fraction
from itertools import product
from math import factorial, prod

from starforge.core import (
    CRational,
    Exponent,
    HSeries,
    TruncationProfile,
    multi_falling,
)
from starforge.hochschild._cochain import PolyDiffOp, pointwise


def hoch_coboundary(p: PolyDiffOp, prod_op: PolyDiffOp | None = None) -> PolyDiffOp:
    """Hochschild coboundary of ``p`` relative to the product ``prod_op``.

    ``(dP)(a_0..a_k) = m(a_0, P(a_1..a_k))
    + sum_i (-1)^(i+1) P(.., m(a_i, a_(i+1)), ..)
    + (-1)^(k+1) m(P(a_0..a_(k-1)), a_k)``.

    ``prod_op`` defaults to the pointwise product; pass a full star
    product ``m + Pi`` to get the star-relative coboundary.
    """
    m = prod_op if prod_op is not None else pointwise(p.profile)
    if m.arity != 2:
        raise ValueError("the product must be a 2-cochain")
    k = p.arity
    out = m.insert(1, p)
    for i in range(k):
        term = p.insert(i, m)
        out = out + (term if i % 2 else -term)
    last = m.insert(0, p)
    out = out + (last if (k + 1) % 2 == 0 else -last)
    return out


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def gerstenhaber_insertions(q1: PolyDiffOp, q2: PolyDiffOp) -> PolyDiffOp:
    """``sum_i (-1)^((i + k1) k2) q1 o_i q2`` with ``k = arity - 1``."""
    k1, k2 = q1.degree, q2.degree
    out = PolyDiffOp.zero(q1.profile, max(q1.arity + q2.arity - 1, 0))
    for i in range(q1.arity):
        term = q1.insert(i, q2)
        out = out + (term if _sign((i + k1) * k2) > 0 else -term)
    return out


def gerstenhaber(q1: PolyDiffOp, q2: PolyDiffOp) -> PolyDiffOp:
    """Gerstenhaber bracket
    ``[Q1, Q2] = Q1 {Q2} - (-1)^(k1 k2) Q2 {Q1}``.

    With this sign ``[m, P] = hoch_coboundary(P)`` and ``[m, m] = -2`` times
    the associator of ``m``.
    """
    k1, k2 = q1.degree, q2.degree
    a = gerstenhaber_insertions(q1, q2)
    b = gerstenhaber_insertions(q2, q1)
    return a - b if _sign(k1 * k2) > 0 else a + b


def associator(m: PolyDiffOp) -> PolyDiffOp:
    """``m(m(a, b), c) - m(a, m(b, c))`` as a 3-cochain."""
    return m.insert(0, m) - m.insert(1, m)


def multi_indices(dim: int, max_degree: int) -> list[Exponent]:
    """All exponents of total degree ``<= max_degree``, graded order."""
    out: list[Exponent] = []
    for total in range(max_degree + 1):
        out.extend(_exact_degree(dim, total))
    return out


def _exact_degree(dim: int, total: int) -> Iterator[Exponent]:
    if dim == 1:
        yield (total,)
        return
    for first in range(total, -1, -1):
        for rest in _exact_degree(dim - 1, total - first):
            yield (first, *rest)


def interpolate(
    fn: Callable[..., HSeries],
    arity: int,
    profile: TruncationProfile,
    max_order: int | None = None,
) -> PolyDiffOp:
    """Recover the cochain whose values on monomials are given by ``fn``.

    Solves ``Q(x^b_1, .., x^b_k) = sum_(a <= b) c_a prod b!/(b-a)! x^(b-a)``
    for the coefficients ``c_a`` in increasing order of ``b``. Slot orders
    are bounded by ``max_order`` (default Dx).
    """
    order = profile.x_degree if max_order is None else max_order
    monos = multi_indices(profile.dim, order)
    if arity == 0:
        return PolyDiffOp.from_series(fn())
    coeffs: dict[tuple[Exponent, ...], HSeries] = {}
    cache: dict[Exponent, HSeries] = {}

    def mono(e: Exponent) -> HSeries:
        if e not in cache:
            cache[e] = HSeries.monomial(e, profile)
        return cache[e]

    tuples = sorted(product(monos, repeat=arity), key=lambda t: sum(map(sum, t)))
    for betas in tuples:
        value = fn(*(mono(b) for b in betas))
        for alphas, c in coeffs.items():
            if not all(
                all(a <= b for a, b in zip(al, be, strict=True))
                for al, be in zip(alphas, betas, strict=True)
            ):
                continue
            factor = prod(
                multi_falling(be, al) for al, be in zip(alphas, betas, strict=True)
            )
            shifted = c
            for al, be in zip(alphas, betas, strict=True):
                rest = tuple(b - a for a, b in zip(al, be, strict=True))
                if any(rest):
                    shifted = shifted * mono(rest)
            value = value - shifted.scale(factor)
        if value:
            denom = prod(prod(factorial(b) for b in be) for be in betas)
            coeffs[betas] = value.scale(CRational(Fraction(1, denom)))
    return PolyDiffOp(
        [
            ((k, x, alphas), c)
            for alphas, series in coeffs.items()
            for (k, x), c in series.terms.items()
        ],
        profile,
        arity,
    )
