"""Schouten, Cartan and Courant calculus on a polynomial chart.

Conventions:

  - ``[P, Q] = sum_i (P <d/dtheta_i)(d_i Q) - (d_i P)(d/dtheta_i> Q)``, so
    ``[pi, f] = -pi#(df)`` and ``[X, Y]`` is the Lie bracket;
  - ``i_xi P = xi_i d/dtheta_i> P`` contracts into the first slot and
    ``P(xi_1, .., xi_k) = i_xi_k .. i_xi_1 P``;
  - ``pi#`` is the algebra map ``dx^a -> pi^(aj) theta_j``.
"""

from __future__ import annotations

from starforge.core import HSeries, TruncationProfile
from starforge.polyvector._fields import (
    DiffForm,
    GenSection,
    PolyVectorField,
)


def schouten(p: PolyVectorField, q: PolyVectorField) -> PolyVectorField:
    """Schouten-Nijenhuis bracket; arities above d come out as zero."""
    p._check(q)
    out = PolyVectorField.zero(p.profile)
    for i in range(p.profile.dim):
        dq = q.partial(i)
        if dq:
            right = p.right_derivative(i)
            if right:
                out = out + right * dq
        dp = p.partial(i)
        if dp:
            left = q.left_derivative(i)
            if left:
                out = out - dp * left
    return out


def _sharp_images(pi: PolyVectorField) -> list[PolyVectorField]:
    d = pi.profile.dim
    return [
        PolyVectorField.vector(
            [pi.component((a, j)) for j in range(d)], pi.profile
        )
        for a in range(d)
    ]


def pi_sharp(pi: PolyVectorField, eta: DiffForm) -> PolyVectorField:
    """Extend ``dx^a -> pi^(aj) d_j`` multiplicatively to forms."""
    images = _sharp_images(pi)
    profile = pi.profile
    out = PolyVectorField.zero(profile)
    cache: dict[tuple[int, ...], PolyVectorField] = {}
    for (k, x, odd), c in eta.terms.items():
        img = cache.get(odd)
        if img is None:
            img = PolyVectorField.function(HSeries.one(profile))
            for a in odd:
                img = img * images[a]
            cache[odd] = img
        out = out + img * HSeries.monomial(x, profile, c, hbar_power=k)
    return out


def contract(xi: DiffForm, p: PolyVectorField) -> PolyVectorField:
    """``i_xi p`` for a 1-form ``xi``."""
    out = PolyVectorField.zero(p.profile)
    for i in range(p.profile.dim):
        coeff = xi.component((i,))
        if coeff:
            out = out + p.left_derivative(i) * coeff
    return out


def evaluate(p: PolyVectorField, *forms: DiffForm) -> HSeries:
    """``p(xi_1, .., xi_k)`` as a function.

    Raises:
        ValueError: if the number of forms differs from the arity of ``p``.
    """
    if p and p.degree != len(forms):
        raise ValueError(f"arity {p.degree} polyvector fed {len(forms)} forms")
    for xi in forms:
        p = contract(xi, p)
    return p.scalar_part()


def interior(x: PolyVectorField, eta: DiffForm) -> DiffForm:
    """``i_X eta`` for a vector field ``X``."""
    out = DiffForm.zero(eta.profile)
    for i in range(eta.profile.dim):
        coeff = x.component((i,))
        if coeff:
            out = out + eta.left_derivative(i) * coeff
    return out


def de_rham(eta: DiffForm) -> DiffForm:
    """Exterior derivative ``dx^i d_i``."""
    out = DiffForm.zero(eta.profile)
    for i in range(eta.profile.dim):
        di = eta.partial(i)
        if di:
            out = out + DiffForm.generator(i, eta.profile) * di
    return out


def lie_derivative(x: PolyVectorField, eta: DiffForm) -> DiffForm:
    """Cartan formula ``L_X = i_X d + d i_X``."""
    return interior(x, de_rham(eta)) + de_rham(interior(x, eta))


def poisson_bracket(pi: PolyVectorField, f: HSeries, g: HSeries) -> HSeries:
    """``{f, g}_pi = pi(df, dg)``."""
    return evaluate(pi, DiffForm.exact(f), DiffForm.exact(g))


def mixed_jacobiator(
    inner: PolyVectorField,
    outer: PolyVectorField,
    f: HSeries,
    g: HSeries,
    h: HSeries,
) -> HSeries:
    """Cyclic sum of ``{f, {g, h}_inner}_outer``."""
    total = HSeries.zero(f.profile)
    for a, b, c in ((f, g, h), (g, h, f), (h, f, g)):
        total = total + poisson_bracket(outer, a, poisson_bracket(inner, b, c))
    return total


def jacobiator(
    pi: PolyVectorField, f: HSeries, g: HSeries, h: HSeries
) -> HSeries:
    """``Jac_pi(f, g, h)``; vanishes identically iff ``[pi, pi] = 0``."""
    return mixed_jacobiator(pi, pi, f, g, h)


def hamiltonian(pi: PolyVectorField, f: HSeries) -> PolyVectorField:
    """``pi#(df)``."""
    return pi_sharp(pi, DiffForm.exact(f))


def graph_section(pi: PolyVectorField, xi: DiffForm) -> GenSection:
    """The section ``(pi# xi, xi)`` of the graph of ``pi#``."""
    return GenSection(pi_sharp(pi, xi), xi)


def pairing(e1: GenSection, e2: GenSection) -> HSeries:
    """``<(X, xi), (Y, eta)> = eta(X) + xi(Y)``."""
    return (
        interior(e1.vec, e2.form).scalar_part()
        + interior(e2.vec, e1.form).scalar_part()
    )


def courant(e1: GenSection, e2: GenSection) -> GenSection:
    """``[[(X, xi), (Y, eta)]] = ([X, Y], L_X eta - i_Y d xi)``."""
    return GenSection(
        schouten(e1.vec, e2.vec),
        lie_derivative(e1.vec, e2.form) - interior(e2.vec, de_rham(e1.form)),
    )


def b_transform(b: DiffForm, e: GenSection) -> GenSection:
    """``lambda_B(X, xi) = (X, xi + i_X B)``."""
    return GenSection(e.vec, e.form + interior(e.vec, b))


def is_poisson(pi: PolyVectorField) -> bool:
    """True when ``[pi, pi]`` vanishes in the truncated ring."""
    return schouten(pi, pi).is_zero


def coordinate_fields(profile: TruncationProfile) -> list[PolyVectorField]:
    return [PolyVectorField.generator(i, profile) for i in range(profile.dim)]


def coordinate_forms(profile: TruncationProfile) -> list[DiffForm]:
    return [DiffForm.generator(i, profile) for i in range(profile.dim)]


def linear_primitive(b: DiffForm) -> DiffForm:
    """``theta = sum_(i<j) B_ij x^i dx^j`` with ``d theta = B`` for constant ``B``.

    Raises:
        ValueError: if ``b`` is not a constant 2-form.
    """
    if b.degrees() - {2} or not b.is_constant():
        raise ValueError("linear primitive needs a constant 2-form")
    profile = b.profile
    d = profile.dim
    theta = DiffForm.zero(profile)
    for i in range(d):
        for j in range(i + 1, d):
            coeff = b.component((i, j))
            if coeff:
                theta = theta + DiffForm.generator(j, profile) * (
                    coeff * HSeries.variable(i, profile)
                )
    return theta
