"""Seeded random data for the selftest suites.

Degrees are kept low enough that no derivative ever sees a term the
x-truncation dropped: functions have degree <= 2, Poisson coefficients
degree <= 1, gauge elements are affine. Every coefficient is a small
exact rational.
"""

import random
from fractions import Fraction

from starforge.core import HSeries, TruncationProfile
from starforge.hochschild import multi_indices
from starforge.polyvector import DiffForm, PolyVectorField, de_rham
from starforge.star import ConstPoissonMatrix


class RandomData:
    """Thin layer over ``random.Random`` producing engine values."""

    def __init__(self, seed: int) -> None:
        self.rng = random.Random(seed)

    def rational(self, bound: int = 3) -> Fraction:
        return Fraction(self.rng.randint(-bound, bound), self.rng.randint(1, bound))

    def nonzero_rational(self, bound: int = 3) -> Fraction:
        q = Fraction(0)
        while not q:
            q = self.rational(bound)
        return q

    def series(
        self,
        profile: TruncationProfile,
        degree: int,
        *,
        min_hbar: int = 0,
        max_hbar: int = 2,
        terms: int = 3,
    ) -> HSeries:
        """Up to ``terms`` monomials with x-degree <= ``degree``."""
        exps = multi_indices(profile.dim, degree)
        top = min(max_hbar, profile.hbar_order)
        out = HSeries.zero(profile)
        for _ in range(terms):
            k = self.rng.randint(min_hbar, max(min_hbar, top))
            out = out + HSeries.monomial(
                self.rng.choice(exps), profile, self.rational(), hbar_power=k
            )
        return out

    def formal_series(self, profile: TruncationProfile, degree: int) -> HSeries:
        """A series with hbar-valuation >= 1 that is not zero."""
        s = HSeries.zero(profile)
        while not s:
            s = self.series(profile, degree, min_hbar=1)
        return s

    def constant_vector(self, profile: TruncationProfile) -> PolyVectorField:
        one = HSeries.one(profile)
        v = PolyVectorField.zero(profile)
        while not v:
            v = PolyVectorField.vector(
                [one * self.rng.randint(-2, 2) for _ in range(profile.dim)],
                profile,
            )
        return v

    def vector_field(
        self, profile: TruncationProfile, degree: int, *, min_hbar: int = 0
    ) -> PolyVectorField:
        return PolyVectorField.vector(
            [
                self.series(profile, degree, min_hbar=min_hbar, terms=2)
                for _ in range(profile.dim)
            ],
            profile,
        )

    def gauge_element(self, profile: TruncationProfile) -> PolyVectorField:
        """An affine vector field of hbar-valuation >= 1."""
        return self.vector_field(profile, 1, min_hbar=1)

    def bivector(self, profile: TruncationProfile, degree: int = 1) -> PolyVectorField:
        """A formal bivector; Poisson only on the plane."""
        d = profile.dim
        return PolyVectorField.from_components(
            {
                (i, j): self.series(profile, degree, min_hbar=1, terms=2)
                for i in range(d)
                for j in range(i + 1, d)
            },
            profile,
        )

    def poisson_bivector(
        self, profile: TruncationProfile, degree: int = 1
    ) -> PolyVectorField:
        """A nonzero formal Poisson bivector.

        Above the plane it has the form ``h u ^ v`` with ``u, v`` constant,
        which stays Poisson under every B-field gauge transformation.
        """
        while True:
            if profile.dim == 2:
                pi = self.bivector(profile, degree)
            else:
                uv = self.constant_vector(profile) * self.constant_vector(profile)
                pi = uv * self.formal_series(profile, degree)
            if pi:
                return pi

    def one_form(self, profile: TruncationProfile, degree: int) -> DiffForm:
        return DiffForm.one_form(
            [self.series(profile, degree, terms=2) for _ in range(profile.dim)],
            profile,
        )

    def closed_two_form(self, profile: TruncationProfile, degree: int = 2) -> DiffForm:
        """``d theta`` with ``theta`` of coefficient degree <= ``degree``."""
        return de_rham(self.one_form(profile, degree))

    def constant_two_form(self, profile: TruncationProfile) -> DiffForm:
        one = HSeries.one(profile)
        d = profile.dim
        return DiffForm.from_components(
            {
                (i, j): one * self.nonzero_rational()
                for i in range(d)
                for j in range(i + 1, d)
            },
            profile,
        )

    def constant_pi(self, profile: TruncationProfile) -> ConstPoissonMatrix:
        """``c(hbar) J`` on the plane with ``c_1 != 0``."""
        orders = {1: self.nonzero_rational()}
        for k in range(2, profile.hbar_order + 1):
            if self.rng.random() < 0.5:
                orders[k] = self.rational()
        return ConstPoissonMatrix.from_orders(
            {k: [[0, c], [-c, 0]] for k, c in orders.items()}, profile
        )
