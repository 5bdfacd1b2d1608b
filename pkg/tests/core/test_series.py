"""Tests for core series, polynomials and the profile."""

import unittest
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from starforge.core import (
    DEFAULT_PROFILE,
    CRational,
    HSeries,
    NonDivisible,
    NonInvertible,
    ProfileMismatch,
    TruncationProfile,
    TruncPoly,
    series_invert,
)

P = TruncationProfile(hbar_order=3, x_degree=3, y_degree=4, dim=2)

_terms = st.lists(
    st.tuples(
        st.integers(0, 3),
        st.integers(0, 3),
        st.integers(0, 3),
        st.integers(-3, 3),
    ),
    max_size=5,
)
series = _terms.map(lambda ts: HSeries([((k, (a, b)), c) for k, a, b, c in ts], P))


class TruncationProfileTests(unittest.TestCase):
    def test_defaults(self):
        p = TruncationProfile()
        self.assertEqual(p, DEFAULT_PROFILE)
        self.assertEqual(str(p), "6,4,6,2")
        self.assertEqual(p.fiber_hbar_order, 3)

    def test_parse(self):
        self.assertEqual(TruncationProfile.parse(" 3, 3, 4, 2 "), P)
        with self.assertRaises(ValueError):
            TruncationProfile.parse("1,2,3")
        with self.assertRaises(ValidationError):
            TruncationProfile.parse("1,2,3,0")

    def test_extra_forbidden_and_frozen(self):
        with self.assertRaises(ValidationError):
            TruncationProfile(order=3)  # type: ignore[call-arg]
        with self.assertRaises(ValidationError):
            P.hbar_order = 5  # type: ignore[misc]

    def test_with_bounds_and_covers(self):
        bigger = P.with_bounds(hbar_order=5, y_degree=8)
        self.assertTrue(bigger.covers(P))
        self.assertFalse(P.covers(bigger))
        self.assertFalse(bigger.with_bounds(dim=3).covers(P))


class TruncPolyTests(unittest.TestCase):
    def test_product_truncates_at_x_degree(self):
        x = TruncPoly.variable(0, P)
        self.assertEqual((x * x * x).degree(), 3)
        self.assertTrue((x * x * x * x).is_zero)

    def test_diff(self):
        f = TruncPoly.monomial((2, 1), P, 3)
        self.assertEqual(f.diff((1, 1)), TruncPoly.monomial((1, 0), P, 6))
        self.assertTrue(f.diff((3, 0)).is_zero)
        self.assertEqual(f.valuation(), 3)


class HSeriesTests(unittest.TestCase):
    def test_constructors(self):
        x1, x2 = HSeries.variable(0, P), HSeries.variable(1, P)
        self.assertEqual(x1 * x2, HSeries.monomial((1, 1), P))
        self.assertEqual(HSeries.hbar(P) ** 2, HSeries.hbar(P, 2))
        self.assertTrue(HSeries.hbar(P, 4).is_zero)
        self.assertEqual(HSeries.one(P).constant_term, CRational(Fraction(1)))

    def test_views(self):
        s = HSeries.monomial((1, 0), P, 2, hbar_power=2) + HSeries.constant(5, P)
        self.assertEqual(s.hbar_valuation(), 0)
        self.assertEqual(s.x_degree(), 1)
        self.assertFalse(s.is_scalar)
        self.assertEqual(sorted(s.coeffs), [0, 2])
        self.assertEqual(s.coeff(2), TruncPoly.monomial((1, 0), P, 2))
        self.assertEqual(s.at_origin(), HSeries.constant(5, P))
        self.assertEqual(s.truncate_hbar(1), HSeries.constant(5, P))
        self.assertIsNone(HSeries.zero(P).hbar_valuation())

    def test_from_coeffs_regroups(self):
        s = HSeries.monomial((0, 2), P, -1, hbar_power=1) + HSeries.hbar(P, 3)
        self.assertEqual(HSeries.from_coeffs(s.coeffs, P), s)

    def test_shift(self):
        h = HSeries.hbar(P)
        self.assertEqual(h.shift(-1), HSeries.one(P))
        self.assertTrue(h.shift(3).is_zero)
        with self.assertRaises(NonDivisible):
            HSeries.one(P).shift(-1)

    def test_diff_and_partial(self):
        s = HSeries.monomial((2, 1), P, hbar_power=1)
        self.assertEqual(s.partial(0), HSeries.monomial((1, 1), P, 2, hbar_power=1))
        self.assertEqual(s.diff((2, 1)), HSeries.constant(2, P, hbar_power=1))

    def test_invert_geometric(self):
        s = HSeries.one(P) - HSeries.hbar(P)
        inv = series_invert(s)
        expected = HSeries.one(P)
        for k in range(1, 4):
            expected = expected + HSeries.hbar(P, k)
        self.assertEqual(inv, expected)

    def test_invert_requires_unit(self):
        with self.assertRaises(NonInvertible):
            series_invert(HSeries.variable(0, P))

    def test_profile_mismatch(self):
        with self.assertRaises(ProfileMismatch):
            HSeries.one(P) + HSeries.one(DEFAULT_PROFILE)

    def test_reduce_changes_profile(self):
        s = HSeries.monomial((1, 1), P, hbar_power=3)
        small = P.with_bounds(hbar_order=2)
        self.assertTrue(s.reduce(small).is_zero)
        self.assertEqual(s.reduce(DEFAULT_PROFILE).profile, DEFAULT_PROFILE)

    def test_immutable(self):
        with self.assertRaises(AttributeError):
            HSeries.one(P).terms = {}  # type: ignore[misc]


class HSeriesRingLawTests(unittest.TestCase):
    @settings(max_examples=40, deadline=None)
    @given(series, series, series)
    def test_associative_and_distributive(self, a, b, c):
        self.assertEqual((a * b) * c, a * (b * c))
        self.assertEqual(a * (b + c), a * b + a * c)

    @settings(max_examples=40, deadline=None)
    @given(series, series)
    def test_commutative_with_additive_inverse(self, a, b):
        self.assertEqual(a * b, b * a)
        self.assertTrue((a - a).is_zero)
        self.assertEqual(a + (-b), a - b)

    @settings(max_examples=40, deadline=None)
    @given(series)
    def test_inverse_of_units(self, a):
        u = HSeries.one(P) + a.filter(lambda key: key != (0, (0, 0)))
        self.assertEqual(u * series_invert(u), HSeries.one(P))


if __name__ == "__main__":
    unittest.main()
