"""Tests for the canonical text grammar."""

import unittest
from fractions import Fraction

from starforge.core import (
    CRational,
    GrammarError,
    HSeries,
    TruncationProfile,
    TruncPoly,
    WeylElement,
    parse_poly,
    parse_series,
    parse_weyl,
    sort_sign,
)

P = TruncationProfile(hbar_order=3, x_degree=3, y_degree=4, dim=2)


class ParseSeriesTests(unittest.TestCase):
    def test_canonical_order_and_form(self):
        s = parse_series("1/2 h x^(1,0) + -1 x^(0,2)", P)
        self.assertEqual(str(s), "-1 x^(0,2) + 1/2 h^1 x^(1,0)")
        self.assertEqual(parse_series(str(s), P), s)

    def test_omitted_coefficient_and_zero(self):
        self.assertEqual(parse_series("h^2", P), HSeries.hbar(P, 2))
        self.assertEqual(parse_series("x^(0,1)", P), HSeries.variable(1, P))
        self.assertTrue(parse_series("0", P).is_zero)
        self.assertEqual(str(HSeries.zero(P)), "0")

    def test_like_terms_collect(self):
        s = parse_series("1 x^(1,0) + -1 x^(1,0) + i h", P)
        self.assertEqual(s, HSeries.constant(CRational(Fraction(0), Fraction(1)), P, 1))

    def test_truncated_terms_vanish(self):
        self.assertTrue(parse_series("1 h^4 + 1 x^(2,2)", P).is_zero)

    def test_poly(self):
        self.assertEqual(parse_poly("3 x^(1,1)", P), TruncPoly.monomial((1, 1), P, 3))
        with self.assertRaises(GrammarError):
            parse_poly("1 h", P)

    def test_errors(self):
        bad = [
            "",
            "1 x^(1)",
            "1 h h^2",
            "1 y^(1,0)",
            "1 dx{1}",
            "abc x^(1,0)",
            "1 z^(1,0)",
        ]
        for text in bad:
            with self.subTest(text=text), self.assertRaises(GrammarError):
                parse_series(text, P)


class ParseWeylTests(unittest.TestCase):
    def test_unsorted_dx_picks_up_sign(self):
        self.assertEqual(sort_sign((1, 0)), (-1, (0, 1)))
        self.assertEqual(sort_sign((2, 0, 1)), (1, (0, 1, 2)))
        self.assertEqual(
            parse_weyl("1 dx{2,1}", P),
            WeylElement.monomial(P, c=-1, dx=(0, 1)),
        )

    def test_full_term(self):
        w = parse_weyl("-2/3 h x^(1,0) y^(0,1) dx{1}", P)
        expected = WeylElement.monomial(
            P, c=Fraction(-2, 3), hbar_power=1, x=(1, 0), y=(0, 1), dx=(0,)
        )
        self.assertEqual(w, expected)
        self.assertEqual(str(w), "-2/3 h^1 x^(1,0) y^(0,1) dx{1}")

    def test_dx_errors(self):
        for text in ("1 dx{3}", "1 dx{1,1}", "1 dx{0}"):
            with self.subTest(text=text), self.assertRaises(GrammarError):
                parse_weyl(text, P)


if __name__ == "__main__":
    unittest.main()
