"""Tests for core scalars and their text form."""

import unittest
from fractions import Fraction

from starforge.core import (
    ONE,
    ZERO,
    CRational,
    GrammarError,
    I,
    NonInvertible,
    format_scalar,
    parse_scalar,
)


class CRationalTests(unittest.TestCase):
    def test_coercion_from_int_and_fraction(self):
        self.assertEqual(CRational.of(3), CRational(Fraction(3)))
        self.assertEqual(CRational.of(Fraction(1, 2)), CRational(Fraction(1, 2)))
        self.assertIs(CRational.of(I), I)

    def test_field_operations(self):
        z = CRational(Fraction(1), Fraction(2))
        self.assertEqual(z * z.inverse(), ONE)
        self.assertEqual(I * I, -ONE)
        self.assertEqual(z.conjugate(), CRational(Fraction(1), Fraction(-2)))
        self.assertEqual(z - z, ZERO)
        self.assertEqual(1 / CRational(Fraction(2)), CRational(Fraction(1, 2)))

    def test_zero_has_no_inverse(self):
        with self.assertRaises(NonInvertible):
            ZERO.inverse()

    def test_truthiness(self):
        self.assertFalse(ZERO)
        self.assertTrue(I)
        self.assertTrue(CRational(Fraction(1)).is_real)
        self.assertFalse(I.is_real)


class ScalarTextTests(unittest.TestCase):
    def test_format(self):
        self.assertEqual(format_scalar(CRational(Fraction(-3, 4))), "-3/4")
        self.assertEqual(format_scalar(I), "1*i")
        self.assertEqual(
            format_scalar(CRational(Fraction(1, 2), Fraction(-3, 4))), "1/2-3/4*i"
        )
        self.assertEqual(format_scalar(CRational(Fraction(2), Fraction(1))), "2+1*i")

    def test_parse(self):
        self.assertEqual(parse_scalar("7"), CRational(Fraction(7)))
        self.assertEqual(parse_scalar("-2/6"), CRational(Fraction(-1, 3)))
        self.assertEqual(parse_scalar("i"), I)
        self.assertEqual(parse_scalar("-i"), -I)
        self.assertEqual(parse_scalar("2*i"), CRational(Fraction(0), Fraction(2)))
        self.assertEqual(
            parse_scalar("1/2+3/4*i"), CRational(Fraction(1, 2), Fraction(3, 4))
        )

    def test_parse_inverts_format(self):
        for z in (
            ZERO,
            I,
            CRational(Fraction(5, 3), Fraction(-7, 2)),
            CRational(Fraction(0), Fraction(-1, 9)),
        ):
            self.assertEqual(parse_scalar(format_scalar(z)), z)

    def test_parse_rejects_garbage(self):
        for text in ("", "abc", "1/0", "1/2*j"):
            with self.subTest(text=text), self.assertRaises(GrammarError):
                parse_scalar(text)


if __name__ == "__main__":
    unittest.main()
