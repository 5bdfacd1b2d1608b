"""Tests for Weyl-bundle elements and exact matrices."""

import unittest
from fractions import Fraction

import sympy

from starforge.core import (
    CRational,
    HMatrix,
    HSeries,
    NonDivisible,
    NonInvertible,
    NotAntisymmetric,
    NotFormal,
    TruncationProfile,
    WeylElement,
    ZeroElement,
    merge_sign,
    series_invert,
    weight,
)

P = TruncationProfile(hbar_order=3, x_degree=3, y_degree=4, dim=2)


class WeylElementTests(unittest.TestCase):
    def test_koszul_signs(self):
        d1, d2 = WeylElement.dx(0, P), WeylElement.dx(1, P)
        self.assertEqual(d1 * d2, -(d2 * d1))
        self.assertTrue((d1 * d1).is_zero)
        self.assertEqual(merge_sign((1,), (0,)), -1)
        self.assertEqual(merge_sign((0,), (0,)), 0)

    def test_filtration_cut(self):
        y1 = WeylElement.y(0, P)
        self.assertEqual(weight((1, (0, 0), (1, 0), (0,))), 4)
        self.assertFalse((y1 * y1 * y1 * y1).is_zero)
        self.assertTrue((y1 * y1 * y1 * y1 * y1).is_zero)
        h = WeylElement.from_series(HSeries.hbar(P))
        self.assertTrue((h * h * y1).is_zero)

    def test_degrees(self):
        w = WeylElement.monomial(P, y=(1, 0), dx=(1,)) + WeylElement.monomial(
            P, hbar_power=1
        )
        self.assertEqual(w.filtration_degree(), 2)
        self.assertEqual(w.dx_degrees(), {0, 1})
        self.assertEqual(w.dx_part(1), WeylElement.monomial(P, y=(1, 0), dx=(1,)))
        with self.assertRaises(ValueError):
            w.parity()
        with self.assertRaises(ZeroElement):
            WeylElement.zero(P).filtration_degree()

    def test_derivations(self):
        w = WeylElement.monomial(P, c=3, y=(2, 0), dx=(0, 1))
        self.assertEqual(
            w.partial_y(0), WeylElement.monomial(P, c=6, y=(1, 0), dx=(0, 1))
        )
        self.assertEqual(
            w.dx_derivative(1), WeylElement.monomial(P, c=-3, y=(2, 0), dx=(0,))
        )
        self.assertEqual(
            WeylElement.dx(1, P).dx_left(0), WeylElement.monomial(P, dx=(0, 1))
        )

    def test_hbar_division(self):
        w = WeylElement.monomial(P, hbar_power=1, y=(0, 1))
        self.assertEqual(w.divide_by_hbar().times_hbar(), w)
        with self.assertRaises(NonDivisible):
            WeylElement.one(P).divide_by_hbar()

    def test_sigma_inverts_embedding(self):
        s = HSeries.monomial((1, 1), P, Fraction(1, 2), hbar_power=1)
        w = WeylElement.from_series(s) + WeylElement.y(1, P)
        self.assertEqual(w.sigma(), s)

    def test_invert_dx_free(self):
        u = WeylElement.one(P) + WeylElement.y(0, P)
        self.assertEqual(u * series_invert(u), WeylElement.one(P))
        with self.assertRaises(NonInvertible):
            series_invert(WeylElement.one(P) + WeylElement.dx(0, P))


class HMatrixTests(unittest.TestCase):
    def test_inverse(self):
        m = HMatrix.from_scalars([[1, 2], [3, 4]], P) + HMatrix.from_scalars(
            [[0, 1], [0, 0]], P, hbar_power=1
        )
        one = HMatrix.identity(2, P)
        self.assertEqual(m @ m.inverse(), one)
        self.assertEqual(m.inverse() @ m, one)

    def test_singular(self):
        with self.assertRaises(NonInvertible):
            HMatrix.from_scalars([[1, 1], [1, 1]], P).inverse()

    def test_exp_of_nilpotent(self):
        n = HMatrix.from_scalars([[0, 1], [0, 0]], P, hbar_power=1)
        self.assertEqual(n.exp(), HMatrix.identity(2, P) + n)
        with self.assertRaises(NotFormal):
            HMatrix.identity(2, P).exp()

    def test_antisymmetry(self):
        j = HMatrix.from_scalars([[0, 1], [-1, 0]], P)
        j.check_antisymmetric()
        self.assertEqual(j.T, -j)
        with self.assertRaises(NotAntisymmetric):
            HMatrix.identity(2, P).check_antisymmetric("pi")

    def test_constant_part(self):
        m = HMatrix.from_scalars([[CRational(Fraction(1, 2)), 0], [0, 1]], P)
        expected = sympy.Matrix([[sympy.Rational(1, 2), 0], [0, 1]])
        self.assertEqual(m.constant_part(), expected)
        self.assertEqual(m.scale(HSeries.hbar(P)).hbar_valuation(), 1)


if __name__ == "__main__":
    unittest.main()
