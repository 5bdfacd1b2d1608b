"""Tests for polyvector brackets, forms and the Courant apparatus."""

import unittest
from fractions import Fraction

from starforge.core import HSeries, NonDivisible, TruncationProfile
from starforge.polyvector import (
    DiffForm,
    GenSection,
    PolyVectorField,
    b_transform,
    courant,
    de_rham,
    evaluate,
    format_field,
    interior,
    is_poisson,
    jacobiator,
    lie_derivative,
    linear_primitive,
    pairing,
    parse_form,
    parse_polyvector,
    pi_sharp,
    poisson_bracket,
    schouten,
)

P2 = TruncationProfile(hbar_order=2, x_degree=3, y_degree=4, dim=2)
P3 = P2.with_bounds(dim=3)


def _x(i: int, profile: TruncationProfile = P2) -> HSeries:
    return HSeries.variable(i, profile)


def _d(i: int, profile: TruncationProfile = P2) -> PolyVectorField:
    return PolyVectorField.generator(i, profile)


class SchoutenTests(unittest.TestCase):
    def test_vector_fields_give_lie_bracket(self):
        zero = HSeries.zero(P2)
        x = PolyVectorField.vector([zero, _x(0)], P2)
        y = PolyVectorField.vector([_x(1), zero], P2)
        expected = PolyVectorField.vector([_x(0), -_x(1)], P2)
        self.assertEqual(schouten(x, y), expected)

    def test_bivector_on_function(self):
        pi = _d(0) * _d(1)
        f = PolyVectorField.function(_x(0))
        self.assertEqual(schouten(pi, f), -_d(1))
        self.assertEqual(pi_sharp(pi, DiffForm.exact(_x(0))), _d(1))

    def test_poisson_bracket_of_coordinates(self):
        pi = _d(0) * _d(1)
        self.assertEqual(poisson_bracket(pi, _x(0), _x(1)), HSeries.one(P2))
        self.assertEqual(poisson_bracket(pi, _x(1), _x(0)), -HSeries.one(P2))

    def test_linear_so3_is_poisson(self):
        pi = parse_polyvector(
            "1 x^(0,0,1) ∂(1,2) + 1 x^(1,0,0) ∂(2,3) + 1 x^(0,1,0) ∂(3,1)", P3
        )
        self.assertTrue(is_poisson(pi))
        self.assertTrue(jacobiator(pi, _x(0, P3), _x(1, P3), _x(2, P3)).is_zero)

    def test_non_poisson_bivector(self):
        pi = parse_polyvector("1 x^(1,0,0) ∂(1,2) + 1 x^(0,1,0) ∂(2,3)", P3)
        self.assertFalse(is_poisson(pi))
        self.assertEqual(jacobiator(pi, _x(0, P3), _x(1, P3), _x(2, P3)), _x(0, P3))

    def test_evaluate_checks_arity(self):
        with self.assertRaises(ValueError):
            evaluate(_d(0) * _d(1), DiffForm.generator(0, P2))


class CartanTests(unittest.TestCase):
    def test_de_rham_squares_to_zero(self):
        eta = parse_form("1 x^(2,1) dx(1) + 3 h x^(0,2) dx(2)", P2)
        self.assertFalse(de_rham(eta).is_zero)
        self.assertTrue(de_rham(de_rham(eta)).is_zero)
        self.assertTrue(de_rham(DiffForm.exact(_x(0) * _x(1))).is_zero)

    def test_interior_and_lie_derivative(self):
        area = parse_form("1 dx(1,2)", P2)
        self.assertEqual(interior(_d(0), area), DiffForm.generator(1, P2))
        eta = DiffForm.generator(1, P2) * _x(0)
        self.assertEqual(lie_derivative(_d(0), eta), DiffForm.generator(1, P2))

    def test_linear_primitive(self):
        b = parse_form("3 dx(1,2)", P2)
        self.assertEqual(de_rham(linear_primitive(b)), b)
        with self.assertRaises(ValueError):
            linear_primitive(parse_form("1 x^(1,0) dx(1,2)", P2))


class CourantTests(unittest.TestCase):
    def test_pairing(self):
        e1 = GenSection(_d(0), DiffForm.zero(P2))
        e2 = GenSection(PolyVectorField.zero(P2), DiffForm.generator(0, P2))
        self.assertEqual(pairing(e1, e2), HSeries.one(P2))
        self.assertTrue(pairing(e1, e1).is_zero)

    def test_courant_of_vector_fields(self):
        zero = HSeries.zero(P2)
        e1 = GenSection(_d(0), DiffForm.zero(P2))
        e2 = GenSection(PolyVectorField.vector([zero, _x(0)], P2), DiffForm.zero(P2))
        self.assertEqual(courant(e1, e2).vec, _d(1))
        self.assertTrue(courant(e1, e2).form.is_zero)

    def test_b_transform(self):
        b = parse_form("1 dx(1,2)", P2)
        moved = b_transform(b, GenSection(_d(0), DiffForm.zero(P2)))
        self.assertEqual(moved.form, DiffForm.generator(1, P2))

    def test_section_rejects_higher_degrees(self):
        with self.assertRaises(ValueError):
            GenSection(_d(0) * _d(1), DiffForm.zero(P2))


class FieldTextTests(unittest.TestCase):
    def test_format_and_parse(self):
        pi = parse_polyvector("1/2 h x^(1,0) d(2,1)", P2)
        coeff = HSeries.monomial((1, 0), P2, Fraction(-1, 2), hbar_power=1)
        self.assertEqual(pi, (_d(0) * _d(1)) * coeff)
        self.assertEqual(str(pi), "-1/2 h^1 x^(1,0) ∂(1,2)")
        self.assertEqual(format_field(parse_form("2 dx(1,2)", P2)), "2 dx(1,2)")
        self.assertEqual(str(PolyVectorField.zero(P2)), "0")

    def test_hbar_shift_is_exact(self):
        pi = parse_polyvector("1 h x^(1,0) d(1,2)", P2)
        self.assertEqual(pi.shift(-1), parse_polyvector("1 x^(1,0) d(1,2)", P2))
        with self.assertRaises(NonDivisible):
            pi.shift(-2)


if __name__ == "__main__":
    unittest.main()
