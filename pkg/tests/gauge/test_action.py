"""Tests for the B-field action and the symplectic dictionary."""

import unittest

from starforge.core import (
    DegeneratePi1,
    HSeries,
    NotClosed,
    NotFormal,
    TruncationProfile,
)
from starforge.gauge import (
    exact_equivalence_residual,
    gauge_transform,
    gauge_transform_ode,
    group_action_residual,
    jacobi_preservation_residual,
    omega_from_pi,
    pi_from_omega,
    poisson_closed_agree,
    symplectic_gauge_residual,
)
from starforge.polyvector import PolyVectorField, parse_form, parse_polyvector

P2 = TruncationProfile(hbar_order=3, x_degree=3, y_degree=4, dim=2)
P3 = P2.with_bounds(dim=3)
SO3 = "1 h x^(0,0,1) ∂(1,2) + 1 h x^(1,0,0) ∂(2,3) + 1 h x^(0,1,0) ∂(3,1)"


class GaugeTransformTests(unittest.TestCase):
    def test_constant_data(self):
        pi = parse_polyvector("1 h ∂(1,2)", P2)
        moved = gauge_transform(parse_form("1 dx(1,2)", P2), pi)
        # (I + P B)^-1 P with P B = -hbar I
        expected = "1 h ∂(1,2) + 1 h^2 ∂(1,2) + 1 h^3 ∂(1,2)"
        self.assertEqual(moved, parse_polyvector(expected, P2))

    def test_ode_agrees_with_neumann(self):
        pi = parse_polyvector(SO3, P3)
        b = parse_form("1 dx(1,2) + 2 dx(2,3)", P3)
        self.assertEqual(gauge_transform_ode(b, pi), gauge_transform(b, pi))

    def test_group_action(self):
        pi = parse_polyvector(SO3, P3)
        b1, b2 = parse_form("1 dx(1,2)", P3), parse_form("-3 dx(1,3)", P3)
        self.assertTrue(group_action_residual(b1, b2, pi).is_zero)

    def test_poisson_preserved(self):
        pi = parse_polyvector(SO3, P3)
        residual = jacobi_preservation_residual(parse_form("1 dx(2,3)", P3), pi)
        self.assertTrue(residual.is_zero)

    def test_input_validation(self):
        pi = parse_polyvector("1 h ∂(1,2)", P3)
        with self.assertRaises(NotClosed):
            gauge_transform(parse_form("1 x^(0,0,1) dx(1,2)", P3), pi)
        with self.assertRaises(NotFormal):
            gauge_transform(
                parse_form("1 dx(1,2)", P3), parse_polyvector("1 ∂(1,2)", P3)
            )
        with self.assertRaises(ValueError):
            gauge_transform(parse_form("1 dx(1)", P3), pi)

    def test_exact_field_acts_by_equivalence(self):
        pi = parse_polyvector("1 h ∂(1,2)", P2)
        out = exact_equivalence_residual(parse_form("1 x^(1,0) dx(2)", P2), pi)
        self.assertTrue(out.pi_is_poisson)
        self.assertTrue(out.ok)


class SymplecticTests(unittest.TestCase):
    def test_round_trip(self):
        pi = parse_polyvector("1 h ∂(1,2) + 1 h^2 x^(1,0) ∂(1,2)", P2)
        omega = omega_from_pi(pi)
        self.assertEqual(omega.order(-1), parse_form("-1 dx(1,2)", P2))
        self.assertTrue(omega.is_closed())
        self.assertEqual(pi_from_omega(omega), pi)

    def test_degenerate(self):
        with self.assertRaises(DegeneratePi1):
            omega_from_pi(parse_polyvector("1 h^2 ∂(1,2)", P2))
        with self.assertRaises(NotFormal):
            omega_from_pi(PolyVectorField.function(HSeries.one(P2)))

    def test_poisson_iff_closed(self):
        self.assertTrue(poisson_closed_agree(parse_polyvector("1 h ∂(1,2)", P2)))

    def test_flat_maps_add(self):
        pi = parse_polyvector("1 h ∂(1,2)", P2)
        residual = symplectic_gauge_residual(parse_form("2 dx(1,2)", P2), pi)
        self.assertTrue(residual.is_zero)


if __name__ == "__main__":
    unittest.main()
