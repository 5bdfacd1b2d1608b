"""Tests for Maurer-Cartan theory over the polyvector and cochain DGLAs."""

import unittest
from fractions import Fraction

from starforge.core import FiltrationViolation, HSeries, TruncationProfile
from starforge.dgla import (
    LInfMorphism,
    bernoulli_even,
    bracket_defect,
    campbell_hausdorff,
    cochain_context,
    differential_square,
    gauge_action,
    intertwining_residual,
    jacobi_residual,
    leibniz_residual,
    linf_push,
    mc_residual,
    polyvector_context,
    twist,
)
from starforge.hochschild import PolyDiffOp, partial_op
from starforge.polyvector import parse_polyvector

P3 = TruncationProfile(hbar_order=3, x_degree=3, y_degree=4, dim=3)
SO3 = "1 h x^(0,0,1) ∂(1,2) + 1 h x^(1,0,0) ∂(2,3) + 1 h x^(0,1,0) ∂(3,1)"


class MaurerCartanTests(unittest.TestCase):
    def setUp(self):
        self.ctx = polyvector_context(P3)
        self.alpha = parse_polyvector(SO3, P3)
        self.xi = parse_polyvector("1 h x^(1,0,0) ∂(2)", P3)
        self.eta = parse_polyvector("1 h x^(0,0,1) ∂(1)", P3)

    def test_poisson_bivector_is_mc(self):
        self.assertTrue(mc_residual(self.alpha, self.ctx).is_zero)
        bad = parse_polyvector("1 h x^(1,0,0) ∂(1,2) + 1 h x^(0,1,0) ∂(2,3)", P3)
        self.assertFalse(mc_residual(bad, self.ctx).is_zero)

    def test_filtration_required(self):
        with self.assertRaises(FiltrationViolation):
            mc_residual(parse_polyvector("1 ∂(1,2)", P3), self.ctx)
        with self.assertRaises(FiltrationViolation):
            gauge_action(self.alpha, parse_polyvector("1 ∂(1)", P3), self.ctx)

    def test_gauge_action_preserves_mc(self):
        moved = gauge_action(self.alpha, self.xi, self.ctx)
        self.assertNotEqual(moved, self.alpha)
        self.assertTrue(mc_residual(moved, self.ctx).is_zero)

    def test_gauge_action_is_right_action(self):
        twice = gauge_action(
            gauge_action(self.alpha, self.xi, self.ctx), self.eta, self.ctx
        )
        bch = campbell_hausdorff(self.xi, self.eta, self.ctx)
        self.assertEqual(twice, gauge_action(self.alpha, bch, self.ctx))

    def test_campbell_hausdorff_commuting(self):
        self.assertEqual(
            campbell_hausdorff(self.xi, self.xi.scale(2), self.ctx), self.xi.scale(3)
        )

    def test_jacobi(self):
        residual = jacobi_residual(self.ctx, self.alpha, self.xi, self.eta)
        self.assertTrue(residual.is_zero)

    def test_bernoulli(self):
        self.assertEqual(bernoulli_even(1), Fraction(1, 6))
        self.assertEqual(bernoulli_even(2), Fraction(-1, 30))


class CochainContextTests(unittest.TestCase):
    def setUp(self):
        self.p = P3.with_bounds(dim=2, x_degree=2)
        self.ctx = cochain_context(self.p)

    def test_differential(self):
        op = PolyDiffOp.monomial(((1, 0),), self.p, HSeries.variable(1, self.p))
        self.assertTrue(differential_square(self.ctx, op).is_zero)
        other = partial_op(1, self.p).shift(1)
        self.assertTrue(leibniz_residual(self.ctx, op, other).is_zero)

    def test_series_stop_at_hbar_order(self):
        self.assertEqual(self.ctx.bound, self.p.hbar_order)
        self.assertEqual(polyvector_context(P3).bound, P3.hbar_order)

    def test_twist_by_zero_is_identity(self):
        zero = PolyDiffOp.zero(self.p, 2)
        self.assertIs(twist(self.ctx, zero), self.ctx)


class LInfTests(unittest.TestCase):
    def test_identity_morphism(self):
        ctx = polyvector_context(P3)
        f = LInfMorphism.identity(ctx)
        alpha = parse_polyvector(SO3, P3)
        xi = parse_polyvector("1 h x^(1,0,0) ∂(2)", P3)
        self.assertEqual(linf_push(f, alpha), alpha)
        self.assertTrue(bracket_defect(f, alpha, xi).is_zero)
        self.assertTrue(intertwining_residual(f, xi).is_zero)
        self.assertEqual(f.cutoff, 1)
        self.assertIsNone(f.component(2))


if __name__ == "__main__":
    unittest.main()
