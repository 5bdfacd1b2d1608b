"""Tests for the formal ODE solvers."""

import unittest
from fractions import Fraction

from starforge.core import (
    CRational,
    HSeries,
    NonConstantZerothOrder,
    NonInvertibleInitialCondition,
    TruncationProfile,
    ZerothOrderViolation,
)
from starforge.ode import (
    TOperator,
    TPolySeries,
    ode_residual,
    solve_exp_prefactor,
    solve_linear,
    star_exponential,
    star_product_t,
)
from starforge.star import ConstPoissonMatrix, moyal

P = TruncationProfile(hbar_order=3, x_degree=2, y_degree=4, dim=2)


def _times(s: HSeries) -> TOperator[HSeries]:
    return TOperator.constant(lambda v: s * v)


class TPolySeriesTests(unittest.TestCase):
    def test_calculus(self):
        v = TPolySeries({0: HSeries.one(P), 2: HSeries.hbar(P)}, HSeries.zero(P))
        self.assertEqual(v.t_degree, 2)
        self.assertEqual(v.derivative().coeff(1), HSeries.hbar(P).scale(2))
        self.assertEqual(v.integral().derivative(), v)
        self.assertEqual(v.at(2), HSeries.one(P) + HSeries.hbar(P).scale(4))
        self.assertEqual(v.rescale_time(3).coeff(2), HSeries.hbar(P).scale(9))

    def test_zero_coefficients_dropped(self):
        v = TPolySeries({1: HSeries.zero(P)}, HSeries.zero(P))
        self.assertTrue(v.is_zero)
        self.assertEqual(v.t_degree, -1)
        with self.assertRaises(AttributeError):
            v.zero = HSeries.one(P)  # type: ignore[misc]


class SolveLinearTests(unittest.TestCase):
    def test_exponential_of_hbar(self):
        d = _times(HSeries.hbar(P))
        v = solve_linear(None, d, HSeries.one(P))
        self.assertEqual(v.coeff(2), HSeries.constant(Fraction(1, 2), P, 2))
        self.assertEqual(v.coeff(3), HSeries.constant(Fraction(1, 6), P, 3))
        self.assertEqual(v.t_degree, 3)
        self.assertTrue(ode_residual(v, None, d).is_zero)

    def test_with_source(self):
        w = TPolySeries({1: HSeries.monomial((1, 0), P, hbar_power=1)}, HSeries.zero(P))
        d = _times(HSeries.monomial((0, 1), P, hbar_power=1))
        v = solve_linear(w, d, HSeries.variable(0, P))
        self.assertTrue(ode_residual(v, w, d).is_zero)
        self.assertEqual(v.coeff(0), HSeries.variable(0, P))
        self.assertEqual(solve_linear(w, d, HSeries.variable(0, P), reverse=True), v)

    def test_zeroth_order_rejected(self):
        with self.assertRaises(ZerothOrderViolation):
            solve_linear(None, TOperator.constant(lambda v: v), HSeries.one(P))
        w = TPolySeries({0: HSeries.one(P)}, HSeries.zero(P))
        with self.assertRaises(ZerothOrderViolation):
            solve_linear(w, _times(HSeries.hbar(P)), HSeries.one(P))


class ExpPrefactorTests(unittest.TestCase):
    def test_amplitude_solves_shifted_equation(self):
        d = _times(HSeries.monomial((1, 0), P, hbar_power=1))
        h = HSeries.one(P) + HSeries.variable(1, P) + HSeries.hbar(P)
        sol = solve_exp_prefactor(2, d, h)
        self.assertEqual(sol.d0, CRational.of(2))
        self.assertEqual(sol.h0, HSeries.one(P) + HSeries.variable(1, P))
        self.assertEqual(sol.amplitude().coeff(0), h)
        self.assertTrue(ode_residual(sol.amplitude(), None, d).is_zero)

    def test_rejections(self):
        d = _times(HSeries.hbar(P))
        with self.assertRaises(NonInvertibleInitialCondition):
            solve_exp_prefactor(1, d, HSeries.variable(0, P) + HSeries.hbar(P))
        with self.assertRaises(NonConstantZerothOrder):
            solve_exp_prefactor(HSeries.variable(0, P), d, HSeries.one(P))


class StarExponentialTests(unittest.TestCase):
    def test_inverse_and_equation(self):
        star = moyal(ConstPoissonMatrix.from_orders({1: [[0, 1], [-1, 0]]}, P))
        tail = HSeries.monomial((1, 0), P, hbar_power=1)
        sol = star_exponential(HSeries.one(P) + tail, star)
        self.assertEqual(sol.c, CRational.of(1))
        one = TPolySeries.constant(HSeries.one(P))
        self.assertEqual(star_product_t(sol.g, sol.g_inv, star), one)
        self.assertEqual(star_product_t(sol.g_inv, sol.g, star), one)
        d = TOperator.constant(lambda v: star(tail, v))
        self.assertTrue(ode_residual(sol.g, None, d).is_zero)

    def test_head_must_be_scalar(self):
        star = moyal(ConstPoissonMatrix.from_orders({1: [[0, 1], [-1, 0]]}, P))
        with self.assertRaises(NonConstantZerothOrder):
            star_exponential(HSeries.variable(0, P), star)


if __name__ == "__main__":
    unittest.main()
