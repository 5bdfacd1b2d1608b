"""Tests for polydifferential cochains and the Hochschild calculus."""

import unittest

from starforge.core import ArityMismatch, HSeries, TruncationProfile
from starforge.hochschild import (
    PolyDiffOp,
    associator,
    gerstenhaber,
    hoch_coboundary,
    interpolate,
    multi_indices,
    partial_op,
    pointwise,
)

P = TruncationProfile(hbar_order=2, x_degree=3, y_degree=4, dim=2)


def _x(i: int) -> HSeries:
    return HSeries.variable(i, P)


class PolyDiffOpTests(unittest.TestCase):
    def test_apply(self):
        self.assertEqual(partial_op(0, P)(_x(0) ** 2), _x(0).scale(2))
        self.assertEqual(pointwise(P)(_x(0), _x(1)), _x(0) * _x(1))
        with self.assertRaises(ArityMismatch):
            partial_op(0, P)(_x(0), _x(1))

    def test_compose_is_leibniz(self):
        x_d2 = PolyDiffOp.derivation((0, 1), P, _x(0))
        composed = partial_op(0, P).compose(x_d2)
        f = _x(0) * _x(1) ** 2
        self.assertEqual(composed(f), partial_op(0, P)(x_d2(f)))

    def test_normalization(self):
        op = PolyDiffOp.identity(P) + partial_op(1, P)
        self.assertFalse(op.is_normalized())
        self.assertEqual(op.normalized(), partial_op(1, P))
        self.assertEqual(op.order(), 1)
        self.assertEqual(op.degree, 0)


class HochschildTests(unittest.TestCase):
    def test_derivations_are_cocycles(self):
        self.assertTrue(hoch_coboundary(partial_op(1, P)).is_zero)

    def test_coboundary_squares_to_zero(self):
        op = PolyDiffOp.monomial(((1, 0),), P, _x(1) ** 2)
        self.assertTrue(hoch_coboundary(hoch_coboundary(op)).is_zero)
        self.assertTrue(
            hoch_coboundary(hoch_coboundary(PolyDiffOp.multiplication(_x(0)))).is_zero
        )

    def test_bracket_with_product_is_coboundary(self):
        op = PolyDiffOp.monomial(((1, 0), (0, 1)), P, _x(0))
        self.assertEqual(gerstenhaber(pointwise(P), op), hoch_coboundary(op))

    def test_pointwise_associative(self):
        m = pointwise(P)
        self.assertTrue(associator(m).is_zero)
        self.assertTrue(gerstenhaber(m, m).is_zero)


class InterpolateTests(unittest.TestCase):
    def test_recovers_bidifferential(self):
        def fn(f: HSeries, g: HSeries) -> HSeries:
            return f.partial(0) * g.partial(1)

        expected = PolyDiffOp.monomial(((1, 0), (0, 1)), P)
        self.assertEqual(interpolate(fn, 2, P), expected)

    def test_multi_indices_graded(self):
        self.assertEqual(multi_indices(2, 1), [(0, 0), (1, 0), (0, 1)])
        self.assertEqual(len(multi_indices(2, 3)), 10)


if __name__ == "__main__":
    unittest.main()
