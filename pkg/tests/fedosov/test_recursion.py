"""Tests for the Weyl-bundle recursion and the two Fedosov products."""

import unittest
from fractions import Fraction

import sympy

from starforge.core import (
    HMatrix,
    HSeries,
    IncompatibleConnection,
    TruncationProfile,
    WeylElement,
    parse_series,
    parse_weyl,
)
from starforge.fedosov import (
    ConnectionData,
    FiberProduct,
    WeylConnection,
    certificate_residual,
    curvature,
    delta,
    delta_inverse,
    fedosov_class_residual,
    fedosov_fixtures,
    fedosov_recursion,
    flat_lift,
    hodge_residual,
    original_fedosov,
    scaled_j,
    star_modified,
    star_original,
    substitute_y,
    xi_bridge,
)

P = TruncationProfile(hbar_order=3, x_degree=2, y_degree=6, dim=2)


def _fixtures():
    return {f.name: f for f in fedosov_fixtures(P)}


class FiberTests(unittest.TestCase):
    def setUp(self):
        self.a = parse_weyl(
            "1 x^(1,0) y^(1,1) dx{1} + 2 h y^(2,0) + 3 dx{1,2} + 1/2 y^(0,1)", P
        )

    def test_delta_squares_to_zero(self):
        self.assertFalse(delta(delta(self.a)))
        self.assertFalse(delta_inverse(delta_inverse(self.a)))

    def test_hodge_decomposition(self):
        self.assertFalse(hodge_residual(self.a))

    def test_delta_inverse_of_dx(self):
        dx1 = WeylElement.dx(0, P)
        self.assertEqual(delta_inverse(dx1), WeylElement.y(0, P))
        self.assertEqual(delta(WeylElement.y(0, P)), dx1)

    def test_delta_inverse_of_mixed_monomial(self):
        a = parse_weyl("1 y^(1,0) dx{2}", P)
        self.assertEqual(delta_inverse(a), parse_weyl("1/2 y^(1,1)", P))
        self.assertFalse(a.sigma())
        self.assertFalse(hodge_residual(a))

    def test_commutator_of_generators(self):
        product = FiberProduct(scaled_j({1: 1}, P))
        y1, y2 = WeylElement.y(0, P), WeylElement.y(1, P)
        self.assertEqual(
            product.commutator(y1, y2), WeylElement.monomial(P, c=2, hbar_power=1)
        )
        self.assertEqual(product.bracket_over_hbar(y1, y2), WeylElement.one(P))

    def test_fiber_matrix_needs_hbar(self):
        with self.assertRaises(ValueError):
            FiberProduct(HMatrix.from_scalars([[0, 1], [-1, 0]], P))


class ConnectionDataTests(unittest.TestCase):
    def test_flat(self):
        self.assertTrue(ConnectionData.flat(P).is_flat())
        self.assertFalse(_fixtures()["curved"].connection.is_flat())

    def test_from_entries_symmetrizes(self):
        one = HSeries.one(P)
        data = ConnectionData.from_entries({(0, 0, 1): one}, P)
        self.assertEqual(data.gamma[0][1, 0], one)

    def test_conflicting_entries(self):
        one = HSeries.one(P)
        with self.assertRaises(IncompatibleConnection):
            ConnectionData.from_entries({(0, 0, 1): one, (0, 1, 0): one.scale(2)}, P)

    def test_torsion_rejected(self):
        asym = HMatrix.from_scalars([[0, 1], [0, 0]], P)
        with self.assertRaises(IncompatibleConnection):
            ConnectionData((asym, HMatrix.zero(2, P)))

    def test_connection_must_preserve_pi(self):
        data = ConnectionData.from_entries({(0, 0, 0): HSeries.one(P)}, P)
        with self.assertRaises(IncompatibleConnection):
            fedosov_recursion(data, scaled_j({1: 1}, P))

    def test_fixtures_live_on_the_plane(self):
        self.assertEqual(
            [f.name for f in fedosov_fixtures(P)], ["flat", "curved", "curved-hbar"]
        )
        with self.assertRaises(ValueError):
            fedosov_fixtures(P.with_bounds(dim=3))


CURVED = TruncationProfile(hbar_order=3, x_degree=4, y_degree=4, dim=2)
X = sympy.symbols("x1 x2")
Y = sympy.symbols("y1 y2")
J = [[0, 1], [-1, 0]]

# Symplectic for pi = hbar J: hbar J^-1 Gamma^.._ij is totally symmetric
SYMPLECTIC_GAMMAS = {
    "shear": {(0, 0, 0): X[1], (1, 0, 1): -X[1]},
    "cubic": {(1, 1, 1): X[0], (0, 0, 1): -X[0]},
}


def _rational(c: sympy.Rational) -> Fraction:
    return Fraction(int(c.p), int(c.q))


def _series(expr: sympy.Expr) -> HSeries:
    out = HSeries.zero(CURVED)
    for exp, c in sympy.Poly(expr, *X).terms():
        out = out + HSeries.monomial(exp, CURVED, _rational(c))
    return out


def _connection(entries: dict) -> ConnectionData:
    return ConnectionData.from_entries(
        {key: _series(v) for key, v in entries.items()}, CURVED
    )


def _riemann_two_form(entries: dict) -> WeylElement:
    """``1/2 Omega_qm R^m_j12 y^q y^j dx^1 dx^2`` with
    ``R^m_jai = d_a G^m_ij - d_i G^m_aj + G^m_ak G^k_ij - G^m_ik G^k_aj``.
    """
    g = [[[sympy.Integer(0)] * 2 for _ in range(2)] for _ in range(2)]
    for (k, i, j), v in entries.items():
        g[k][i][j] = g[k][j][i] = v
    omega = -sympy.Matrix(J) / 2
    a, i = 0, 1
    expr = sympy.Integer(0)
    for m in range(2):
        for j in range(2):
            riemann = sympy.diff(g[m][i][j], X[a]) - sympy.diff(g[m][a][j], X[i])
            for k in range(2):
                riemann += g[m][a][k] * g[k][i][j] - g[m][i][k] * g[k][a][j]
            for q in range(2):
                expr += omega[q, m] * riemann * Y[q] * Y[j]
    out = WeylElement.zero(CURVED)
    for (e1, e2, f1, f2), c in sympy.Poly(sympy.expand(expr / 2), *X, *Y).terms():
        out = out + WeylElement.monomial(
            CURVED, c=_rational(c), x=(e1, e2), y=(f1, f2), dx=(0, 1)
        )
    return out


class CurvatureTests(unittest.TestCase):
    def setUp(self):
        self.pi = scaled_j({1: 1}, CURVED)

    def test_shear_curvature(self):
        r = curvature(_connection(SYMPLECTIC_GAMMAS["shear"]), self.pi)
        expected = parse_weyl(
            "-1/2 y^(1,1) dx{1,2} + -1/2 x^(0,2) y^(2,0) dx{1,2}", CURVED
        )
        self.assertEqual(r, expected)

    def test_matches_riemann_tensor(self):
        for name, entries in SYMPLECTIC_GAMMAS.items():
            with self.subTest(name=name):
                expected = _riemann_two_form(entries)
                self.assertTrue(expected)
                self.assertEqual(curvature(_connection(entries), self.pi), expected)

    def test_curvature_generates_nabla_squared(self):
        y1, y2 = WeylElement.y(0, CURVED), WeylElement.y(1, CURVED)
        x2y1 = WeylElement.monomial(CURVED, x=(0, 1), y=(1, 0))
        for name, entries in SYMPLECTIC_GAMMAS.items():
            nabla = WeylConnection(_connection(entries), self.pi)
            for a in (y1, y2, y1 * y2, x2y1):
                with self.subTest(name=name, a=str(a)):
                    self.assertFalse(nabla.curvature_residual(a))


class RecursionTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        cls.states = {}
        for name, f in _fixtures().items():
            cls.states[name] = {
                mode: fedosov_recursion(f.connection, f.pi, mode)
                for mode in ("quantum", "classical")
            }

    def test_unknown_mode(self):
        f = _fixtures()["flat"]
        with self.assertRaises(ValueError):
            fedosov_recursion(
                f.connection, f.pi, "semiclassical"  # type: ignore[arg-type]
            )

    def test_certificates(self):
        for name, by_mode in self.states.items():
            for mode, state in by_mode.items():
                with self.subTest(fixture=name, mode=mode):
                    self.assertEqual(state.mode, mode)
                    self.assertFalse(certificate_residual(state))
                    self.assertFalse(fedosov_class_residual(state))

    def test_flat_chart_has_no_correction(self):
        state = self.states["flat"]["quantum"]
        self.assertFalse(state.r)
        self.assertFalse(state.curvature)

    def test_differential_is_flat(self):
        y1, y2 = WeylElement.y(0, P), WeylElement.y(1, P)
        for name in ("curved", "curved-hbar"):
            state = self.states[name]["quantum"]
            with self.subTest(fixture=name):
                self.assertFalse(state.flatness_residual(y1))
                self.assertFalse(state.derivation_residual(y1, y2))

    def test_classical_agrees_through_hbar(self):
        for name, by_mode in self.states.items():
            with self.subTest(fixture=name):
                gap = by_mode["quantum"].r - by_mode["classical"].r
                self.assertFalse(gap.truncate_hbar(1))

    def test_quantum_correction_at_hbar_squared(self):
        by_mode = self.states["curved"]
        gap = by_mode["quantum"].r - by_mode["classical"].r
        self.assertTrue(gap.hbar_part(2))

    def test_xi_bridge(self):
        by_mode = self.states["curved"]
        xi = xi_bridge(by_mode["quantum"], by_mode["classical"])
        hbar = HSeries.constant(1, P, hbar_power=1)
        self.assertEqual(xi * hbar, by_mode["classical"].b - by_mode["quantum"].b)
        with self.assertRaises(ValueError):
            xi_bridge(by_mode["classical"], by_mode["quantum"])


class ProductTests(unittest.TestCase):
    @classmethod
    def setUpClass(cls):
        fixtures = _fixtures()
        cls.quantum = {
            name: fedosov_recursion(f.connection, f.pi) for name, f in fixtures.items()
        }
        cls.x1 = HSeries.variable(0, P)
        cls.x2 = HSeries.variable(1, P)

    def test_flat_lift_is_taylor_shift(self):
        tau = flat_lift(self.quantum["flat"], self.x1)
        self.assertEqual(tau, parse_weyl("1 x^(1,0) + 1 y^(1,0)", P))

    def test_lift_symbol(self):
        for name, state in self.quantum.items():
            with self.subTest(fixture=name):
                tau = flat_lift(state, self.x1)
                self.assertEqual(tau.sigma(), self.x1)
                self.assertFalse(state.differential(tau))

    def test_flat_product_is_moyal(self):
        value = star_modified(self.quantum["flat"], self.x1, self.x2)
        self.assertEqual(value, parse_series("x^(1,1) + h", P))

    def test_modified_needs_quantum_state(self):
        f = _fixtures()["flat"]
        classical = fedosov_recursion(f.connection, f.pi, "classical")
        with self.assertRaises(ValueError):
            star_modified(classical, self.x1, self.x2)
        with self.assertRaises(ValueError):
            original_fedosov(classical)

    def test_original_product(self):
        for name, state in self.quantum.items():
            with self.subTest(fixture=name):
                original = original_fedosov(state)
                self.assertFalse(original.class_residual())
                self.assertEqual(
                    star_original(state, self.x1, self.x2),
                    star_modified(state, self.x1, self.x2),
                )

    def test_substitute_identity(self):
        a = parse_weyl("1 y^(2,1) dx{1} + 1/3 h y^(0,1)", P)
        self.assertEqual(substitute_y(a, HMatrix.identity(2, P)), a)


if __name__ == "__main__":
    unittest.main()
