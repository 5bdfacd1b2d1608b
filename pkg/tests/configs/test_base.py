"""Tests for configs.base."""

import unittest

from pydantic import ValidationError

from starforge.configs import (
    MAX_HBAR_ORDER,
    BaseScenario,
    check_profile_caps,
    constant_poisson_matrix,
    parse_matrix,
)
from starforge.core import (
    DEFAULT_PROFILE,
    GrammarError,
    HSeries,
    NotAntisymmetric,
    NotFormal,
    TruncationProfile,
)

P = TruncationProfile(hbar_order=3, x_degree=2, y_degree=4, dim=2)


class BaseScenarioTests(unittest.TestCase):
    def test_defaults(self):
        s = BaseScenario(kind="moyal")
        self.assertEqual(s.profile, DEFAULT_PROFILE)

    def test_profile_from_text(self):
        s = BaseScenario(kind="moyal", profile="3,2,4,2")  # type: ignore[arg-type]
        self.assertEqual(s.profile, P)

    def test_extra_forbidden(self):
        with self.assertRaises(ValidationError):
            BaseScenario(kind="moyal", unknown=True)  # type: ignore[call-arg]

    def test_profile_caps(self):
        too_deep = P.with_bounds(hbar_order=MAX_HBAR_ORDER + 1)
        with self.assertRaises(ValueError):
            check_profile_caps(too_deep)
        with self.assertRaises(ValidationError):
            BaseScenario(kind="moyal", profile="6,9,6,2")  # type: ignore[arg-type]
        self.assertIs(check_profile_caps(P), P)


class MatrixPayloadTests(unittest.TestCase):
    def test_parse_matrix(self):
        m = parse_matrix([["0", "1 h"], ["-1 h", "x^(1,0)"]], P)
        self.assertEqual(m[0, 1], HSeries.constant(1, P, hbar_power=1))
        self.assertEqual(m[1, 1], HSeries.variable(0, P))

    def test_shape(self):
        with self.assertRaises(ValueError):
            parse_matrix([["0", "1"]], P)
        with self.assertRaises(GrammarError):
            parse_matrix([["0", "1 q"], ["0", "0"]], P)

    def test_constant_poisson_matrix(self):
        m = constant_poisson_matrix([["0", "1 h"], ["-1 h", "0"]], P)
        self.assertTrue(m.is_antisymmetric())
        cases = [
            ([["0", "1 h"], ["1 h", "0"]], NotAntisymmetric),
            ([["0", "1"], ["-1", "0"]], NotFormal),
            ([["0", "1 h x^(1,0)"], ["-1 h x^(1,0)", "0"]], ValueError),
        ]
        for rows, error in cases:
            with self.subTest(rows=rows):
                with self.assertRaises(error):
                    constant_poisson_matrix(rows, P)


if __name__ == "__main__":
    unittest.main()
