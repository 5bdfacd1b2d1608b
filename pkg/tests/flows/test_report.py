"""Tests for check summaries and report rendering."""

import json
import unittest

from starforge.core import HMatrix, HSeries, TruncationProfile, parse_series
from starforge.flows import (
    Check,
    CheckGroup,
    Report,
    equality_check,
    family_check,
    residual_check,
    summarize,
)

P = TruncationProfile(hbar_order=3, x_degree=2, y_degree=4, dim=2)


class SummarizeTests(unittest.TestCase):
    def test_series(self):
        self.assertEqual(summarize(HSeries.zero(P)), (0, None))
        s = parse_series("x^(0,1) + 2 h", P)
        self.assertEqual(summarize(s), (2, "1 x^(0,1)"))

    def test_containers_label_the_first_term(self):
        s = parse_series("3 h^2", P)
        self.assertEqual(summarize([HSeries.zero(P), s]), (1, "#1: 3 h^2"))
        self.assertEqual(summarize({"b": s, "a": s}), (2, "a: 3 h^2"))
        m = HMatrix.from_scalars([[0, 1], [-1, 0]], P, hbar_power=1)
        self.assertEqual(summarize(m), (2, "[1,2]: 1 h^1"))

    def test_unknown_carrier(self):
        with self.assertRaises(TypeError):
            summarize(3)


class CheckTests(unittest.TestCase):
    def test_zero_residual_passes(self):
        check = residual_check("assoc", HSeries.zero(P))
        self.assertTrue(check.passed)
        self.assertEqual(check.line(), "assoc: 0 terms")

    def test_nonzero_residual_fails(self):
        check = residual_check("assoc", parse_series("h", P))
        self.assertFalse(check.passed)
        self.assertEqual(check.line(), "assoc: 1 terms, first 1 h^1  FAILED")

    def test_witness(self):
        self.assertTrue(residual_check("w", parse_series("h", P), "nonzero").passed)
        empty = residual_check("w", HSeries.zero(P), "nonzero")
        self.assertEqual(empty.line(), "w: 0 terms (witness)  FAILED")

    def test_family(self):
        values = [HSeries.zero(P), parse_series("x^(1,0)", P)]
        check = family_check("lifts", values)
        self.assertEqual(check.terms, 1)
        self.assertEqual(check.first, "instance 1: 1 x^(1,0)")

    def test_equality(self):
        self.assertTrue(equality_check("winding", 1, 1).passed)
        self.assertEqual(equality_check("winding", 0, 1).first, "got 0, want 1")


class ReportTests(unittest.TestCase):
    def setUp(self):
        ok = CheckGroup(title="moyal #1", checks=[Check(name="a", terms=0)])
        bad = CheckGroup(title="gauge #2", error="boom", seconds=1.5)
        self.report = Report(command="run", source="x.sf", profile="3,2,4,2")
        self.report.groups = [ok, bad]
        self.ok, self.bad = ok, bad

    def test_group_status(self):
        self.assertTrue(self.ok.passed)
        self.assertFalse(self.bad.passed)
        self.assertEqual(self.bad.failed_checks, 1)
        self.assertEqual(
            self.bad.lines(), ["[gauge #2]", "  error: boom", "  status: FAILED"]
        )
        self.assertIn("  time: 1.500s", self.bad.lines(timing=True))

    def test_lines(self):
        lines = self.report.lines()
        self.assertEqual(lines[:2], ["run: x.sf", "profile: 3,2,4,2"])
        self.assertEqual(lines[-1], "result: FAILED (1)")
        self.assertFalse(any("time" in line for line in lines))

    def test_json_is_reproducible_without_timing(self):
        data = json.loads(self.report.to_json())
        self.assertNotIn("seconds", data)
        self.assertNotIn("seconds", data["groups"][1])
        self.assertEqual(data["groups"][1]["error"], "boom")
        timed = json.loads(self.report.to_json(timing=True))
        self.assertEqual(timed["groups"][1]["seconds"], 1.5)


if __name__ == "__main__":
    unittest.main()
