"""Tests for running scenario files."""

import unittest
from pathlib import Path

from starforge.configs import load_scenarios
from starforge.flows import run_file, run_scenario, run_scenarios

SCENARIOS = Path(__file__).resolve().parents[2] / "scenarios"


def _moyal(value: str) -> str:
    return (
        "[moyal]\n"
        'profile: "4,2,4,2"\n'
        "pi:\n"
        '  - ["0", "1 h"]\n'
        '  - ["-1 h", "0"]\n'
        "products:\n"
        '  - f: "x^(1,0)"\n'
        '    g: "x^(0,1)"\n'
        f'    value: "{value}"\n'
    )


class RunScenarioTests(unittest.TestCase):
    def test_expected_product(self):
        (scenario,) = load_scenarios(_moyal("x^(1,1) + 1 h"))
        group = run_scenario(scenario, 3)
        self.assertEqual(group.title, "moyal #3")
        self.assertTrue(group.passed, group.lines())
        self.assertIn("(x^(1,0)) * (x^(0,1)) = 1 x^(1,1) + 1 h^1", group.notes)

    def test_wrong_product_fails(self):
        (scenario,) = load_scenarios(_moyal("x^(1,1) + -1 h"))
        group = run_scenario(scenario)
        self.assertFalse(group.passed)
        failed = [c.name for c in group.checks if not c.passed]
        self.assertEqual(failed, ["product_1"])

    def test_winding_mismatch_is_a_group_error(self):
        text = (
            "[transition-demo]\n"
            'profile: "4,2,4,2"\n'
            "pi:\n"
            '  - ["0", "1 h"]\n'
            '  - ["-1 h", "0"]\n'
            "cocycle:\n"
            '  "12": "1/2"\n'
            '  "23": "1/3"\n'
            '  "31": "-5/6"\n'
            "winding: 1\n"
        )
        report = run_scenarios(load_scenarios(text), "demo.sf")
        (group,) = report.groups
        self.assertIsNotNone(group.error)
        self.assertFalse(report.passed)
        self.assertEqual(report.lines()[-1], "result: FAILED (1)")

    def test_fedosov_fixture(self):
        text = '[fedosov]\nprofile: "3,2,6,2"\nfixture: curved\n'
        report = run_scenarios(load_scenarios(text))
        self.assertEqual(report.profile, "3,2,6,2")
        self.assertTrue(report.passed, report.lines())


class RunFileTests(unittest.TestCase):
    def test_examples_pass(self):
        report = run_file(SCENARIOS / "examples.sf")
        self.assertTrue(report.passed, "\n".join(report.lines()))
        self.assertEqual(len(report.groups), 9)
        self.assertEqual(report.groups[3].title, "transition-demo #4")
        self.assertIn("triple product at t=1: 1", report.groups[3].notes)

    def test_report_is_reproducible(self):
        scenarios = load_scenarios(_moyal("x^(1,1) + 1 h"))
        first = run_scenarios(scenarios, "a.sf").to_json()
        self.assertEqual(first, run_scenarios(scenarios, "a.sf").to_json())


if __name__ == "__main__":
    unittest.main()
