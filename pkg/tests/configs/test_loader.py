"""Tests for the scenario file loader."""

import unittest
from pathlib import Path

from starforge.configs import (
    BFieldScenario,
    FedosovScenario,
    MoyalScenario,
    ScenarioValidationError,
    dump_scenarios,
    load_scenario_file,
    load_scenarios,
    split_sections,
)
from starforge.core import GrammarError, TruncationProfile

SCENARIOS = Path(__file__).resolve().parents[2] / "scenarios"

MOYAL = """\
# leading comment

[moyal]
profile: "3,2,4,2"
pi:
  - ["0", "1 h"]
  - ["-1 h", "0"]
"""


class SplitSectionsTests(unittest.TestCase):
    def test_headers_and_lines(self):
        sections = split_sections(MOYAL + "\n[fedosov]\nfixture: flat\n")
        self.assertEqual([s.kind for s in sections], ["moyal", "fedosov"])
        self.assertEqual(sections[0].line, 3)
        self.assertEqual(sections[0].key_line("pi"), 5)
        self.assertEqual(sections[0].key_line("missing"), 3)

    def test_content_before_header(self):
        with self.assertRaises(GrammarError) as ctx:
            split_sections("pi: 1\n[moyal]\n")
        self.assertIn("line 1", str(ctx.exception))


class LoadScenariosTests(unittest.TestCase):
    def test_moyal(self):
        (s,) = load_scenarios(MOYAL)
        self.assertIsInstance(s, MoyalScenario)
        self.assertEqual(str(s.profile), "3,2,4,2")
        self.assertEqual(s.products, [])

    def test_profile_override(self):
        p = TruncationProfile(hbar_order=4, x_degree=2, y_degree=4, dim=2)
        (s,) = load_scenarios(MOYAL, profile=p)
        self.assertEqual(s.profile, p)

    def test_grammar_errors(self):
        cases = {
            "unknown kind": "[star]\npi: 1\n",
            "bad yaml": "[moyal]\npi: [[0, 1\n",
            "not a mapping": "[moyal]\n- 1\n- 2\n",
            "kind in body": "[moyal]\nkind: gauge\n",
            "empty file": "# nothing here\n",
        }
        for name, text in cases.items():
            with self.subTest(name):
                with self.assertRaises(GrammarError):
                    load_scenarios(text)

    def test_unknown_kind_names_line(self):
        with self.assertRaises(GrammarError) as ctx:
            load_scenarios("\n\n[star]\n")
        self.assertIn("line 3", str(ctx.exception))

    def test_validation_error_names_field_and_line(self):
        text = "[moyal]\nprofile: \"3,2,4,2\"\npi:\n  - [0, 0.5]\n  - [-0.5, 0]\n"
        with self.assertRaises(ScenarioValidationError) as ctx:
            load_scenarios(text)
        self.assertEqual(ctx.exception.line, 3)
        self.assertEqual(ctx.exception.field, "pi.0.1")

    def test_payload_error_points_at_header(self):
        text = "[fedosov]\nfixture: flat\npi:\n  - [0, 1 h]\n  - [-1 h, 0]\n"
        with self.assertRaises(ScenarioValidationError) as ctx:
            load_scenarios(text)
        self.assertEqual(ctx.exception.line, 1)
        self.assertIn("exactly one", str(ctx.exception))


class ScenarioFileTests(unittest.TestCase):
    def test_examples(self):
        scenarios = load_scenario_file(SCENARIOS / "examples.sf")
        self.assertEqual(
            [s.kind for s in scenarios],
            [
                "moyal",
                "normalizer",
                "bfield-equivalence",
                "transition-demo",
                "gauge",
                "fedosov",
                "fedosov",
                "ode",
                "dgla-suite",
            ],
        )
        self.assertIsInstance(scenarios[2], BFieldScenario)
        self.assertIsInstance(scenarios[5], FedosovScenario)

    def test_non_closed_b_field(self):
        with self.assertRaises(ScenarioValidationError) as ctx:
            load_scenario_file(SCENARIOS / "non_closed_b.sf")
        self.assertIn("not closed", str(ctx.exception))

    def test_dump_loads_back(self):
        scenarios = load_scenario_file(SCENARIOS / "examples.sf")
        self.assertEqual(load_scenarios(dump_scenarios(scenarios)), scenarios)


if __name__ == "__main__":
    unittest.main()
