"""Tests for the ``starforge`` command line."""

import io
import json
import tempfile
import unittest
from contextlib import redirect_stdout
from pathlib import Path

from starforge.cli import main, parse_args

SCENARIOS = Path(__file__).resolve().parents[1] / "scenarios"

MOYAL = """\
[moyal]
profile: "4,2,4,2"
pi:
  - ["0", "1 h"]
  - ["-1 h", "0"]
products:
  - f: "x^(1,0)"
    g: "x^(0,1)"
    value: "{value}"
"""


def _run(*argv: str) -> tuple[int, str]:
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


class CliTests(unittest.TestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self._tmp.cleanup)
        self.tmp = Path(self._tmp.name)

    def _scenario(self, value: str) -> str:
        path = self.tmp / "moyal.sf"
        path.write_text(MOYAL.format(value=value), encoding="utf-8")
        return str(path)

    def test_parse_args(self):
        args = parse_args(["selftest", "--suite", "ode", "--suite", "moyal"])
        self.assertEqual(args.command, "selftest")
        self.assertEqual(args.suite, ["ode", "moyal"])
        self.assertFalse(args.json)

    def test_passing_file_exits_zero(self):
        code, out = _run("run", self._scenario("x^(1,1) + 1 h"))
        self.assertEqual(code, 0)
        self.assertEqual(out.splitlines()[-1], "result: ok")
        self.assertNotIn("time", out)

    def test_failing_check_exits_one(self):
        code, out = _run("run", self._scenario("x^(1,1)"))
        self.assertEqual(code, 1)
        self.assertIn("product_1: 1 terms, first 1 h^1  FAILED", out)

    def test_json_report(self):
        code, out = _run("run", self._scenario("x^(1,1) + 1 h"), "--json")
        self.assertEqual(code, 0)
        data = json.loads(out)
        self.assertEqual(data["command"], "run")
        self.assertEqual(data["profile"], "4,2,4,2")
        self.assertEqual(data["groups"][0]["title"], "moyal #1")

    def test_input_errors_exit_two(self):
        garbage = self.tmp / "garbage.sf"
        garbage.write_text("[moyal]\npi: [[0, 1\n", encoding="utf-8")
        cases = {
            "missing file": ["run", str(self.tmp / "nope.sf")],
            "not closed": ["run", str(SCENARIOS / "non_closed_b.sf")],
            "bad yaml": ["run", str(garbage)],
            "bad profile": ["run", self._scenario("1"), "--profile", "4,2"],
            "profile cap": ["run", self._scenario("1"), "--profile", "17,2,4,2"],
            "selftest profile": ["selftest", "--profile", "2,2,2,2"],
        }
        for name, argv in cases.items():
            with self.subTest(name):
                code, out = _run(*argv)
                self.assertEqual(code, 2)
                self.assertTrue(out.startswith("[error] "), out)

    def test_selftest_one_suite(self):
        code, out = _run(
            "selftest", "--suite", "transition", "--profile", "3,4,6,2", "--seed", "5"
        )
        self.assertEqual(code, 0, out)
        self.assertIn("selftest: seed 5", out)
        self.assertIn("[transition]", out)


if __name__ == "__main__":
    unittest.main()
