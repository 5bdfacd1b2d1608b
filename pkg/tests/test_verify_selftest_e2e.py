"""Tests for the full-selftest verification script."""

import io
import unittest
from contextlib import redirect_stdout
from unittest.mock import AsyncMock, patch

from scripts import verify_selftest_e2e
from starforge.flows import Check, CheckGroup, Report


def _report(*groups: CheckGroup) -> Report:
    return Report(
        command="selftest", source="seed 1", profile="6,4,6,2", groups=list(groups)
    )


class VerifySelftestTests(unittest.IsolatedAsyncioTestCase):
    async def _main(self, selftest: AsyncMock) -> tuple[int, str]:
        buf = io.StringIO()
        with (
            patch.object(verify_selftest_e2e, "selftest", selftest),
            patch.object(verify_selftest_e2e, "configure_logging"),
            redirect_stdout(buf),
        ):
            code = await verify_selftest_e2e.main()
        return code, buf.getvalue()

    async def test_pass(self):
        group = CheckGroup(title="moyal", checks=[Check(name="a", terms=0)])
        code, out = await self._main(AsyncMock(return_value=_report(group)))
        self.assertEqual(code, 0)
        self.assertIn(
            "[PASS] selftest: suite=moyal checks=1 failed=0 seconds=0.0", out
        )
        self.assertTrue(out.rstrip().endswith("[PASS] selftest: profile=6,4,6,2"))

    async def test_failed_suite(self):
        group = CheckGroup(title="ode", error="boom")
        code, out = await self._main(AsyncMock(return_value=_report(group)))
        self.assertEqual(code, 1)
        self.assertIn("[FAIL] selftest: suite=ode checks=0 failed=1", out)
        self.assertIn("error=boom", out)

    async def test_crash(self):
        code, out = await self._main(AsyncMock(side_effect=RuntimeError("x")))
        self.assertEqual(code, 1)
        self.assertEqual(out, "[FAIL] selftest: RuntimeError: x\n")


if __name__ == "__main__":
    unittest.main()
