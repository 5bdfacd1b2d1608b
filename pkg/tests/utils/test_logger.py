"""Tests for starforge.utils.logger."""

import io
import logging
import os
import unittest
from unittest.mock import patch

from starforge.utils import configure_logging, get_logger
from starforge.utils.logger import ColoredFormatter


class GetLoggerTests(unittest.TestCase):
    def test_keeps_last_dotted_part(self):
        logger = get_logger("starforge.fedosov._recursion")
        self.assertEqual(logger.name, "starforge._recursion")
        self.assertIs(get_logger("other._recursion"), logger)

    def test_level_from_env(self):
        with patch.dict(os.environ, {"STARFORGE_LOG_LEVEL": "debug"}):
            logger = get_logger("starforge.test_env_debug")
        self.assertEqual(logger.level, logging.DEBUG)
        with patch.dict(os.environ, {"STARFORGE_LOG_LEVEL": "chatty"}):
            logger = get_logger("starforge.test_env_bad")
        self.assertEqual(logger.level, logging.INFO)


class ConfigureLoggingTests(unittest.TestCase):
    def tearDown(self):
        configure_logging(logging.INFO)

    def test_pushes_level_to_children(self):
        child = get_logger("starforge.test_child")
        configure_logging(logging.WARNING)
        self.assertEqual(child.level, logging.WARNING)
        self.assertTrue(all(h.level == logging.WARNING for h in child.handlers))


class ColoredFormatterTests(unittest.TestCase):
    def _record(self, level: int) -> logging.LogRecord:
        return logging.LogRecord("x", level, __file__, 1, "msg", None, None)

    def test_plain(self):
        fmt = ColoredFormatter("%(levelname)s %(message)s", use_color=False)
        self.assertEqual(fmt.format(self._record(logging.INFO)), "INFO msg")

    def test_colored_level(self):
        fmt = ColoredFormatter("%(levelname)s %(message)s", use_color=True)
        out = fmt.format(self._record(logging.INFO))
        self.assertEqual(out, "\033[32mINFO\033[0m msg")
        severe = fmt.format(self._record(logging.ERROR))
        self.assertTrue(severe.startswith("\033[1;31m"))

    def test_handler_writes_to_its_stream(self):
        stream = io.StringIO()
        handler = logging.StreamHandler(stream)
        handler.setFormatter(ColoredFormatter("%(message)s", use_color=False))
        logger = logging.getLogger("starforge.test_stream")
        logger.addHandler(handler)
        logger.propagate = False
        logger.warning("residual has %d terms", 3)
        logger.removeHandler(handler)
        self.assertEqual(stream.getvalue(), "residual has 3 terms\n")


if __name__ == "__main__":
    unittest.main()
