"""Logging utilities for star-forge."""

import logging
import os
import sys
from typing import Optional


class ColoredFormatter(logging.Formatter):
    """Formatter that colors the level name (whole line for errors)."""

    COLORS = {
        "DEBUG": "\033[36m",
        "INFO": "\033[32m",
        "WARNING": "\033[33m",
        "ERROR": "\033[31m",
        "CRITICAL": "\033[35m",
        "RESET": "\033[0m",
    }

    BOLD_COLORS = {
        "DEBUG": "\033[1;36m",
        "INFO": "\033[1;32m",
        "WARNING": "\033[1;33m",
        "ERROR": "\033[1;31m",
        "CRITICAL": "\033[1;35m",
        "RESET": "\033[0m",
    }

    def __init__(self, *args, use_color: bool | None = None, **kwargs):
        """Initialize the colored formatter.

        Args:
            *args: Positional arguments passed to parent Formatter
            use_color: Whether to use colors. If None, auto-detect based on
                terminal and the ``NO_COLOR`` convention.
            **kwargs: Keyword arguments passed to parent Formatter
        """
        super().__init__(*args, **kwargs)
        if use_color is None:
            self.use_color = (
                hasattr(sys.stdout, "isatty")
                and sys.stdout.isatty()
                and os.environ.get("TERM") != "dumb"
                and os.environ.get("NO_COLOR") is None
            )
        else:
            self.use_color = use_color

    def format(self, record):
        """Format the log record with colors."""
        formatted = super().format(record)
        if not self.use_color:
            return formatted

        severe = record.levelname in ("ERROR", "CRITICAL")
        colors = self.BOLD_COLORS if severe else self.COLORS
        color = colors.get(record.levelname, colors["RESET"])
        reset = colors["RESET"]
        if severe:
            return f"{color}{formatted}{reset}"
        level_colored = f"{color}{record.levelname}{reset}"
        return formatted.replace(record.levelname, level_colored, 1)


def _level_from_env(default: int) -> int:
    raw = os.environ.get("STARFORGE_LOG_LEVEL")
    if not raw:
        return default
    value = logging.getLevelName(raw.strip().upper())
    return value if isinstance(value, int) else default


def setup_logger(
    name: Optional[str] = None,
    level: int = logging.INFO,
    format_string: Optional[str] = None,
    use_color: Optional[bool] = None,
    file_output: Optional[str] = None,
) -> logging.Logger:
    """Set up a logger with consistent formatting and optional colors.

    Args:
        name: Logger name (defaults to 'starforge')
        level: Logging level
        format_string: Custom format string
        use_color: Whether to use colors (auto-detect if None)
        file_output: Optional file path for file logging

    Returns:
        Configured logger instance
    """
    if name is None:
        name = "starforge"
    if format_string is None:
        format_string = (
            "[%(asctime)s %(levelname)-8s %(name)s %(filename)s:%(lineno)d] %(message)s"
        )

    logger = logging.getLogger(name)
    if not logger.handlers:
        logger.setLevel(level)

        console_handler = logging.StreamHandler(sys.stdout)
        console_handler.setLevel(level)
        console_handler.setFormatter(
            ColoredFormatter(
                format_string, datefmt="%Y-%m-%d %H:%M:%S", use_color=use_color
            )
        )
        logger.addHandler(console_handler)

        if file_output:
            file_handler = logging.FileHandler(file_output)
            file_handler.setLevel(level)
            file_handler.setFormatter(
                logging.Formatter(format_string, datefmt="%Y-%m-%d %H:%M:%S")
            )
            logger.addHandler(file_handler)

        logger.propagate = False

    return logger


def get_logger(
    name: str,
    level: Optional[int] = None,
    use_color: Optional[bool] = None,
    file_output: Optional[str] = None,
) -> logging.Logger:
    """Get a ``starforge.<module>`` logger.

    Args:
        name: Logger name (usually __name__); only the last dotted part is
            kept.
        level: Optional logging level override
        use_color: Whether to use colors (auto-detect if None)
        file_output: Optional file path for file logging

    Returns:
        Logger instance
    """
    module_name = name.split(".")[-1] if "." in name else name
    logger_name = f"starforge.{module_name}"

    logger = logging.getLogger(logger_name)
    if logger.handlers:
        return logger

    return setup_logger(
        name=logger_name,
        level=level or _level_from_env(logging.INFO),
        use_color=use_color,
        file_output=file_output,
    )


def configure_logging(
    level: int = logging.INFO,
    use_color: Optional[bool] = None,
    file_output: Optional[str] = None,
    format_string: Optional[str] = None,
) -> None:
    """Configure the ``starforge`` root logger and every child logger.

    Child loggers created by ``get_logger`` own their handlers, so the new
    level is pushed down to them as well.

    Args:
        level: Global logging level
        use_color: Whether to use colors (auto-detect if None)
        file_output: Optional file path for file logging
        format_string: Custom format string
    """
    root = setup_logger(
        name="starforge",
        level=level,
        format_string=format_string,
        use_color=use_color,
        file_output=file_output,
    )
    root.setLevel(level)
    for existing in list(logging.Logger.manager.loggerDict.values()):
        if isinstance(existing, logging.Logger) and existing.name.startswith(
            "starforge"
        ):
            existing.setLevel(level)
            for handler in existing.handlers:
                handler.setLevel(level)


setup_logger("starforge", level=_level_from_env(logging.INFO))
