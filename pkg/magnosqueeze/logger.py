"""Logging functions for magnosqueeze."""

import logging
import os
import sys
from collections.abc import Iterator
from contextlib import contextmanager


# ANSI color codes
class Colors:
    RED = "\033[0;31m"
    GREEN = "\033[0;32m"
    YELLOW = "\033[1;33m"
    BLUE = "\033[0;34m"
    CYAN = "\033[0;36m"
    NC = "\033[0m"  # No Color


class Logger:
    """Colored logger that tags messages with the simulation phase they belong to.

    The level starts from `LOG_LEVEL` and can be changed later with `set_level`, which is how
    the command line applies `--verbose`.
    """

    def __init__(self, name: str = "magnosqueeze"):
        self.level = os.environ.get("LOG_LEVEL", "INFO").upper()
        self.current_phase: str | None = None

        self.logger = logging.getLogger(name)
        if not self.logger.handlers:
            handler = logging.StreamHandler()
            handler.setFormatter(
                logging.Formatter(
                    f"{Colors.BLUE}[%(levelname)s]{Colors.NC} %(asctime)s %(message)s",
                    datefmt="%Y-%m-%d %H:%M:%S",
                )
            )
            self.logger.addHandler(handler)
        self.logger.setLevel(self.level)

    def set_level(self, level: str | int) -> None:
        """Switch the threshold, by name (`DEBUG`) or number."""

        self.level = logging.getLevelName(level) if isinstance(level, int) else level.upper()
        self.logger.setLevel(self.level)

    @contextmanager
    def phase(self, name: str) -> Iterator[None]:
        """Prefix every message logged inside the block with `[name]`."""

        previous, self.current_phase = self.current_phase, name
        try:
            yield
        finally:
            self.current_phase = previous

    def _tag(self, message: str) -> str:
        if self.current_phase is None:
            return message
        return f"{Colors.CYAN}[{self.current_phase}]{Colors.NC} {message}"

    def debug(self, message: str) -> None:
        """Log per-step numerical diagnostics."""

        self.logger.debug(self._tag(message))
        sys.stdout.flush()

    def info(self, message: str) -> None:
        self.logger.info(self._tag(message))
        sys.stdout.flush()

    def success(self, message: str) -> None:
        """Log a completed phase with a green prefix."""

        self.logger.info(self._tag(f"{Colors.GREEN}SUCCESS:{Colors.NC} {message}"))
        sys.stdout.flush()

    def warning(self, message: str) -> None:
        """Log a non-fatal numerical condition in yellow."""

        self.logger.warning(self._tag(f"{Colors.YELLOW}{message}{Colors.NC}"))
        sys.stderr.flush()

    def error(self, message: str) -> None:
        self.logger.error(self._tag(f"{Colors.RED}{message}{Colors.NC}"))
        sys.stderr.flush()


LOG = Logger()
