"""
Utility classes and functions for the ltitoolbox package.
"""

import re
import sys
from datetime import datetime

from ltitoolbox.config import config
from ltitoolbox.errors import ArgumentError


class Stopwatch:
    """Wall-clock timer for informational runtime reports."""

    label: str

    _start: float = 0.0
    _stop: float = 0.0

    def __init__(self, label: str):
        """Init instance."""
        self.label = label

    def __enter__(self) -> "Stopwatch":
        """Start timing a `with` block."""
        self.start()
        return self

    def __exit__(self, exc_type, exc_val, exc_tb):
        """Stop timing a `with` block."""
        self.stop()

    def start(self):
        """Start the operation."""
        self._start = datetime.now().timestamp()
        self._stop = 0.0

    def stop(self):
        """Stop the operation."""
        self._stop = datetime.now().timestamp()
        PrintUtil.debug(f"{self.label} took {self.duration:.6f} seconds")

    @property
    def duration(self) -> float:
        """Duration in seconds of the last start/stop cycle."""
        return max(self._stop - self._start, 0.0)

    def print_duration(self):
        """Print the duration of the operation."""
        duration = round(self.duration, 4)
        if duration > 60:
            duration = f"{round(duration / 60, 2)} minutes"
        else:
            duration = f"{duration} seconds"
        PrintUtil.success(f"{self.label} finished in {duration}")


class NumUtil:
    """Integer helpers shared by the transform and filter modules."""

    @staticmethod
    def is_power_of_two(n: int) -> bool:
        """Check if `n` is a positive power of two."""
        return n > 0 and (n & (n - 1)) == 0

    @staticmethod
    def next_power_of_two(n: int) -> int:
        """Smallest power of two greater or equal to `n`."""
        if n <= 1:
            return 1
        return 1 << (n - 1).bit_length()

    @staticmethod
    def parse_floats(text: str) -> list[float]:
        """Parse a comma separated list of numbers, e.g. `10,70,100,300`."""
        try:
            return [float(v) for v in text.split(",") if v.strip()]
        except ValueError as e:
            raise ArgumentError(f"Invalid number list '{text}'") from e


class StringUtil:
    """
    Colors for formatting terminal output.
    """

    RESET = "\033[0m"
    HEADER = "\033[95m"

    RED = "\033[91m"
    GREEN = "\033[92m"
    ORANGE = "\033[93m"
    BLUE = "\033[34m"

    BOLD = "\033[1m"

    @staticmethod
    def bold(text: str) -> str:
        """Format text as bold."""
        return f"{StringUtil.BOLD}{text}{StringUtil.RESET}"

    @staticmethod
    def red(text: str) -> str:
        """Format text as red."""
        return f"{StringUtil.RED}{text}{StringUtil.RESET}"

    @staticmethod
    def green(text: str) -> str:
        """Format text as green."""
        return f"{StringUtil.GREEN}{text}{StringUtil.RESET}"

    @staticmethod
    def orange(text: str) -> str:
        """Format text as orange."""
        return f"{StringUtil.ORANGE}{text}{StringUtil.RESET}"

    @staticmethod
    def blue(text: str) -> str:
        """Format text as blue."""
        return f"{StringUtil.BLUE}{text}{StringUtil.RESET}"

    @staticmethod
    def strip_terminal_colors(text):
        """Match and strip ANSI escape sequences."""
        ansi_escape = re.compile(r"\x1B(?:[@-Z\\-_]|\[[0-?]*[ -/]*[@-~])")
        return ansi_escape.sub("", text)


class PrintUtil:
    """
    Utilities for printing and logging.

    Library modules only use `log` and `debug`; everything printing to the terminal is meant for the CLI.
    """

    @staticmethod
    def indent(msg: str, lvl: int = 0) -> str:
        """Indent a message by a specified number of levels."""
        return " " * 6 * lvl + msg

    @staticmethod
    def ln(thick=False):
        """Print a ASCII line."""
        c = "─" if not thick else "━"
        PrintUtil.print(c * 80)

    @staticmethod
    def bold(msg, lvl=0):
        """Print bold text with indentation based on level."""
        PrintUtil.print(PrintUtil.indent(StringUtil.bold(msg), lvl))

    @staticmethod
    def info(msg, lvl=0):
        """Print normal text with indentation based on level."""
        PrintUtil.print(PrintUtil.indent(msg, lvl))

    @staticmethod
    def error(msg, lvl=0):
        """Print red text to the error stream."""
        msg = PrintUtil.indent(msg, lvl)
        print(StringUtil.red(msg), file=sys.stderr)
        config.logger.error(msg)

    @staticmethod
    def success(msg, lvl=0):
        """Print green text with indentation based on level."""
        PrintUtil.print(PrintUtil.indent(StringUtil.green(msg), lvl))

    @staticmethod
    def warning(msg, lvl=0):
        """Print orange text with indentation based on level."""
        msg = PrintUtil.indent(msg, lvl)
        print(StringUtil.orange(msg))
        config.logger.warning(msg)

    @staticmethod
    def note(msg, lvl=0):
        """Print note text with indentation based on level."""
        PrintUtil.print(PrintUtil.indent(StringUtil.blue(msg), lvl))

    @staticmethod
    def print(msg):
        """Print text and mirror it to the log file."""
        print(msg)
        sys.stdout.flush()
        config.logger.info(StringUtil.strip_terminal_colors(msg))

    @staticmethod
    def log(msg, lvl=0):
        """Log info message with indentation based on level."""
        config.logger.info(PrintUtil.indent(msg, lvl))

    @staticmethod
    def log_warning(msg, lvl=0):
        """Log a warning without printing it."""
        config.logger.warning(PrintUtil.indent(msg, lvl))

    @staticmethod
    def debug(msg, lvl=0):
        """Debug log message."""
        config.logger.debug(PrintUtil.indent(msg, lvl))
