"""Terminal logging for training and evaluation runs.

Uses django's termcolors.

Available colors:

    color_names = ('black', 'red', 'green', 'yellow', 'blue', 'magenta', 'cyan', 'white')
"""

import sys

from pprint import pformat
from typing import Any, Mapping, Optional, TextIO

from django.utils.termcolors import colorize


class TerminalLoggingMixin:
    """Mixin for terminal logging.

    Output goes to ``log_stream`` (stdout unless a command hands over its own
    stream) and is gated by ``verbosity``:

        0 - silent
        1 - one block per run
        2 - one line per episode
    """

    verbosity = 1
    log_stream: Optional[TextIO] = None

    def get_log_stream(self) -> TextIO:
        """Return the stream log lines are written to."""
        return self.log_stream if self.log_stream is not None else sys.stdout

    def write_line(self, text: str = "", level: int = 1) -> None:
        """Write one line if verbosity allows it."""
        if self.verbosity >= level:
            stream = self.get_log_stream()
            stream.write(text + "\n")
            stream.flush()

    def make_bold(self, text: Any, fg="red") -> str:
        """Return text as bolded."""
        return colorize(str(text), opts=("bold",), fg=fg)

    def pprint_symbols(self, symbol="=", symbol_repetition=42, bg="green", level=1) -> None:
        """Print colorized symbol repeated."""
        self.write_line(
            colorize(symbol * symbol_repetition, opts=("bold",), fg="white", bg=bg),
            level=level,
        )

    def pprint_label(
        self,
        label="DATA",
        symbol="=",
        symbol_repetition=20,
        fg="white",
        bg="green",
        level=1,
    ) -> None:
        """Prints label string, surrounded by repeated symbols, colorized."""
        symboled_label = "{} {} {}".format(
            symbol * symbol_repetition, label, symbol * symbol_repetition
        )
        self.write_line(colorize(symboled_label, opts=("bold",), fg=fg, bg=bg), level=level)

    def pprint_data(self, data: Any, label="DATA", fg="white", bg="green", level=1) -> None:
        """Pretty print data with label."""
        self.write_line(level=level)
        self.pprint_label(label=label, fg=fg, bg=bg, level=level)
        self.write_line(pformat(data, sort_dicts=False), level=level)
        self.write_line(level=level)

    def pprint_exception(
        self, exception: BaseException, label="Exception", fg="white", bg="red", level=0
    ) -> None:
        """Pretty print exception string, shown at any verbosity by default."""
        self.pprint_data(data=str(exception), label=label, fg=fg, bg=bg, level=level)

    def pprint_mapping(
        self, mapping: Mapping[str, Any], label="RUN", bg="blue", level=1
    ) -> None:
        """Print a mapping as aligned ``key : value`` lines under a label."""
        self.pprint_label(label=label, bg=bg, level=level)
        width = max((len(str(key)) for key in mapping), default=0)
        for key, value in mapping.items():
            self.write_line("{} : {}".format(str(key).ljust(width), value), level=level)

    def pprint_episode(self, stats: Mapping[str, Any]) -> None:
        """Print one learning-curve row on a single line (verbosity 2)."""
        line = "episode {episode:>5}  steps {steps:>7}  reward {mean_reward:+.5f}  |e| {mean_abs_error:.4f} V  loss {loss_mean:.3e}".format(
            **stats
        )
        fg = "red" if stats.get("aborted") else "green"
        self.write_line(colorize(line, fg=fg), level=2)

    def pprint_metrics(self, report: Any, label="METRICS") -> None:
        """Print a metrics report block."""
        self.pprint_mapping(report.as_dict(), label=label, bg="magenta")

