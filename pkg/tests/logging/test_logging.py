import io
import os

from unittest import mock

from buckrl.exceptions import ConfigError, SingularVoltage

from buckrl.harness.metrics import MetricsReport
from buckrl.logging.debug import DebuggerMixin
from buckrl.logging.logging import TerminalLoggingMixin
from buckrl.testing.testcases import NonDBTestCase


class TerminalLoggingMixinTest(NonDBTestCase):
    """TerminalLoggingMixin tests."""

    def setUp(self) -> None:
        """Run this setUp before each test."""
        super().setUp()
        self.logger = TerminalLoggingMixin()
        self.logger.log_stream = io.StringIO()

    def test_verbosity_gates_lines(self) -> None:
        """Lines above the verbosity are dropped."""
        self.logger.verbosity = 1
        self.logger.write_line("run", level=1)
        self.logger.write_line("episode", level=2)
        self.assertEqual(self.logger.log_stream.getvalue(), "run\n")

    def test_mapping_is_aligned(self) -> None:
        """Keys are padded to the longest key."""
        self.logger.pprint_mapping({"a": 1, "long key": 2}, label="RUN")
        lines = self.logger.log_stream.getvalue().splitlines()
        self.assertIn("a        : 1", lines)
        self.assertIn("long key : 2", lines)

    def test_metrics_block(self) -> None:
        """A metrics report is printed field by field."""
        report = MetricsReport(edges=(0.08,), overshoots=(4.0,), settling_times=(None,), steady_state_errors=(0.02,))
        self.logger.pprint_metrics(report)
        output = self.logger.log_stream.getvalue()
        self.assertIn("max_overshoot_v", output)
        self.assertIn("not-settled", output)

    def test_episode_line_needs_verbosity_two(self) -> None:
        """Per-episode lines only show at verbosity 2."""
        stats = dict(episode=1, steps=10, mean_reward=0.5, mean_abs_error=0.1, loss_mean=0.01, aborted=False)
        self.logger.pprint_episode(stats)
        self.assertEqual(self.logger.log_stream.getvalue(), "")
        self.logger.verbosity = 2
        self.logger.pprint_episode(stats)
        self.assertIn("episode     1", self.logger.log_stream.getvalue())


class DebuggerMixinTest(NonDBTestCase):
    """DebuggerMixin tests."""

    def setUp(self) -> None:
        """Run this setUp before each test."""
        super().setUp()
        self.debugger = DebuggerMixin()
        self.debugger.log_stream = io.StringIO()

    def test_debug_exception_single_line(self) -> None:
        """The single-line form names the exception, type and caller."""
        try:
            raise ValueError("bad duty")
        except ValueError as exc:
            self.debugger.debug_exception(exc)
        output = self.debugger.log_stream.getvalue()
        self.assertIn("bad duty", output)
        self.assertIn("ValueError", output)
        self.assertIn("test_debug_exception_single_line", output)

    def test_debug_exception_outside_except_block(self) -> None:
        """A caught exception can still be reported afterwards."""
        try:
            raise KeyError("late")
        except KeyError as exc:
            caught = exc
        self.debugger.debug_exception(caught)
        self.assertIn("KeyError", self.debugger.log_stream.getvalue())

    def test_timestamp_format(self) -> None:
        """Timestamps honour the given format."""
        self.assertRegex(self.debugger.get_timestamp("%Y-%m-%d"), r"^\d{4}-\d{2}-\d{2}$")

    def test_config_error_context(self) -> None:
        """Config errors add their field and line to the report."""
        try:
            raise ConfigError("must be > 0", field="reward.alpha", line=4)
        except ConfigError as exc:
            self.debugger.debug_exception(exc)
        output = self.debugger.log_stream.getvalue()
        self.assertIn("Field:reward.alpha", output)
        self.assertIn("Line:4", output)

    def test_multiline_report(self) -> None:
        """The multiline form prints one aligned row per field."""
        try:
            raise SingularVoltage(0.5, 1.0)
        except SingularVoltage as exc:
            with mock.patch.dict(os.environ, {"BUCKRL_DEBUG_MULTILINE": "True"}):
                self.debugger.debug_exception(exc, label="SIM")
        lines = self.debugger.log_stream.getvalue().splitlines()
        self.assertIn("Type      : SingularVoltage", lines)
        self.assertIn("Caller    : test_multiline_report()", lines)

    def test_report_without_traceback(self) -> None:
        """An exception that was never raised still gets a report."""
        report = self.debugger.build_report(ValueError("never raised"))
        self.assertIsNone(report.line_number)
        self.assertEqual(report.caller, "<unknown>")
