from buckrl.exceptions import (
    ConfigError,
    DimensionMismatch,
    HumanReadableError,
    IndexOutOfRange,
    SingularVoltage,
    is_human_readable,
    raise_readable_error,
)
from buckrl.testing.testcases import NonDBTestCase


class ExceptionsTest(NonDBTestCase):
    """Custom exception tests."""

    def test_raise_readable_error(self) -> None:
        """raise_readable_error() raises a HumanReadableError with the message."""
        with self.assertRaises(HumanReadableError) as context:
            raise_readable_error("Incorrect data")
        self.assertEqual(context.exception.message, "Incorrect data")
        self.assertEqual(context.exception.errors, [])

    def test_is_human_readable(self) -> None:
        """Only HumanReadableError and subclasses count as readable."""
        self.assertTrue(is_human_readable(SingularVoltage(0.5, 1.0)))
        self.assertTrue(is_human_readable(ConfigError("bad")))
        self.assertFalse(is_human_readable(Exception("Error")))

    def test_builtin_bases_are_kept(self) -> None:
        """Index and dimension errors still match the builtin families."""
        self.assertIsInstance(IndexOutOfRange("x"), IndexError)
        self.assertIsInstance(DimensionMismatch("x"), ValueError)

    def test_config_error_location(self) -> None:
        """Field and line are appended to the message, the raw reason is kept."""
        error = ConfigError("unknown key", field="agent.foo", line=3)
        self.assertEqual(str(error), "unknown key (field agent.foo, line 3)")
        self.assertEqual(error.reason, "unknown key")

    def test_singular_voltage_keeps_values(self) -> None:
        """SingularVoltage remembers the offending voltage."""
        error = SingularVoltage(0.5, 1.0)
        self.assertEqual((error.v_o, error.v_min), (0.5, 1.0))
