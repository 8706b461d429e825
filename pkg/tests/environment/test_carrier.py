import numpy as np

from buckrl.environment import ActionSpace, CarrierCommand, apply_action, duty_of, triangle
from buckrl.exceptions import ConfigError, IndexOutOfRange
from buckrl.testing.testcases import NonDBTestCase


class ApplyActionTest(NonDBTestCase):
    """apply_action() tests."""

    def setUp(self) -> None:
        """Run this setUp before each test."""
        super().setUp()
        self.space = ActionSpace.grid(d_level=0.01, d_amplitude=0.01)
        self.carrier = CarrierCommand(level=0.5, amplitude=0.05)

    def test_null_action_is_identity(self) -> None:
        """The null action leaves the carrier alone."""
        self.assertEqual(self.space.null_index, 4)
        self.assertEqual(apply_action(self.carrier, 4, self.space), self.carrier)

    def test_level_is_clamped_at_one(self) -> None:
        """Raising a 0.99 level by 0.01 stops at 1.0."""
        carrier = apply_action(CarrierCommand(0.99, 0.05), 7, self.space)
        self.assertEqual(carrier.level, 1.0)
        self.assertEqual(carrier.amplitude, 0.05)

    def test_increments_add(self) -> None:
        """(-0.01, +0.01) moves (0.5, 0.05) to (0.49, 0.06)."""
        self.assertEqual(self.space.entries[2], (-0.01, 0.01))
        carrier = apply_action(self.carrier, 2, self.space)
        self.assertAlmostEqual(carrier.level, 0.49, places=12)
        self.assertAlmostEqual(carrier.amplitude, 0.06, places=12)

    def test_amplitude_is_clamped_to_range(self) -> None:
        """Amplitude never leaves [0, amp_max]."""
        low = apply_action(CarrierCommand(0.5, 0.0), 0, self.space)
        high = apply_action(CarrierCommand(0.5, 0.2), 8, self.space)
        self.assertEqual(low.amplitude, 0.0)
        self.assertEqual(high.amplitude, 0.2)

    def test_out_of_range_index(self) -> None:
        """Indices outside the space raise IndexOutOfRange."""
        for index in (-1, 9):
            with self.assertRaises(IndexOutOfRange):
                apply_action(self.carrier, index, self.space)


class ActionSpaceTest(NonDBTestCase):
    """ActionSpace tests."""

    def test_grid_encodings_are_unit_steps(self) -> None:
        """Grid encodings are the nine sign pairs."""
        expected = [[dl, da] for dl in (-1, 0, 1) for da in (-1, 0, 1)]
        self.assertArraysAlmostEqual(ActionSpace.grid().encodings(), expected)

    def test_space_without_null_action_is_rejected(self) -> None:
        """Every space needs the (0, 0) action."""
        with self.assertRaises(ConfigError):
            ActionSpace.from_entries([(0.01, 0.0), (-0.01, 0.0)])


class DutyOfTest(NonDBTestCase):
    """duty_of() and triangle() tests."""

    def test_zero_amplitude_is_level(self) -> None:
        """Without swing the duty is the level at any time."""
        for t in np.linspace(0.0, 0.01, 7):
            self.assertEqual(duty_of(CarrierCommand(0.5, 0.0), t, 1e3), 0.5)

    def test_triangle_peak(self) -> None:
        """At phase 0.5 the duty is level plus amplitude."""
        self.assertAlmostEqual(duty_of(CarrierCommand(0.5, 0.1), 0.5, 1.0), 0.6, places=12)

    def test_upper_clamp(self) -> None:
        """Duty is clamped to d_max."""
        self.assertEqual(duty_of(CarrierCommand(0.95, 0.1), 0.5, 1.0), 0.99)

    def test_triangle_shape(self) -> None:
        """Trough at 0, peak at 0.5, zero crossings at quarter phases."""
        self.assertEqual(triangle(0.0), -1.0)
        self.assertEqual(triangle(0.25), 0.0)
        self.assertEqual(triangle(0.5), 1.0)
        self.assertEqual(triangle(0.75), 0.0)
        self.assertEqual(triangle(1.0), -1.0)
