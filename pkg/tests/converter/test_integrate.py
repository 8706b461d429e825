from buckrl.converter import ConverterParams, ConverterState, simulate, step_rk4
from buckrl.exceptions import SingularVoltage
from buckrl.testing.oracles import fine_step_reference
from buckrl.testing.testcases import NonDBTestCase


def half_duty(t: float) -> float:
    return 0.5


class StepRk4Test(NonDBTestCase):
    """step_rk4() tests."""

    def setUp(self) -> None:
        """Run this setUp before each test."""
        super().setUp()
        self.params = ConverterParams()

    def test_equilibrium_is_kept(self) -> None:
        """A fixed point stays put."""
        state = step_rk4(ConverterState(i_l=3.0, v_o=100.0), self.params, 0.5, 1e-6)
        self.assertLess(abs(state.i_l - 3.0), 1e-12)
        self.assertLess(abs(state.v_o - 100.0), 1e-12)
        self.assertEqual(state.t, 1e-6)

    def test_single_step_matches_fine_reference(self) -> None:
        """One 1 us step agrees with a thousand 1 ns steps."""
        start = ConverterState(i_l=0.0, v_o=80.0)
        coarse = step_rk4(start, self.params, 0.5, 1e-6)
        fine = fine_step_reference(start, self.params, half_duty, 1e-6, dt=1e-9)
        self.assertLess(abs(coarse.v_o - fine.v_o), 1e-8)
        self.assertLess(abs(coarse.i_l - fine.i_l), 1e-8)

    def test_fourth_order_convergence(self) -> None:
        """Halving the step cuts the error by roughly sixteen."""
        start = ConverterState(i_l=0.0, v_o=80.0)
        reference = simulate(start, self.params, half_duty, 2e-3, 1e-7)
        errors = [
            abs(simulate(start, self.params, half_duty, 2e-3, dt).v_o - reference.v_o)
            for dt in (2e-5, 1e-5)
        ]
        self.assertGreater(errors[0] / errors[1], 10.0)
        self.assertLess(errors[0] / errors[1], 24.0)

    def test_non_positive_step_is_rejected(self) -> None:
        """dt <= 0 raises ValueError."""
        with self.assertRaises(ValueError):
            step_rk4(ConverterState(i_l=3.0, v_o=100.0), self.params, 0.5, 0.0)

    def test_singular_stage_propagates(self) -> None:
        """A state below the floor raises SingularVoltage."""
        with self.assertRaises(SingularVoltage):
            step_rk4(ConverterState(i_l=0.0, v_o=0.5), self.params, 0.5, 1e-6)


class SimulateTest(NonDBTestCase):
    """simulate() tests."""

    def test_deterministic(self) -> None:
        """Two runs from the same inputs are bit-identical."""
        start = ConverterState(i_l=0.0, v_o=80.0)
        first, second = [], []
        simulate(start, ConverterParams(), half_duty, 1e-3, 1e-6, trajectory=first)
        simulate(start, ConverterParams(), half_duty, 1e-3, 1e-6, trajectory=second)
        self.assertEqual(first, second)
        self.assertEqual(len(first), 1000)

    def test_clock_follows_step_count(self) -> None:
        """The final time is the start time plus steps times dt."""
        start = ConverterState(i_l=3.0, v_o=100.0, t=0.5)
        state = simulate(start, ConverterParams(), half_duty, 1e-3, 1e-6)
        self.assertEqual(state.t, 0.5 + 1000 * 1e-6)
