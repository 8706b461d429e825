import numpy as np

from buckrl.environment import Trace, TraceRow
from buckrl.exceptions import EmptyTrace
from buckrl.harness.metrics import NOT_SETTLED, compute_metrics, settling_time
from buckrl.testing.testcases import NonDBTestCase


def synthetic_trace(times, voltages) -> Trace:
    return Trace([TraceRow(t, v, 0.0, 0.5, 300.0, v - 100.0) for t, v in zip(times, voltages)])


class ComputeMetricsTest(NonDBTestCase):
    """compute_metrics() tests on hand-built traces."""

    def setUp(self) -> None:
        """Run this setUp before each test."""
        super().setUp()
        self.times = np.round(np.arange(0, 0.2, 1e-4), 10)
        voltages = np.full(self.times.shape, 100.0)
        # dip of 4 V at 0.08 s recovering linearly over 5 ms, 0.05 V offset after 0.14 s
        dip = (self.times >= 0.08) & (self.times < 0.085)
        voltages[dip] = 96.0 + 4.0 * (self.times[dip] - 0.08) / 0.005
        voltages[self.times >= 0.14] = 100.05
        self.trace = synthetic_trace(self.times, voltages)

    def test_per_edge_overshoot_settling_and_steady_state(self) -> None:
        """Each edge gets its own window measurements."""
        report = compute_metrics(self.trace, 100.0, [0.08, 0.14], band=1.0)
        self.assertEqual(report.edges, (0.08, 0.14))
        self.assertAlmostEqual(report.overshoots[0], 4.0, places=9)
        self.assertAlmostEqual(report.overshoots[1], 0.05, places=9)
        self.assertAlmostEqual(report.settling_times[0], 0.0038, places=9)
        self.assertEqual(report.settling_times[1], 0.0)
        self.assertAlmostEqual(report.steady_state_errors[0], 0.0, places=12)
        self.assertAlmostEqual(report.steady_state_errors[1], 0.05, places=9)
        self.assertAlmostEqual(report.leading_steady_state_error, 0.0, places=12)
        self.assertAlmostEqual(report.max_overshoot, 4.0, places=9)
        self.assertAlmostEqual(report.steady_state_error, 0.05, places=9)

    def test_no_edges_measures_from_start(self) -> None:
        """A constant-load trace gives one measurement from the initial condition."""
        trace = synthetic_trace(self.times, 90.0 + 10.0 * np.minimum(self.times / 0.01, 1.0))
        report = compute_metrics(trace, 100.0, [0.0])
        self.assertEqual(len(report.overshoots), 1)
        self.assertAlmostEqual(report.overshoots[0], 10.0, places=9)
        self.assertIsNone(report.leading_steady_state_error)

    def test_unsettled_edge(self) -> None:
        """A window ending outside the band reports not-settled."""
        trace = synthetic_trace(self.times, np.full(self.times.shape, 95.0))
        report = compute_metrics(trace, 100.0, [0.0])
        self.assertIsNone(report.settling_time)
        self.assertEqual(report.as_dict()["settling_time_s"], NOT_SETTLED)

    def test_same_trace_same_report(self) -> None:
        """Metrics are a pure function of the trace."""
        self.assertEqual(
            compute_metrics(self.trace, 100.0, [0.08, 0.14]),
            compute_metrics(self.trace, 100.0, [0.08, 0.14]),
        )

    def test_empty_trace(self) -> None:
        """No rows, no metrics."""
        with self.assertRaises(EmptyTrace):
            compute_metrics(Trace(), 100.0, [0.0])

    def test_settling_time_already_inside_band(self) -> None:
        """A window that starts inside the band settles at once."""
        times = np.array([0.1, 0.2, 0.3])
        self.assertEqual(settling_time(times, np.zeros(3), 0.1, 1.0), 0.0)
