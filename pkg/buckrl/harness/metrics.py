"""Transient metrics of a voltage trace around load-step edges.

For each edge the window runs to the next edge (or the end of the trace):

    overshoot      max |v_o - v_ref| in the window
    settling time  first time after which |e| stays inside the band,
                   None (not settled) when the window ends outside it
    steady state   mean |e| over the window's final ``steady_window`` seconds
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from buckrl.environment.trace import Trace
from buckrl.exceptions import EmptyTrace

NOT_SETTLED = "not-settled"


@dataclass(frozen=True)
class MetricsReport:
    edges: Tuple[float, ...]
    overshoots: Tuple[float, ...]
    settling_times: Tuple[Optional[float], ...]
    steady_state_errors: Tuple[float, ...]
    leading_steady_state_error: Optional[float] = None
    aborted: bool = False

    @property
    def max_overshoot(self) -> float:
        return max(self.overshoots)

    @property
    def settling_time(self) -> Optional[float]:
        """Slowest settling over all edges, None if any edge never settled."""
        if any(value is None for value in self.settling_times):
            return None
        return max(self.settling_times)

    @property
    def steady_state_error(self) -> float:
        """Worst segment steady-state error, the pre-edge segment included."""
        errors = list(self.steady_state_errors)
        if self.leading_steady_state_error is not None:
            errors.append(self.leading_steady_state_error)
        return max(errors)

    def as_dict(self) -> Dict[str, Any]:
        def settling(value: Optional[float]) -> Any:
            return NOT_SETTLED if value is None else value

        return {
            "edges_s": list(self.edges),
            "max_overshoot_v": self.max_overshoot,
            "overshoots_v": list(self.overshoots),
            "settling_time_s": settling(self.settling_time),
            "settling_times_s": [settling(value) for value in self.settling_times],
            "steady_state_error_v": self.steady_state_error,
            "steady_state_errors_v": list(self.steady_state_errors),
            "aborted": self.aborted,
        }


def settling_time(
    times: np.ndarray, errors: np.ndarray, edge: float, band: float
) -> Optional[float]:
    """Time from edge until |e| enters the band for good, None if it never does."""
    outside = np.flatnonzero(np.abs(errors) > band)
    if outside.size == 0:
        return max(float(times[0]) - edge, 0.0)
    last = outside[-1]
    if last == len(times) - 1:
        return None
    return float(times[last + 1]) - edge


def compute_metrics(
    trace: Trace,
    v_ref: float,
    edges: Sequence[float],
    band: float = 1.0,
    steady_window: float = 0.01,
    aborted: bool = False,
) -> MetricsReport:
    """Per-edge overshoot, settling time and steady-state error."""
    trace.require_rows()
    times = trace.column("t")
    errors = trace.column("v_o") - v_ref

    if not edges:
        edges = [float(times[0])]
    edges = sorted(float(edge) for edge in edges)
    ends = edges[1:] + [float(times[-1])]

    def steady(window_times: np.ndarray, window_errors: np.ndarray, end: float) -> float:
        tail = window_times >= end - steady_window
        if not tail.any():
            tail = np.ones_like(window_times, dtype=bool)
        return float(np.mean(np.abs(window_errors[tail])))

    overshoots: List[float] = []
    settlings: List[Optional[float]] = []
    steadies: List[float] = []
    for index, (edge, end) in enumerate(zip(edges, ends)):
        last_window = index == len(edges) - 1
        mask = (times >= edge) & ((times <= end) if last_window else (times < end))
        if not mask.any():
            raise EmptyTrace("No samples after edge at t = {!r} s.".format(edge))
        window_times, window_errors = times[mask], errors[mask]
        overshoots.append(float(np.max(np.abs(window_errors))))
        settlings.append(settling_time(window_times, window_errors, edge, band))
        steadies.append(steady(window_times, window_errors, end))

    leading = None
    before = times < edges[0]
    if before.any():
        leading = steady(times[before], errors[before], edges[0])

    return MetricsReport(
        edges=tuple(edges),
        overshoots=tuple(overshoots),
        settling_times=tuple(settlings),
        steady_state_errors=tuple(steadies),
        leading_steady_state_error=leading,
        aborted=aborted,
    )
