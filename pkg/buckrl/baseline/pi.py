"""Double-loop PI baseline.

The outer loop turns the voltage error into an inductor-current reference,
the inner loop turns the current error into a duty cycle. Both are parallel
PI with clamping anti-windup: when the duty saturates and the current error
pushes further into the limit, neither integrator moves that step.

The four gains are unitless. ``voltage_scale`` converts the outer pair to
amperes per volt and ``current_scale`` the inner pair to duty per ampere, so
the effective gains are ``voltage_scale * (kvp, kvi)`` and
``current_scale * (kcp, kci)``.
"""

from dataclasses import dataclass
from typing import Dict, Optional, Tuple

from buckrl.converter import ConverterParams, ConverterState, operating_point, step_rk4
from buckrl.environment.env import CplSchedule, load_at
from buckrl.environment.trace import Trace, TraceRow
from buckrl.exceptions import ConfigError

D_MIN = 0.01
D_MAX = 0.99


@dataclass(frozen=True)
class PiGains:
    kvp: float = 0.33
    kvi: float = 40.0
    kcp: float = 0.09
    kci: float = 35.0
    voltage_scale: float = 4.0
    current_scale: float = 2.0

    def __post_init__(self) -> None:
        for name in ("kvp", "kvi", "kcp", "kci", "voltage_scale", "current_scale"):
            value = getattr(self, name)
            if value != value or value in (float("inf"), float("-inf")):
                raise ConfigError("must be finite", field="pi.{}".format(name))
        for name in ("voltage_scale", "current_scale"):
            if not getattr(self, name) > 0:
                raise ConfigError("must be > 0", field="pi.{}".format(name))

    @property
    def effective_kvi(self) -> float:
        return self.voltage_scale * self.kvi

    @property
    def effective_kci(self) -> float:
        return self.current_scale * self.kci


@dataclass(frozen=True)
class PiState:
    integ_v: float = 0.0
    integ_c: float = 0.0


def current_reference(state: PiState, e_v: float, gains: PiGains) -> float:
    return gains.voltage_scale * (gains.kvp * e_v + gains.kvi * state.integ_v)


def pi_outputs(
    state: PiState, e_v: float, i_l: float, gains: PiGains
) -> Tuple[float, float, float]:
    """(i_ref, e_c, unclamped duty) for given integrator contents."""
    i_ref = current_reference(state, e_v, gains)
    e_c = i_ref - i_l
    return i_ref, e_c, gains.current_scale * (gains.kcp * e_c + gains.kci * state.integ_c)


def pi_controller_step(
    state: PiState,
    v_o: float,
    i_l: float,
    v_ref: float,
    gains: PiGains,
    dt: float,
    d_min: float = D_MIN,
    d_max: float = D_MAX,
) -> Tuple[float, PiState]:
    """One controller update; returns the clamped duty and the new integrator state."""
    if not dt > 0:
        raise ValueError("dt must be > 0, got {!r}".format(dt))

    e_v = v_ref - v_o
    integ_v = state.integ_v + e_v * dt
    i_ref = current_reference(PiState(integ_v, state.integ_c), e_v, gains)
    e_c = i_ref - i_l
    candidate = PiState(integ_v=integ_v, integ_c=state.integ_c + e_c * dt)
    _, e_c, duty = pi_outputs(candidate, e_v, i_l, gains)

    winding_up = (duty > d_max and e_c > 0) or (duty < d_min and e_c < 0)
    if winding_up:
        candidate = state
        _, _, duty = pi_outputs(state, e_v, i_l, gains)

    return min(max(duty, d_min), d_max), candidate


class DoubleLoopPiController:
    """Stateful wrapper around pi_controller_step."""

    def __init__(self, gains: Optional[PiGains] = None, v_ref: float = 100.0) -> None:
        self.gains = gains or PiGains()
        self.v_ref = v_ref
        self.state = PiState()

    def preload(self, i_l: float, duty: float) -> None:
        """Load integrators so a zero-error start outputs duty with i_ref = i_l."""
        self.state = PiState(
            integ_v=i_l / self.gains.effective_kvi if self.gains.kvi else 0.0,
            integ_c=duty / self.gains.effective_kci if self.gains.kci else 0.0,
        )

    def update(self, v_o: float, i_l: float, dt: float) -> float:
        duty, self.state = pi_controller_step(
            self.state, v_o, i_l, self.v_ref, self.gains, dt
        )
        return duty


def run_pi_closed_loop(
    params: ConverterParams,
    gains: Optional[PiGains] = None,
    schedule: CplSchedule = (),
    duration: float = 0.2,
    dt: float = 1e-6,
    record_every: int = 10,
    initial_state: Optional[ConverterState] = None,
) -> Trace:
    """Simulate plant and controller, both updated every dt.

    Without an initial state the plant starts at the operating point of the
    first load with the integrators preloaded to hold it. Rows are recorded
    every ``record_every`` steps and at the end.
    """
    controller = DoubleLoopPiController(gains, params.v_ref)
    circuits: Dict[float, ConverterParams] = {}

    def circuit_for(p_cpl: float) -> ConverterParams:
        if p_cpl not in circuits:
            circuits[p_cpl] = params.with_load(p_cpl)
        return circuits[p_cpl]

    first_load = load_at(schedule, 0.0, params.p_cpl)
    if initial_state is None:
        state, duty0 = operating_point(circuit_for(first_load))
        controller.preload(state.i_l, duty0)
    else:
        state = initial_state

    trace = Trace()
    steps = int(round(duration / dt))
    duty = p_cpl = 0.0
    for k in range(steps):
        t = k * dt
        p_cpl = load_at(schedule, t, params.p_cpl)
        duty = controller.update(state.v_o, state.i_l, dt)
        if k % record_every == 0:
            trace.append(
                TraceRow(t, state.v_o, state.i_l, duty, p_cpl, state.v_o - params.v_ref)
            )
        state = step_rk4(state, circuit_for(p_cpl), duty, dt)

    trace.append(
        TraceRow(
            steps * dt, state.v_o, state.i_l, duty, p_cpl, state.v_o - params.v_ref
        )
    )
    return trace
