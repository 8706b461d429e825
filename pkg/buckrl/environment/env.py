"""The converter as a Markov decision process.

One control step applies an action to the carrier, integrates the plant over
``control_period`` in RK4 sub-steps of ``dt``, and observes

    (v_o, v_o_delay, dv_o/dt, e, e_delay, de/dt)

with delays one control period old and derivatives as backward differences
over that period.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, Optional, Tuple

import numpy as np

from buckrl.converter import ConverterParams, ConverterState, operating_point, step_rk4
from buckrl.environment.carrier import (
    ActionSpace,
    CarrierCommand,
    CarrierSettings,
    apply_action,
    duty_of,
)
from buckrl.environment.reward import RewardParams, reward
from buckrl.environment.trace import Trace, TraceRow
from buckrl.exceptions import ConfigError, EpisodeFinished, SingularVoltage

CplSchedule = Tuple[Tuple[float, float], ...]


@dataclass(frozen=True)
class Observation:
    v_o: float
    v_o_delay: float
    dv_o_dt: float
    e: float
    e_delay: float
    de_dt: float

    def as_array(self) -> np.ndarray:
        return np.array(
            [self.v_o, self.v_o_delay, self.dv_o_dt, self.e, self.e_delay, self.de_dt]
        )


@dataclass(frozen=True)
class InitialStateSpec:
    """Distribution of the plant state at reset.

    v_o is drawn uniformly from ``v_o_fraction`` times v_ref and i_l is fixed,
    unless ``at_operating_point`` starts the plant at the equilibrium of the
    episode's first load.
    """

    v_o_fraction: Tuple[float, float] = (0.6, 1.0)
    i_l: float = 0.0
    at_operating_point: bool = False

    def __post_init__(self) -> None:
        low, high = self.v_o_fraction
        if not 0.0 < low <= high:
            raise ConfigError(
                "need 0 < low <= high", field="episode.initial_v_o_fraction"
            )


@dataclass(frozen=True)
class EpisodeConfig:
    duration: float = 0.05
    control_period: float = 1e-4
    dt: float = 1e-6
    initial_state: InitialStateSpec = field(default_factory=InitialStateSpec)
    cpl_schedule: CplSchedule = ()
    cpl_choices: Tuple[float, ...] = (300.0, 500.0, 900.0)
    abort_band: float = 50.0
    observation_scale: Tuple[float, ...] = (100.0, 100.0, 1e4, 10.0, 10.0, 1e4)

    def __post_init__(self) -> None:
        if not self.duration > 0:
            raise ConfigError("must be > 0", field="episode.duration")
        if not self.dt > 0:
            raise ConfigError("must be > 0", field="episode.dt")
        if not self.control_period >= self.dt:
            raise ConfigError("must be >= dt", field="episode.control_period")
        ratio = self.control_period / self.dt
        if abs(ratio - round(ratio)) > 1e-9 * ratio:
            raise ConfigError(
                "must be an integer multiple of dt", field="episode.control_period"
            )
        if not self.abort_band > 0:
            raise ConfigError("must be > 0", field="episode.abort_band")
        if not self.cpl_schedule and not self.cpl_choices:
            raise ConfigError(
                "need a schedule or at least one load choice", field="episode.cpl_choices"
            )
        times = [t for t, _ in self.cpl_schedule]
        if any(later <= earlier for earlier, later in zip(times, times[1:])):
            raise ConfigError(
                "schedule times must be strictly increasing", field="episode.cpl_schedule"
            )
        if len(self.observation_scale) != 6 or not all(
            scale > 0 for scale in self.observation_scale
        ):
            raise ConfigError(
                "need six positive scales", field="episode.observation_scale"
            )

    @property
    def substeps(self) -> int:
        """Plant sub-steps per control step."""
        return int(round(self.control_period / self.dt))

    @property
    def control_steps(self) -> int:
        """Control steps per episode."""
        return int(np.ceil(self.duration / self.control_period - 1e-9))


def load_at(schedule: CplSchedule, t: float, default: float) -> float:
    """Piecewise-constant load: the last entry whose time is <= t."""
    value = schedule[0][1] if schedule else default
    for time, watts in schedule:
        if time <= t:
            value = watts
        else:
            break
    return value


class BuckConverterEnv:
    """Converter plus carrier wrapped as an episodic environment.

    ``step`` returns (Observation, reward, done, info); ``info`` carries the
    plant signals plus ``aborted``, ``singular`` and ``truncated`` flags. A
    time-limit end is truncation, not termination.
    """

    def __init__(
        self,
        circuit: Optional[ConverterParams] = None,
        episode: Optional[EpisodeConfig] = None,
        reward_params: Optional[RewardParams] = None,
        action_space: Optional[ActionSpace] = None,
        carrier: Optional[CarrierSettings] = None,
        record_trace: bool = False,
    ) -> None:
        self.circuit = circuit or ConverterParams()
        self.episode = episode or EpisodeConfig()
        self.reward_params = reward_params or RewardParams()
        self.action_space = action_space or ActionSpace.grid()
        self.carrier_settings = carrier or CarrierSettings()
        self.record_trace = record_trace
        self.observation_scale = np.array(self.episode.observation_scale, dtype=float)
        self.reward_floor = -self.reward_params.alpha * self.episode.abort_band

        self.state: Optional[ConverterState] = None
        self.carrier: Optional[CarrierCommand] = None
        self.observation: Optional[Observation] = None
        self.schedule: CplSchedule = ()
        self.trace = Trace()
        self.done = True
        self.step_count = 0
        self.substep_count = 0
        self._circuits: Dict[float, ConverterParams] = {}

    def circuit_for(self, p_cpl: float) -> ConverterParams:
        """Cached copy of the circuit drawing p_cpl."""
        params = self._circuits.get(p_cpl)
        if params is None:
            params = self._circuits[p_cpl] = self.circuit.with_load(p_cpl)
        return params

    def encode_observation(self, observation: Observation) -> np.ndarray:
        """Scaled 6-vector for the network's state path."""
        return observation.as_array() / self.observation_scale

    def reset(self, seed: Optional[int] = None) -> Observation:
        """Start an episode and return its first observation."""
        rng = np.random.default_rng(seed)
        spec = self.episode.initial_state
        v_ref = self.circuit.v_ref

        if self.episode.cpl_schedule:
            self.schedule = self.episode.cpl_schedule
        else:
            choice = float(rng.choice(np.array(self.episode.cpl_choices, dtype=float)))
            self.schedule = ((0.0, choice),)

        first_load = load_at(self.schedule, 0.0, self.circuit.p_cpl)
        if spec.at_operating_point:
            self.state, _ = operating_point(self.circuit_for(first_load))
        else:
            low, high = spec.v_o_fraction
            v_o = float(rng.uniform(low, high)) * v_ref
            self.state = ConverterState(i_l=spec.i_l, v_o=v_o)

        self.carrier = CarrierCommand(
            level=v_ref / self.circuit.v_in,
            amplitude=self.carrier_settings.initial_amplitude,
        )
        e = self.state.v_o - v_ref
        self.observation = Observation(
            v_o=self.state.v_o,
            v_o_delay=self.state.v_o,
            dv_o_dt=0.0,
            e=e,
            e_delay=e,
            de_dt=0.0,
        )
        self.done = False
        self.step_count = 0
        self.substep_count = 0
        self.trace = Trace()
        if self.record_trace:
            self.trace.append(
                TraceRow(
                    0.0,
                    self.state.v_o,
                    self.state.i_l,
                    self.current_duty(0.0),
                    first_load,
                    e,
                )
            )
        return self.observation

    def current_duty(self, t: float) -> float:
        settings = self.carrier_settings
        return duty_of(self.carrier, t, settings.f_tri, settings.d_min, settings.d_max)

    def integrate_control_period(self) -> Tuple[float, float, bool]:
        """Run the sub-steps of one control period.

        Returns the last duty, the last load and whether the voltage floor was
        crossed; on a crossing the state stays at the last valid sub-step.
        """
        dt = self.episode.dt
        duty = p_cpl = 0.0
        for _ in range(self.episode.substeps):
            t = self.substep_count * dt
            duty = self.current_duty(t)
            p_cpl = load_at(self.schedule, t, self.circuit.p_cpl)
            try:
                state = step_rk4(self.state, self.circuit_for(p_cpl), duty, dt)
            except SingularVoltage:
                return duty, p_cpl, True
            self.substep_count += 1
            self.state = ConverterState(
                i_l=state.i_l, v_o=state.v_o, t=self.substep_count * dt
            )
        return duty, p_cpl, False

    def step(self, action_index: int) -> Tuple[Observation, float, bool, Dict[str, Any]]:
        """Advance one control period under the chosen action."""
        if self.done:
            raise EpisodeFinished("Episode is over, call reset() first.")

        self.carrier = apply_action(
            self.carrier, action_index, self.action_space, self.carrier_settings.amp_max
        )
        duty, p_cpl, singular = self.integrate_control_period()
        self.step_count += 1

        previous = self.observation
        v_o = self.state.v_o
        e = v_o - self.circuit.v_ref
        dv_o_dt = (v_o - previous.v_o) / self.episode.control_period
        self.observation = Observation(
            v_o=v_o,
            v_o_delay=previous.v_o,
            dv_o_dt=dv_o_dt,
            e=e,
            e_delay=previous.e,
            # v_ref is constant, so de/dt is dv_o/dt
            de_dt=dv_o_dt,
        )

        aborted = singular or abs(e) > self.episode.abort_band
        truncated = not aborted and self.step_count >= self.episode.control_steps
        self.done = aborted or truncated

        if aborted:
            step_reward = self.reward_floor
        else:
            step_reward = max(reward(e, self.reward_params), self.reward_floor)

        if self.record_trace:
            self.trace.append(
                TraceRow(
                    self.state.t,
                    v_o,
                    self.state.i_l,
                    duty,
                    p_cpl,
                    e,
                    step_reward,
                    action_index,
                )
            )

        info = {
            "t": self.state.t,
            "v_o": v_o,
            "i_l": self.state.i_l,
            "e": e,
            "duty": duty,
            "p_cpl": p_cpl,
            "carrier": self.carrier,
            "aborted": aborted,
            "singular": singular,
            "truncated": truncated,
        }
        return self.observation, step_reward, self.done, info
