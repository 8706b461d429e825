"""Classical fourth-order Runge-Kutta stepping of the averaged converter model."""

from typing import Callable, List, Optional

from buckrl.converter.model import ConverterParams, ConverterState, rhs

DutyProfile = Callable[[float], float]


def step_rk4(
    state: ConverterState, params: ConverterParams, duty: float, dt: float
) -> ConverterState:
    """Advance one RK4 step of length dt with duty held constant.

    SingularVoltage from any of the four stages propagates.
    """
    if not dt > 0:
        raise ValueError("dt must be > 0, got {!r}".format(dt))

    args = (
        duty,
        params.v_in,
        params.l_henry,
        params.c_farad,
        params.conductance,
        params.p_cpl,
        params.v_min,
    )
    i0, v0 = state.i_l, state.v_o
    half = 0.5 * dt

    k1i, k1v = rhs(i0, v0, *args)
    k2i, k2v = rhs(i0 + half * k1i, v0 + half * k1v, *args)
    k3i, k3v = rhs(i0 + half * k2i, v0 + half * k2v, *args)
    k4i, k4v = rhs(i0 + dt * k3i, v0 + dt * k3v, *args)

    sixth = dt / 6.0
    return ConverterState(
        i_l=i0 + sixth * (k1i + 2.0 * k2i + 2.0 * k3i + k4i),
        v_o=v0 + sixth * (k1v + 2.0 * k2v + 2.0 * k3v + k4v),
        t=state.t + dt,
    )


def simulate(
    state: ConverterState,
    params: ConverterParams,
    duty: DutyProfile,
    duration: float,
    dt: float,
    trajectory: Optional[List[ConverterState]] = None,
) -> ConverterState:
    """Integrate ``round(duration / dt)`` steps, duty sampled at each step start.

    The clock is recomputed from the step count so long runs do not drift.
    When ``trajectory`` is given every intermediate state is appended to it.
    """
    t0 = state.t
    steps = int(round(duration / dt))
    for k in range(steps):
        state = step_rk4(state, params, duty(state.t), dt)
        state = ConverterState(i_l=state.i_l, v_o=state.v_o, t=t0 + (k + 1) * dt)
        if trajectory is not None:
            trajectory.append(state)
    return state
