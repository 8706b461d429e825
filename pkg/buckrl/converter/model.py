"""Averaged model of a buck converter feeding resistive and constant power loads.

State is (i_l, v_o); the control input is the duty cycle held constant over
an integration step. The constant power load draws P/v_o, which is singular
at v_o = 0, so every evaluation checks v_o against the floor ``v_min``.
"""

from dataclasses import dataclass, replace
from typing import Optional, Tuple

from buckrl.exceptions import ConfigError, SingularVoltage


@dataclass(frozen=True)
class ConverterParams:
    """Circuit parameters, defaults from the nominal 200 V to 100 V design."""

    v_in: float = 200.0
    l_henry: float = 2e-3
    c_farad: float = 150e-6
    r_ohm: Optional[float] = None
    p_cpl: float = 300.0
    f_sw: float = 20e3
    v_ref: float = 100.0
    v_min: float = 1.0

    def __post_init__(self) -> None:
        for name in ("v_in", "l_henry", "c_farad", "f_sw", "v_ref", "v_min"):
            if not getattr(self, name) > 0:
                raise ConfigError("must be > 0", field="circuit.{}".format(name))
        if not self.p_cpl >= 0:
            raise ConfigError("must be >= 0", field="circuit.p_cpl")
        if self.r_ohm is not None and not self.r_ohm > 0:
            raise ConfigError("must be > 0 when present", field="circuit.r_ohm")

    @property
    def conductance(self) -> float:
        """Resistive load conductance, 0 when no resistor is fitted."""
        return 0.0 if self.r_ohm is None else 1.0 / self.r_ohm

    def with_load(self, p_cpl: float) -> "ConverterParams":
        """Return a copy drawing a different constant power."""
        return replace(self, p_cpl=p_cpl)


@dataclass(frozen=True)
class ConverterState:
    """Instantaneous plant state."""

    i_l: float
    v_o: float
    t: float = 0.0


@dataclass(frozen=True)
class Disturbance:
    """Lumped uncertainty between actual and nominal dynamics."""

    d1: float
    d2: float


def check_voltage(v_o: float, v_min: float) -> None:
    """Raise SingularVoltage when v_o is below the floor."""
    if not v_o >= v_min:
        raise SingularVoltage(v_o, v_min)


def cpl_current(p_cpl: float, v_o: float, v_min: float = 1.0) -> float:
    """Current drawn by a constant power load at output voltage v_o."""
    check_voltage(v_o, v_min)
    return p_cpl / v_o


def rhs(
    i_l: float,
    v_o: float,
    duty: float,
    v_in: float,
    l_henry: float,
    c_farad: float,
    conductance: float,
    p_cpl: float,
    v_min: float,
) -> Tuple[float, float]:
    """Right-hand side on plain floats, the integrator's inner loop."""
    if not v_o >= v_min:
        raise SingularVoltage(v_o, v_min)
    di_l = (duty * v_in - v_o) / l_henry
    dv_o = (i_l - p_cpl / v_o - v_o * conductance) / c_farad
    return di_l, dv_o


def derivatives(
    state: ConverterState, params: ConverterParams, duty: float
) -> Tuple[float, float]:
    """Return (di_l/dt, dv_o/dt) of the averaged model.

    di_l/dt = (duty * v_in - v_o) / L
    dv_o/dt = i_l / C - v_o / (R C) - P / (C v_o)
    """
    return rhs(
        state.i_l,
        state.v_o,
        duty,
        params.v_in,
        params.l_henry,
        params.c_farad,
        params.conductance,
        params.p_cpl,
        params.v_min,
    )


def lumped_disturbance(
    nominal: ConverterParams,
    actual: ConverterParams,
    state: ConverterState,
    duty: float,
) -> Disturbance:
    """Aggregate mismatch (d1, d2) so that nominal dynamics plus (d1, d2) are the actual ones."""
    check_voltage(state.v_o, nominal.v_min)
    v_o, i_l = state.v_o, state.i_l

    d1 = (actual.v_in / actual.l_henry - nominal.v_in / nominal.l_henry) * duty + (
        1.0 / nominal.l_henry - 1.0 / actual.l_henry
    ) * v_o
    d2 = (
        (1.0 / actual.c_farad - 1.0 / nominal.c_farad) * i_l
        + (-actual.conductance / actual.c_farad + nominal.conductance / nominal.c_farad)
        * v_o
        - actual.p_cpl / (actual.c_farad * v_o)
        + nominal.p_cpl / (nominal.c_farad * v_o)
    )
    return Disturbance(d1=d1, d2=d2)


def operating_point(
    params: ConverterParams, v_ref: Optional[float] = None
) -> Tuple[ConverterState, float]:
    """Return the equilibrium state at v_o = v_ref and the duty that holds it."""
    if v_ref is None:
        v_ref = params.v_ref
    i_l = params.p_cpl / v_ref + v_ref * params.conductance
    return ConverterState(i_l=i_l, v_o=v_ref), v_ref / params.v_in
