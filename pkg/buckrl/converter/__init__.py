from buckrl.converter.model import (
    ConverterParams,
    ConverterState,
    Disturbance,
    cpl_current,
    derivatives,
    lumped_disturbance,
    operating_point,
)
from buckrl.converter.integrate import simulate, step_rk4

__all__ = [
    "ConverterParams",
    "ConverterState",
    "Disturbance",
    "cpl_current",
    "derivatives",
    "lumped_disturbance",
    "operating_point",
    "simulate",
    "step_rk4",
]
