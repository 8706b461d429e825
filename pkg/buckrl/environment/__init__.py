from buckrl.environment.carrier import (
    ActionSpace,
    CarrierCommand,
    CarrierSettings,
    apply_action,
    duty_of,
    triangle,
)
from buckrl.environment.env import (
    BuckConverterEnv,
    EpisodeConfig,
    InitialStateSpec,
    Observation,
    load_at,
)
from buckrl.environment.reward import RewardParams, reward
from buckrl.environment.trace import TRACE_COLUMNS, Trace, TraceRow

__all__ = [
    "ActionSpace",
    "BuckConverterEnv",
    "CarrierCommand",
    "CarrierSettings",
    "EpisodeConfig",
    "InitialStateSpec",
    "Observation",
    "RewardParams",
    "TRACE_COLUMNS",
    "Trace",
    "TraceRow",
    "apply_action",
    "duty_of",
    "load_at",
    "reward",
    "triangle",
]
