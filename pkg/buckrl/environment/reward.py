"""Shaped tracking reward.

Inside the band |e| < omega the agent earns beta / max(|e|, eps_floor),
capped at r_cap; only exact tracking pays r_cap outright. Outside the band
it pays alpha per volt of error.
"""

from dataclasses import dataclass

from buckrl.exceptions import ConfigError


@dataclass(frozen=True)
class RewardParams:
    alpha: float = 1e-2
    beta: float = 1e-3
    omega: float = 0.5
    r_cap: float = 1.0
    eps_floor: float = 0.01

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "omega", "r_cap", "eps_floor"):
            if not getattr(self, name) > 0:
                raise ConfigError("must be > 0", field="reward.{}".format(name))


def reward(e: float, params: RewardParams) -> float:
    """Reward for tracking error e (volts)."""
    if e == 0:
        return params.r_cap
    magnitude = abs(e)
    if magnitude < params.omega:
        return min(params.beta / max(magnitude, params.eps_floor), params.r_cap)
    return -params.alpha * magnitude
