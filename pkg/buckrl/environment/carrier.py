"""Triangular carrier the agent tunes, and the discrete action space over it.

The duty cycle is a triangle wave around ``level`` with half-swing
``amplitude``; each action nudges the two by a fixed increment.
"""

import math

from dataclasses import dataclass, field
from typing import Sequence, Tuple

import numpy as np

from buckrl.exceptions import ConfigError, IndexOutOfRange


@dataclass(frozen=True)
class CarrierSettings:
    """Carrier frequency, amplitude ceiling, duty clamp and reset amplitude."""

    f_tri: float = 1e3
    amp_max: float = 0.2
    d_min: float = 0.01
    d_max: float = 0.99
    initial_amplitude: float = 0.05

    def __post_init__(self) -> None:
        if not self.f_tri > 0:
            raise ConfigError("must be > 0", field="carrier.f_tri")
        if not self.amp_max >= 0:
            raise ConfigError("must be >= 0", field="carrier.amp_max")
        if not 0.0 <= self.d_min < self.d_max <= 1.0:
            raise ConfigError("need 0 <= d_min < d_max <= 1", field="carrier.d_min")
        if not 0.0 <= self.initial_amplitude <= self.amp_max:
            raise ConfigError(
                "must lie in [0, amp_max]", field="carrier.initial_amplitude"
            )


@dataclass(frozen=True)
class CarrierCommand:
    """Level and amplitude of the repeating triangular duty sequence."""

    level: float
    amplitude: float


@dataclass(frozen=True)
class ActionSpace:
    """Ordered, finite list of (dlevel, damplitude) increments.

    ``scale`` normalizes increments before they reach the network's action
    path, so a one-step nudge is encoded as +-1.
    """

    entries: Tuple[Tuple[float, float], ...]
    scale: Tuple[float, float] = field(default=(1.0, 1.0))

    def __post_init__(self) -> None:
        if not self.entries:
            raise ConfigError("action space is empty", field="carrier.actions")
        if (0.0, 0.0) not in [tuple(map(float, entry)) for entry in self.entries]:
            raise ConfigError(
                "action space must contain the null action (0, 0)",
                field="carrier.actions",
            )
        if not all(value > 0 for value in self.scale):
            raise ConfigError("encoding scale must be > 0", field="carrier.actions")

    @classmethod
    def grid(cls, d_level: float = 0.005, d_amplitude: float = 0.005) -> "ActionSpace":
        """Nine actions {-dL, 0, +dL} x {-dA, 0, +dA}, level varying slowest."""
        entries = tuple(
            (dl, da)
            for dl in (-d_level, 0.0, d_level)
            for da in (-d_amplitude, 0.0, d_amplitude)
        )
        return cls(entries=entries, scale=(d_level, d_amplitude))

    @classmethod
    def from_entries(cls, entries: Sequence[Tuple[float, float]]) -> "ActionSpace":
        """Build a space scaled by the largest increment of each component."""
        entries = tuple((float(dl), float(da)) for dl, da in entries)
        scale = tuple(
            max((abs(entry[axis]) for entry in entries), default=0.0) or 1.0
            for axis in (0, 1)
        )
        return cls(entries=entries, scale=scale)

    @property
    def size(self) -> int:
        return len(self.entries)

    @property
    def null_index(self) -> int:
        return self.entries.index((0.0, 0.0))

    def check_index(self, action_index: int) -> None:
        """Raise IndexOutOfRange for indices outside the space."""
        if not 0 <= action_index < len(self.entries):
            raise IndexOutOfRange(
                "Action index {} outside [0, {}).".format(action_index, len(self.entries))
            )

    def encoding(self, action_index: int) -> np.ndarray:
        """Normalized increment pair fed to the action path."""
        self.check_index(action_index)
        dl, da = self.entries[action_index]
        return np.array([dl / self.scale[0], da / self.scale[1]])

    def encodings(self) -> np.ndarray:
        """All encodings stacked, shape (size, 2)."""
        return np.array(
            [[dl / self.scale[0], da / self.scale[1]] for dl, da in self.entries]
        )


def clamp(value: float, low: float, high: float) -> float:
    return min(max(value, low), high)


def apply_action(
    carrier: CarrierCommand,
    action_index: int,
    space: ActionSpace,
    amp_max: float = 0.2,
) -> CarrierCommand:
    """Add the chosen increments, then clamp level to [0, 1] and amplitude to [0, amp_max]."""
    space.check_index(action_index)
    dlevel, damplitude = space.entries[action_index]
    return CarrierCommand(
        level=clamp(carrier.level + dlevel, 0.0, 1.0),
        amplitude=clamp(carrier.amplitude + damplitude, 0.0, amp_max),
    )


def triangle(phase: float) -> float:
    """Unit triangle wave of period 1: -1 at phase 0, +1 at phase 0.5."""
    phase = phase - math.floor(phase)
    if phase < 0.5:
        return 4.0 * phase - 1.0
    return 3.0 - 4.0 * phase


def duty_of(
    carrier: CarrierCommand,
    t: float,
    f_tri: float,
    d_min: float = 0.01,
    d_max: float = 0.99,
) -> float:
    """Duty cycle at time t, clamped into [d_min, d_max]."""
    if carrier.amplitude == 0.0:
        return clamp(carrier.level, d_min, d_max)
    return clamp(carrier.level + carrier.amplitude * triangle(t * f_tri), d_min, d_max)
