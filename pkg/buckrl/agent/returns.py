"""Discounted returns of a recorded reward sequence."""

from typing import Sequence

import numpy as np


def discounted_return(rewards: Sequence[float], gamma: float) -> float:
    """sum_k gamma^k r_(k+1), summed front to back."""
    total, weight = 0.0, 1.0
    for r in rewards:
        total += weight * r
        weight *= gamma
    return total


def returns_to_go(rewards: Sequence[float], gamma: float) -> np.ndarray:
    """R_t = r_(t+1) + gamma R_(t+1) for every t, by backward recursion."""
    returns = np.zeros(len(rewards))
    running = 0.0
    for index in range(len(rewards) - 1, -1, -1):
        running = rewards[index] + gamma * running
        returns[index] = running
    return returns
