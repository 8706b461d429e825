"""Independent reference computations the tests compare against."""

from typing import Callable, Dict, Tuple

import numpy as np

from buckrl.converter import ConverterParams, ConverterState, simulate
from buckrl.network import QNetwork

# (state, action) -> (next_state, reward, terminal)
TransitionTable = Dict[Tuple[int, int], Tuple[int, float, bool]]


def value_iteration(
    transitions: TransitionTable,
    states: int,
    actions: int,
    gamma: float,
    tolerance: float = 1e-12,
    max_sweeps: int = 10_000,
) -> np.ndarray:
    """Optimal Q table of a deterministic finite MDP."""
    table = np.zeros((states, actions))
    for _ in range(max_sweeps):
        updated = np.zeros_like(table)
        for (s, a), (s_next, r, terminal) in transitions.items():
            updated[s, a] = r if terminal else r + gamma * table[s_next].max()
        if np.max(np.abs(updated - table)) < tolerance:
            return updated
        table = updated
    return table


def fine_step_reference(
    state: ConverterState,
    params: ConverterParams,
    duty: Callable[[float], float],
    duration: float,
    dt: float = 1e-9,
) -> ConverterState:
    """The same averaged model integrated at a much finer step."""
    return simulate(state, params, duty, duration, dt)


def finite_difference_gradient(
    net: QNetwork,
    states: np.ndarray,
    actions: np.ndarray,
    targets: np.ndarray,
    step: float = 1e-6,
) -> np.ndarray:
    """Central differences of the mean squared error, in parameters() order."""
    theta = net.parameters()
    grad = np.zeros_like(theta)
    for index in range(theta.size):
        bumped = theta.copy()
        bumped[index] += step
        upper = np.mean((targets - net.with_parameters(bumped).forward_batch(states, actions)) ** 2)
        bumped[index] -= 2.0 * step
        lower = np.mean((targets - net.with_parameters(bumped).forward_batch(states, actions)) ** 2)
        grad[index] = (upper - lower) / (2.0 * step)
    return grad
