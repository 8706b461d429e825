"""Tabular Q-learning update, the reference the deep learner generalizes."""

import numpy as np


def tabular_q_update(
    table: np.ndarray,
    s: int,
    a: int,
    r: float,
    s_next: int,
    lr: float,
    gamma: float,
) -> np.ndarray:
    """Return a copy of table with Q(s, a) += lr * (r + gamma * max Q(s_next) - Q(s, a))."""
    updated = np.array(table, dtype=np.float64, copy=True)
    td_error = r + gamma * updated[s_next].max() - updated[s, a]
    updated[s, a] += lr * td_error
    return updated
