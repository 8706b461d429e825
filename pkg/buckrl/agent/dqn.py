"""Deep Q-learning operations: action selection, targets, one training step."""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from buckrl.agent.replay import ReplayBuffer, Transition
from buckrl.environment.carrier import ActionSpace
from buckrl.exceptions import ConfigError, InsufficientSamples
from buckrl.network import QNetwork, sgd_update


@dataclass(frozen=True)
class Hyperparams:
    """Learner settings; the sync period, warmup and capacity are desk-scale defaults."""

    lr: float = 0.001
    gamma: float = 0.9
    batch_size: int = 256
    epsilon: float = 0.1
    target_sync_period: int = 500
    warmup_steps: Optional[int] = None
    train_steps_per_env_step: int = 1
    replay_capacity: int = 100_000

    def __post_init__(self) -> None:
        if not self.lr > 0:
            raise ConfigError("must be > 0", field="agent.lr")
        if not 0.0 < self.gamma < 1.0:
            raise ConfigError("must lie in (0, 1)", field="agent.gamma")
        if not 0.0 <= self.epsilon <= 1.0:
            raise ConfigError("must lie in [0, 1]", field="agent.epsilon")
        for name in (
            "batch_size",
            "target_sync_period",
            "train_steps_per_env_step",
            "replay_capacity",
        ):
            if not getattr(self, name) > 0:
                raise ConfigError("must be > 0", field="agent.{}".format(name))
        if self.warmup_steps is not None and not self.warmup_steps > 0:
            raise ConfigError("must be > 0", field="agent.warmup_steps")

    @property
    def warmup(self) -> int:
        """Transitions required before the first training step."""
        return self.warmup_steps if self.warmup_steps is not None else 5 * self.batch_size


def select_action(
    net: QNetwork,
    state: np.ndarray,
    space: ActionSpace,
    epsilon: float,
    rng: np.random.Generator,
) -> int:
    """Epsilon-greedy: explore with probability epsilon, else argmax Q (lowest index on ties)."""
    if rng.random() < epsilon:
        return int(rng.integers(space.size))
    return int(np.argmax(net.q_values(state, space.encodings())))


def max_q(net: QNetwork, states: np.ndarray, space: ActionSpace) -> np.ndarray:
    """max_a Q(s, a) for each row of states."""
    encodings = space.encodings()
    count, width = len(states), len(encodings)
    q = net.forward_batch(
        np.repeat(states, width, axis=0), np.tile(encodings, (count, 1))
    )
    return q.reshape(count, width).max(axis=1)


def compute_targets(
    rewards: np.ndarray,
    next_states: np.ndarray,
    dones: np.ndarray,
    target_net: QNetwork,
    space: ActionSpace,
    gamma: float,
) -> np.ndarray:
    """Bootstrapped targets; terminal rows never consult target_net."""
    targets = np.array(rewards, dtype=np.float64)
    live = ~np.asarray(dones, dtype=bool)
    if live.any():
        targets[live] += gamma * max_q(target_net, np.asarray(next_states)[live], space)
    return targets


def compute_target(
    t: Transition, target_net: QNetwork, space: ActionSpace, gamma: float
) -> float:
    """y = r if done, else r + gamma * max_a Q_target(s_next, a)."""
    if t.done:
        return float(t.r)
    return float(t.r + gamma * max_q(target_net, np.atleast_2d(t.s_next), space)[0])


def train_step(
    net: QNetwork,
    target_net: QNetwork,
    buffer: ReplayBuffer,
    hp: Hyperparams,
    space: ActionSpace,
    rng: np.random.Generator,
) -> float:
    """Sample a batch, regress net onto target_net's targets, return the pre-update loss."""
    required = max(hp.batch_size, hp.warmup)
    if len(buffer) < required:
        raise InsufficientSamples(
            "Buffer holds {} transitions, training needs {}.".format(len(buffer), required)
        )
    states, actions, rewards, next_states, dones = buffer.sample_arrays(hp.batch_size, rng)
    targets = compute_targets(rewards, next_states, dones, target_net, space, hp.gamma)
    encodings = space.encodings()[actions]
    loss, grad = net.loss_and_gradient(states, encodings, targets)
    sgd_update(net, grad, hp.lr)
    return loss


def sync_target(net: QNetwork, target_net: QNetwork) -> None:
    """Copy net's parameters into target_net."""
    target_net.copy_from(net)
