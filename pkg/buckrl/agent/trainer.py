"""The interaction loop: act, store, learn, resynchronize.

Any environment exposing ``reset(seed)``, ``step(action_index)``,
``action_space`` and ``encode_observation(observation)`` can be trained,
which is how the toy MDPs in the test suite stand in for the converter.
"""

import csv
import math

from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, List, Optional, Protocol, Tuple, Union

import numpy as np

from buckrl.agent.dqn import Hyperparams, select_action, sync_target, train_step
from buckrl.agent.replay import ReplayBuffer, Transition
from buckrl.environment.carrier import ActionSpace
from buckrl.exceptions import AbortedTooOften
from buckrl.logging.logging import TerminalLoggingMixin
from buckrl.network import QNetwork, Topology, init

CURVE_COLUMNS = ("episode", "steps", "mean_reward", "mean_abs_error", "epsilon", "loss_mean")

SEED_BITS = 2**63


class Environment(Protocol):
    action_space: ActionSpace

    def reset(self, seed: Optional[int] = None) -> Any: ...

    def step(self, action_index: int) -> Tuple[Any, float, bool, dict]: ...

    def encode_observation(self, observation: Any) -> np.ndarray: ...


@dataclass(frozen=True)
class EpisodeStats:
    episode: int
    steps: int
    mean_reward: float
    mean_abs_error: float
    epsilon: float
    loss_mean: float
    aborted: bool = False

    def as_row(self) -> List[str]:
        return [repr(getattr(self, name)) for name in CURVE_COLUMNS]


@dataclass
class TrainingResult:
    net: QNetwork
    curve: List[EpisodeStats] = field(default_factory=list)
    sync_steps: List[int] = field(default_factory=list)

    def write_curve(self, path: Union[str, Path]) -> Path:
        return write_learning_curve(self.curve, path)


def write_learning_curve(curve: List[EpisodeStats], path: Union[str, Path]) -> Path:
    """Learning-curve CSV, floats in shortest round-trip form."""
    path = Path(path)
    with path.open("w", newline="") as stream:
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(CURVE_COLUMNS)
        for stats in curve:
            writer.writerow(stats.as_row())
    return path


def seed_streams(seed: Optional[int]) -> Tuple[int, np.random.Generator, np.random.Generator]:
    """Split a master seed into the network-init seed, agent rng and episode-seed rng."""
    init_seq, agent_seq, env_seq = np.random.SeedSequence(seed).spawn(3)
    return int(init_seq.generate_state(1)[0]), np.random.default_rng(agent_seq), np.random.default_rng(env_seq)


def initial_network(seed: Optional[int], topology: Optional[Topology] = None) -> QNetwork:
    """The network train() starts from for this seed."""
    return init(seed_streams(seed)[0], topology)


class DQNTrainer(TerminalLoggingMixin):
    """One trainer owns its networks, buffer and random streams."""

    #: fraction of episodes counted as late training for divergence checks
    late_fraction = 0.2
    #: abort share of late episodes above which training is declared diverged
    abort_limit = 0.9
    #: fewer episodes than this are never declared diverged
    min_episodes_for_abort_check = 10

    def __init__(
        self,
        env: Environment,
        hp: Optional[Hyperparams] = None,
        seed: Optional[int] = None,
        topology: Optional[Topology] = None,
        verbosity: int = 0,
        log_stream=None,
    ) -> None:
        self.env = env
        self.hp = hp or Hyperparams()
        self.space = env.action_space
        self.verbosity = verbosity
        self.log_stream = log_stream

        init_seed, self.rng, self.episode_rng = seed_streams(seed)
        self.net = init(init_seed, topology)
        self.target_net = self.net.clone()
        self.buffer = ReplayBuffer(self.hp.replay_capacity)
        self.total_steps = 0
        self.sync_steps: List[int] = []

    def can_train(self) -> bool:
        return len(self.buffer) >= max(self.hp.batch_size, self.hp.warmup)

    def learn(self) -> List[float]:
        """Run the configured number of gradient steps, returning their losses."""
        if not self.can_train():
            return []
        return [
            train_step(self.net, self.target_net, self.buffer, self.hp, self.space, self.rng)
            for _ in range(self.hp.train_steps_per_env_step)
        ]

    def run_episode(self, episode: int) -> EpisodeStats:
        """Play one episode with epsilon-greedy actions, learning online."""
        observation = self.env.reset(seed=int(self.episode_rng.integers(SEED_BITS)))
        state = self.env.encode_observation(observation)
        rewards, errors, losses = [], [], []
        aborted = False
        done = False

        while not done:
            action = select_action(self.net, state, self.space, self.hp.epsilon, self.rng)
            observation, reward, done, info = self.env.step(action)
            next_state = self.env.encode_observation(observation)
            terminal = done and not info.get("truncated", False)
            self.buffer.push(Transition(state, action, reward, next_state, terminal))
            self.total_steps += 1

            losses.extend(self.learn())
            if self.total_steps % self.hp.target_sync_period == 0:
                sync_target(self.net, self.target_net)
                self.sync_steps.append(self.total_steps)

            rewards.append(reward)
            errors.append(abs(info.get("e", math.nan)))
            aborted = aborted or bool(info.get("aborted", False))
            state = next_state

        tail = errors[-max(1, int(math.ceil(len(errors) * self.late_fraction))) :]
        return EpisodeStats(
            episode=episode,
            steps=self.total_steps,
            mean_reward=float(np.mean(rewards)),
            mean_abs_error=float(np.mean(tail)),
            epsilon=self.hp.epsilon,
            loss_mean=float(np.mean(losses)) if losses else math.nan,
            aborted=aborted,
        )

    def check_divergence(self, curve: List[EpisodeStats]) -> None:
        """Raise AbortedTooOften when late training is almost all aborts."""
        if len(curve) < self.min_episodes_for_abort_check:
            return
        late = curve[-max(1, int(len(curve) * self.late_fraction)) :]
        share = sum(stats.aborted for stats in late) / len(late)
        if share > self.abort_limit:
            raise AbortedTooOften(
                "{:.0%} of the last {} episodes aborted.".format(share, len(late))
            )

    def train(self, episodes: int) -> TrainingResult:
        """Run episodes and return the learned network and its learning curve."""
        curve = []
        for episode in range(1, episodes + 1):
            stats = self.run_episode(episode)
            curve.append(stats)
            self.pprint_episode(asdict(stats))
        self.check_divergence(curve)
        return TrainingResult(net=self.net, curve=curve, sync_steps=list(self.sync_steps))


def train(
    env: Environment,
    hp: Optional[Hyperparams] = None,
    seed: Optional[int] = None,
    episodes: int = 0,
    topology: Optional[Topology] = None,
    verbosity: int = 0,
    log_stream=None,
) -> TrainingResult:
    """Train a fresh DQN on env, fully reproducible from seed."""
    trainer = DQNTrainer(
        env, hp, seed=seed, topology=topology, verbosity=verbosity, log_stream=log_stream
    )
    return trainer.train(episodes)
