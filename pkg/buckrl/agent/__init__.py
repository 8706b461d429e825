from buckrl.agent.dqn import (
    Hyperparams,
    compute_target,
    compute_targets,
    max_q,
    select_action,
    sync_target,
    train_step,
)
from buckrl.agent.replay import ReplayBuffer, Transition, push, sample
from buckrl.agent.returns import discounted_return, returns_to_go
from buckrl.agent.tabular import tabular_q_update
from buckrl.agent.trainer import (
    CURVE_COLUMNS,
    DQNTrainer,
    EpisodeStats,
    TrainingResult,
    initial_network,
    train,
    write_learning_curve,
)

__all__ = [
    "CURVE_COLUMNS",
    "DQNTrainer",
    "EpisodeStats",
    "Hyperparams",
    "ReplayBuffer",
    "TrainingResult",
    "Transition",
    "compute_target",
    "compute_targets",
    "discounted_return",
    "initial_network",
    "max_q",
    "push",
    "returns_to_go",
    "sample",
    "select_action",
    "sync_target",
    "tabular_q_update",
    "train",
    "train_step",
    "write_learning_curve",
]
