"""Experience replay: a fixed-capacity ring of transitions sampled uniformly."""

from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

import numpy as np

from buckrl.exceptions import InsufficientSamples


@dataclass(frozen=True)
class Transition:
    s: np.ndarray
    a: int
    r: float
    s_next: np.ndarray
    done: bool


class ReplayBuffer:
    """Ring buffer; once full, each push evicts the oldest transition.

    Storage is allocated on the first push, when the state width is known.
    """

    def __init__(self, capacity: int) -> None:
        if capacity <= 0:
            raise ValueError("capacity must be > 0, got {!r}".format(capacity))
        self.capacity = int(capacity)
        self.size = 0
        self.cursor = 0
        self.states: Optional[np.ndarray] = None
        self.actions: Optional[np.ndarray] = None
        self.rewards: Optional[np.ndarray] = None
        self.next_states: Optional[np.ndarray] = None
        self.dones: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return self.size

    def allocate(self, width: int) -> None:
        self.states = np.zeros((self.capacity, width))
        self.next_states = np.zeros((self.capacity, width))
        self.actions = np.zeros(self.capacity, dtype=np.int64)
        self.rewards = np.zeros(self.capacity)
        self.dones = np.zeros(self.capacity, dtype=bool)

    def push(self, transition: Transition) -> None:
        """Store a transition, overwriting the oldest when full."""
        s = np.asarray(transition.s, dtype=np.float64)
        if self.states is None:
            self.allocate(s.shape[0])
        i = self.cursor
        self.states[i] = s
        self.next_states[i] = transition.s_next
        self.actions[i] = transition.a
        self.rewards[i] = transition.r
        self.dones[i] = transition.done
        self.cursor = (i + 1) % self.capacity
        self.size = min(self.size + 1, self.capacity)

    def transition_at(self, slot: int) -> Transition:
        return Transition(
            s=self.states[slot].copy(),
            a=int(self.actions[slot]),
            r=float(self.rewards[slot]),
            s_next=self.next_states[slot].copy(),
            done=bool(self.dones[slot]),
        )

    def __iter__(self) -> Iterator[Transition]:
        """Transitions oldest first."""
        start = self.cursor if self.size == self.capacity else 0
        for offset in range(self.size):
            yield self.transition_at((start + offset) % self.capacity)

    def sample_slots(self, b: int, rng: np.random.Generator) -> np.ndarray:
        """b slot indices drawn uniformly with replacement.

        Drawing with replacement is defined for any b once the buffer is not
        empty; the batch-size floor is enforced by the trainer.
        """
        if self.size == 0:
            raise InsufficientSamples("Buffer is empty, {} requested.".format(b))
        return rng.integers(0, self.size, size=b)

    def sample(self, b: int, rng: np.random.Generator) -> List[Transition]:
        """b transitions drawn uniformly with replacement."""
        return [self.transition_at(int(slot)) for slot in self.sample_slots(b, rng)]

    def sample_arrays(
        self, b: int, rng: np.random.Generator
    ) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        """Same draw as sample, as (states, actions, rewards, next_states, dones)."""
        slots = self.sample_slots(b, rng)
        return (
            self.states[slots],
            self.actions[slots],
            self.rewards[slots],
            self.next_states[slots],
            self.dones[slots],
        )


def push(buffer: ReplayBuffer, t: Transition) -> None:
    buffer.push(t)


def sample(buffer: ReplayBuffer, b: int, rng: np.random.Generator) -> List[Transition]:
    return buffer.sample(b, rng)
