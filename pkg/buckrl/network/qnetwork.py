"""Two-path Q-network on numpy.

The state path (6 -> M -> N) and the action path (2 -> P) are concatenated,
passed through a ReLU merge layer and a linear scalar head:

    Q(s, a) = W_o relu(W_m [relu(W_2 relu(W_1 s + b_1) + b_2), relu(W_a a + b_a)] + b_m) + b_o

Gradients are exact backpropagation of the mean squared error; all
arithmetic is float64.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Sequence, Tuple

import numpy as np

from buckrl.exceptions import ConfigError, DimensionMismatch

LAYER_NAMES = ("state_hidden1", "state_hidden2", "action_hidden", "merge", "output")


@dataclass(frozen=True)
class Topology:
    state_inputs: int = 6
    action_inputs: int = 2
    m: int = 4
    n: int = 8
    p: int = 8
    merge: int = 8

    def __post_init__(self) -> None:
        for name in ("state_inputs", "action_inputs", "m", "n", "p", "merge"):
            if not getattr(self, name) > 0:
                raise ConfigError("must be > 0", field="network.{}".format(name))

    def layer_shapes(self) -> Dict[str, Tuple[int, int]]:
        """(out, in) of every layer, in parameter order."""
        return {
            "state_hidden1": (self.m, self.state_inputs),
            "state_hidden2": (self.n, self.m),
            "action_hidden": (self.p, self.action_inputs),
            "merge": (self.merge, self.n + self.p),
            "output": (1, self.merge),
        }

    @property
    def parameter_count(self) -> int:
        return sum(out * (inp + 1) for out, inp in self.layer_shapes().values())

    def widths(self) -> Tuple[int, ...]:
        return (self.state_inputs, self.action_inputs, self.m, self.n, self.p, self.merge)


@dataclass
class LayerParams:
    weights: np.ndarray
    biases: np.ndarray

    def copy(self) -> "LayerParams":
        return LayerParams(self.weights.copy(), self.biases.copy())


def relu(x: np.ndarray) -> np.ndarray:
    return np.maximum(x, 0.0)


class QNetwork:
    """Q(s, a) approximator with a state path and an action path.

    Instances are plain values: ``forward`` and ``gradient`` never mutate,
    only ``sgd_update`` and ``copy_from`` write parameters in place.
    """

    def __init__(self, topology: Topology, layers: Dict[str, LayerParams]) -> None:
        shapes = topology.layer_shapes()
        for name in LAYER_NAMES:
            layer = layers[name]
            if layer.weights.shape != shapes[name] or layer.biases.shape != (
                shapes[name][0],
            ):
                raise DimensionMismatch(
                    "Layer {} has shape {}/{}, topology wants {}.".format(
                        name, layer.weights.shape, layer.biases.shape, shapes[name]
                    )
                )
        self.topology = topology
        self.layers = {
            name: LayerParams(
                np.asarray(layers[name].weights, dtype=np.float64),
                np.asarray(layers[name].biases, dtype=np.float64),
            )
            for name in LAYER_NAMES
        }

    @property
    def state_hidden1(self) -> LayerParams:
        return self.layers["state_hidden1"]

    @property
    def state_hidden2(self) -> LayerParams:
        return self.layers["state_hidden2"]

    @property
    def action_hidden(self) -> LayerParams:
        return self.layers["action_hidden"]

    @property
    def merge(self) -> LayerParams:
        return self.layers["merge"]

    @property
    def output(self) -> LayerParams:
        return self.layers["output"]

    def __iter__(self) -> Iterator[Tuple[str, LayerParams]]:
        return ((name, self.layers[name]) for name in LAYER_NAMES)

    @classmethod
    def zeros(cls, topology: Topology) -> "QNetwork":
        """Network with every parameter zero."""
        return cls(
            topology,
            {
                name: LayerParams(np.zeros(shape), np.zeros(shape[0]))
                for name, shape in topology.layer_shapes().items()
            },
        )

    def clone(self) -> "QNetwork":
        """Deep copy."""
        return QNetwork(self.topology, {name: layer.copy() for name, layer in self})

    def check_compatible(self, other: "QNetwork") -> None:
        if other.topology != self.topology:
            raise DimensionMismatch(
                "Topology {} does not match {}.".format(other.topology, self.topology)
            )

    def copy_from(self, other: "QNetwork") -> None:
        """Overwrite every parameter with other's."""
        self.check_compatible(other)
        for name, layer in other:
            self.layers[name].weights[...] = layer.weights
            self.layers[name].biases[...] = layer.biases

    def parameters(self) -> np.ndarray:
        """All parameters flattened: per layer, weights row-major then biases."""
        return np.concatenate(
            [np.concatenate([layer.weights.ravel(), layer.biases]) for _, layer in self]
        )

    def with_parameters(self, vector: Sequence[float]) -> "QNetwork":
        """New network of the same topology holding the flat parameter vector."""
        vector = np.asarray(vector, dtype=np.float64)
        if vector.shape != (self.topology.parameter_count,):
            raise DimensionMismatch(
                "Expected {} parameters, got {}.".format(
                    self.topology.parameter_count, vector.size
                )
            )
        layers, offset = {}, 0
        for name, (out, inp) in self.topology.layer_shapes().items():
            weights = vector[offset : offset + out * inp].reshape(out, inp)
            offset += out * inp
            biases = vector[offset : offset + out]
            offset += out
            layers[name] = LayerParams(weights.copy(), biases.copy())
        return QNetwork(self.topology, layers)

    def state_features(self, states: np.ndarray) -> np.ndarray:
        """Output of the state path, shape (batch, N)."""
        states = np.atleast_2d(np.asarray(states, dtype=np.float64))
        h1 = relu(states @ self.state_hidden1.weights.T + self.state_hidden1.biases)
        return relu(h1 @ self.state_hidden2.weights.T + self.state_hidden2.biases)

    def forward_cache(self, states: np.ndarray, actions: np.ndarray) -> Dict[str, np.ndarray]:
        """Forward pass keeping every pre-activation for backpropagation."""
        states = np.atleast_2d(np.asarray(states, dtype=np.float64))
        actions = np.atleast_2d(np.asarray(actions, dtype=np.float64))
        cache = {"s": states, "a": actions}
        cache["z1"] = states @ self.state_hidden1.weights.T + self.state_hidden1.biases
        cache["h1"] = relu(cache["z1"])
        cache["z2"] = cache["h1"] @ self.state_hidden2.weights.T + self.state_hidden2.biases
        cache["h2"] = relu(cache["z2"])
        cache["za"] = actions @ self.action_hidden.weights.T + self.action_hidden.biases
        cache["ha"] = relu(cache["za"])
        cache["c"] = np.concatenate([cache["h2"], cache["ha"]], axis=1)
        cache["zm"] = cache["c"] @ self.merge.weights.T + self.merge.biases
        cache["hm"] = relu(cache["zm"])
        cache["q"] = (cache["hm"] @ self.output.weights.T + self.output.biases)[:, 0]
        return cache

    def forward_batch(self, states: np.ndarray, actions: np.ndarray) -> np.ndarray:
        """Q for each row pair, shape (batch,)."""
        return self.forward_cache(states, actions)["q"]

    def q_values(self, state: np.ndarray, encodings: np.ndarray) -> np.ndarray:
        """Q of one state against every action encoding, shape (actions,)."""
        encodings = np.atleast_2d(encodings)
        states = np.repeat(np.atleast_2d(state), len(encodings), axis=0)
        return self.forward_batch(states, encodings)

    def loss_and_gradient(
        self, states: np.ndarray, actions: np.ndarray, targets: np.ndarray
    ) -> Tuple[float, "QNetwork"]:
        """Mean squared error against targets and its exact gradient."""
        cache = self.forward_cache(states, actions)
        targets = np.asarray(targets, dtype=np.float64).reshape(-1)
        batch = targets.shape[0]
        residual = targets - cache["q"]
        loss = float(np.mean(residual**2))

        dq = (-2.0 / batch) * residual[:, None]
        grads = {}
        grads["output"] = LayerParams(dq.T @ cache["hm"], dq.sum(axis=0))

        dzm = (dq @ self.output.weights) * (cache["zm"] > 0)
        grads["merge"] = LayerParams(dzm.T @ cache["c"], dzm.sum(axis=0))
        dc = dzm @ self.merge.weights

        n = self.topology.n
        dza = dc[:, n:] * (cache["za"] > 0)
        grads["action_hidden"] = LayerParams(dza.T @ cache["a"], dza.sum(axis=0))

        dz2 = dc[:, :n] * (cache["z2"] > 0)
        grads["state_hidden2"] = LayerParams(dz2.T @ cache["h1"], dz2.sum(axis=0))
        dz1 = (dz2 @ self.state_hidden2.weights) * (cache["z1"] > 0)
        grads["state_hidden1"] = LayerParams(dz1.T @ cache["s"], dz1.sum(axis=0))

        return loss, QNetwork(self.topology, grads)


def init(seed: Optional[int], topology: Optional[Topology] = None) -> QNetwork:
    """Glorot-uniform weights, zero biases, reproducible from seed."""
    topology = topology or Topology()
    rng = np.random.default_rng(seed)
    layers = {}
    for name, (out, inp) in topology.layer_shapes().items():
        bound = np.sqrt(6.0 / (inp + out))
        layers[name] = LayerParams(rng.uniform(-bound, bound, size=(out, inp)), np.zeros(out))
    return QNetwork(topology, layers)


def forward(net: QNetwork, s: Sequence[float], a: Sequence[float]) -> float:
    """Scalar Q(s, a)."""
    return float(net.forward_batch(np.asarray(s)[None, :], np.asarray(a)[None, :])[0])


def gradient(
    net: QNetwork, batch: Sequence[Tuple[Sequence[float], Sequence[float], float]]
) -> QNetwork:
    """Gradient of mean (target - Q(s, a))^2 over a non-empty batch of (s, a, target)."""
    if not batch:
        raise ValueError("gradient needs a non-empty batch")
    states = np.array([sample[0] for sample in batch], dtype=np.float64)
    actions = np.array([sample[1] for sample in batch], dtype=np.float64)
    targets = np.array([sample[2] for sample in batch], dtype=np.float64)
    return net.loss_and_gradient(states, actions, targets)[1]


def sgd_update(net: QNetwork, grad: QNetwork, lr: float) -> QNetwork:
    """theta <- theta - lr * grad, in place; returns net."""
    if lr < 0:
        raise ValueError("learning rate must be >= 0, got {!r}".format(lr))
    net.check_compatible(grad)
    for name, layer in grad:
        net.layers[name].weights -= lr * layer.weights
        net.layers[name].biases -= lr * layer.biases
    return net
