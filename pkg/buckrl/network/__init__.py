from buckrl.network.qnetwork import (
    LAYER_NAMES,
    LayerParams,
    QNetwork,
    Topology,
    forward,
    gradient,
    init,
    sgd_update,
)
from buckrl.network.checkpoint import (
    deserialize,
    load_checkpoint,
    save_checkpoint,
    serialize,
)


def clone(net: QNetwork) -> QNetwork:
    """Deep copy of net."""
    return net.clone()


__all__ = [
    "LAYER_NAMES",
    "LayerParams",
    "QNetwork",
    "Topology",
    "clone",
    "deserialize",
    "forward",
    "gradient",
    "init",
    "load_checkpoint",
    "save_checkpoint",
    "serialize",
    "sgd_update",
]
