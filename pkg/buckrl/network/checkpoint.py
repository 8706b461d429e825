"""Text checkpoints for Q-networks.

Layout, one item per line:

    BUCKRL-QNET
    version 1
    topology <state_inputs> <action_inputs> <M> <N> <P> <merge>
    <parameter>            (repeated, QNetwork.parameters() order)

Values are written with repr, which round-trips float64 exactly.
"""

import math

from pathlib import Path
from typing import Union

from buckrl.exceptions import ConfigError, MalformedCheckpoint
from buckrl.network.qnetwork import QNetwork, Topology

MAGIC = "BUCKRL-QNET"
FORMAT_VERSION = 1


def serialize(net: QNetwork) -> bytes:
    """Checkpoint bytes for net."""
    lines = [
        MAGIC,
        "version {}".format(FORMAT_VERSION),
        "topology {}".format(" ".join(str(width) for width in net.topology.widths())),
    ]
    lines.extend(repr(float(value)) for value in net.parameters())
    return ("\n".join(lines) + "\n").encode("ascii")


def deserialize(data: bytes) -> QNetwork:
    """Rebuild a network, MalformedCheckpoint on any header, size or value problem."""
    try:
        lines = data.decode("ascii").splitlines()
    except UnicodeDecodeError as exc:
        raise MalformedCheckpoint("Checkpoint is not ASCII text.") from exc

    if len(lines) < 3 or lines[0] != MAGIC:
        raise MalformedCheckpoint("Missing {} header.".format(MAGIC))

    version = lines[1].split()
    if len(version) != 2 or version[0] != "version" or version[1] != str(FORMAT_VERSION):
        raise MalformedCheckpoint(
            "Unsupported checkpoint version line {!r}.".format(lines[1])
        )

    widths = lines[2].split()
    if len(widths) != 7 or widths[0] != "topology":
        raise MalformedCheckpoint("Bad topology line {!r}.".format(lines[2]))
    try:
        topology = Topology(*(int(width) for width in widths[1:]))
    except (ValueError, ConfigError) as exc:
        raise MalformedCheckpoint("Bad topology line {!r}.".format(lines[2])) from exc

    values = [line for line in lines[3:] if line.strip()]
    if len(values) != topology.parameter_count:
        raise MalformedCheckpoint(
            "Topology {} needs {} parameters, checkpoint has {}.".format(
                topology.widths(), topology.parameter_count, len(values)
            )
        )
    try:
        parameters = [float(value) for value in values]
    except ValueError as exc:
        raise MalformedCheckpoint("Non-numeric parameter: {}".format(exc)) from exc
    for index, value in enumerate(parameters):
        if not math.isfinite(value):
            raise MalformedCheckpoint(
                "Parameter {} is {!r}, checkpoints hold finite values only.".format(index, value)
            )

    return QNetwork.zeros(topology).with_parameters(parameters)


def save_checkpoint(net: QNetwork, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.write_bytes(serialize(net))
    return path


def load_checkpoint(path: Union[str, Path]) -> QNetwork:
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise MalformedCheckpoint("Cannot read checkpoint {}: {}".format(path, exc)) from exc
    return deserialize(data)
