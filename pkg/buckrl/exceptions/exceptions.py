"""Utility module for defining our own custom exceptions.

Every error the workbench raises on purpose derives from HumanReadableError,
so the command line can tell a domain failure from a programming error.
"""

from typing import List, Optional

__all__ = [
    "HumanReadableError",
    "SingularVoltage",
    "EpisodeFinished",
    "IndexOutOfRange",
    "DimensionMismatch",
    "MalformedCheckpoint",
    "InsufficientSamples",
    "AbortedTooOften",
    "EmptyTrace",
    "ConfigError",
    "UsageError",
    "raise_readable_error",
    "is_human_readable",
]


class HumanReadableError(Exception):
    """This is our custom exception for better user experience on error notifications."""

    title = "Error"

    def __init__(self, message: str, errors: Optional[List[str]] = None) -> None:
        super().__init__(message)
        self.message = message
        self.errors = list(errors) if errors else []


class SingularVoltage(HumanReadableError):
    """Output voltage fell below the floor where the CPL current P/v_o blows up."""

    title = "Singular voltage"

    def __init__(self, v_o: float, v_min: float) -> None:
        super().__init__(
            "Output voltage {!r} V is below the floor of {!r} V.".format(v_o, v_min)
        )
        self.v_o = v_o
        self.v_min = v_min


class EpisodeFinished(HumanReadableError):
    """Environment stepped after the episode ended."""

    title = "Episode finished"


class IndexOutOfRange(HumanReadableError, IndexError):
    """Action index outside the action space."""

    title = "Index out of range"


class DimensionMismatch(HumanReadableError, ValueError):
    """Two networks or a network and a gradient do not share a topology."""

    title = "Dimension mismatch"


class MalformedCheckpoint(HumanReadableError):
    """Checkpoint header, version or parameter count does not check out."""

    title = "Malformed checkpoint"


class InsufficientSamples(HumanReadableError):
    """Replay buffer holds fewer transitions than requested."""

    title = "Insufficient samples"


class AbortedTooOften(HumanReadableError):
    """Nearly every late-training episode aborted, the learner diverged."""

    title = "Training diverged"


class EmptyTrace(HumanReadableError):
    """A trace with no rows was handed to metrics or plotting."""

    title = "Empty trace"


class ConfigError(HumanReadableError):
    """Configuration file could not be parsed or validated."""

    title = "Configuration error"

    def __init__(
        self, message: str, field: Optional[str] = None, line: Optional[int] = None
    ) -> None:
        self.reason = message
        location = []
        if field is not None:
            location.append("field {}".format(field))
        if line is not None:
            location.append("line {}".format(line))
        if location:
            message = "{} ({})".format(message, ", ".join(location))
        super().__init__(message)
        self.field = field
        self.line = line


class UsageError(HumanReadableError):
    """Command-line arguments did not parse."""

    title = "Usage error"


def raise_readable_error(message: str) -> None:
    """Raise the human readable error message."""
    raise HumanReadableError(message)


def is_human_readable(exception: BaseException) -> bool:
    """Check if exception is an instance of HumanReadableError."""
    return isinstance(exception, HumanReadableError)
