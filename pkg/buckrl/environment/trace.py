"""Episode and closed-loop traces, and their CSV form.

Columns, in order: t, v_o, i_l, duty, p_cpl, e, reward, action_index.
reward and action_index are empty for runs without an agent.
"""

import csv
import io

from pathlib import Path
from typing import Iterator, List, NamedTuple, Optional, TextIO, Union

import numpy as np

from buckrl.exceptions import EmptyTrace, HumanReadableError

TRACE_COLUMNS = ("t", "v_o", "i_l", "duty", "p_cpl", "e", "reward", "action_index")


def format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return repr(float(value))


class TraceRow(NamedTuple):
    t: float
    v_o: float
    i_l: float
    duty: float
    p_cpl: float
    e: float
    reward: Optional[float] = None
    action_index: Optional[int] = None


class Trace:
    """Time-sorted list of TraceRow with CSV read/write."""

    def __init__(self, rows: Optional[List[TraceRow]] = None) -> None:
        self.rows: List[TraceRow] = list(rows) if rows else []

    def __len__(self) -> int:
        return len(self.rows)

    def __iter__(self) -> Iterator[TraceRow]:
        return iter(self.rows)

    def append(self, row: TraceRow) -> None:
        """Append one row."""
        self.rows.append(row)

    def column(self, name: str) -> np.ndarray:
        """Return one column as a float array, NaN where the cell is empty."""
        index = TRACE_COLUMNS.index(name)
        return np.array(
            [np.nan if row[index] is None else row[index] for row in self.rows],
            dtype=float,
        )

    def require_rows(self) -> None:
        """Raise EmptyTrace when there is nothing to work on."""
        if not self.rows:
            raise EmptyTrace("Trace has no rows.")

    def write_csv(self, stream: TextIO) -> None:
        """Write header and rows, floats in shortest round-trip form."""
        writer = csv.writer(stream, lineterminator="\n")
        writer.writerow(TRACE_COLUMNS)
        for row in self.rows:
            writer.writerow([format_cell(value) for value in row])

    def to_csv(self, path: Union[str, Path]) -> Path:
        """Write the trace to path and return it."""
        path = Path(path)
        with path.open("w", newline="") as stream:
            self.write_csv(stream)
        return path

    def to_csv_string(self) -> str:
        """Return the CSV text."""
        buffer = io.StringIO()
        self.write_csv(buffer)
        return buffer.getvalue()

    @classmethod
    def read_csv(cls, stream: TextIO) -> "Trace":
        """Parse CSV text produced by write_csv."""
        reader = csv.reader(stream)
        header = next(reader, None)
        if header is None or tuple(header) != TRACE_COLUMNS:
            raise HumanReadableError(
                "Trace CSV header must be {}.".format(",".join(TRACE_COLUMNS))
            )
        rows = []
        for line_number, cells in enumerate(reader, start=2):
            try:
                values = [float(cell) for cell in cells[:6]]
                reward = float(cells[6]) if cells[6] else None
                action = int(cells[7]) if cells[7] else None
            except (ValueError, IndexError) as exc:
                raise HumanReadableError(
                    "Bad trace row on line {}: {}".format(line_number, exc)
                ) from exc
            rows.append(TraceRow(*values, reward=reward, action_index=action))
        return cls(rows)

    @classmethod
    def from_csv(cls, path: Union[str, Path]) -> "Trace":
        """Load a trace CSV file."""
        try:
            with Path(path).open(newline="") as stream:
                return cls.read_csv(stream)
        except OSError as exc:
            raise HumanReadableError("Cannot read trace {}: {}".format(path, exc.strerror)) from exc
