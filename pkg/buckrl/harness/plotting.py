"""Line plots of traces, output voltage and optionally inductor current.

Presentation only; nothing is measured from the figures. Output is SVG with
a fixed hash salt and no date so identical traces give identical files.
"""

from pathlib import Path
from typing import Optional, Union

import matplotlib

from matplotlib.figure import Figure

from buckrl.environment import Trace

params = {
    "svg.hashsalt": "buckrl",
    "svg.fonttype": "path",
    "font.family": "sans-serif",
    "font.sans-serif": ["DejaVu Sans"],
    "font.size": 8,
    "axes.labelsize": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.0,
    "legend.fontsize": 8,
}


def export_plot(
    trace: Trace,
    path: Union[str, Path],
    show_current: bool = True,
    v_ref: Optional[float] = None,
    title: Optional[str] = None,
) -> Path:
    """Write the trace as an SVG line plot and return the path."""
    trace.require_rows()
    path = Path(path)
    times_ms = trace.column("t") * 1e3

    with matplotlib.rc_context(params):
        rows = 2 if show_current else 1
        figure = Figure(figsize=(6.4, 2.4 * rows))
        axes = figure.subplots(rows, 1, sharex=True, squeeze=False)[:, 0]

        axes[0].plot(times_ms, trace.column("v_o"), color="#08589e", label="v_o")
        if v_ref is not None:
            axes[0].axhline(v_ref, color="#7bccc4", linestyle="--", label="v_ref")
            axes[0].legend(loc="best")
        axes[0].set_ylabel("output voltage [V]")
        if title:
            axes[0].set_title(title)

        if show_current:
            axes[1].plot(times_ms, trace.column("i_l"), color="#2b8cbe")
            axes[1].set_ylabel("inductor current [A]")

        axes[-1].set_xlabel("time [ms]")
        figure.tight_layout()
        figure.savefig(path, format="svg", metadata={"Date": None})
    return path
