from pathlib import Path

from buckrl.environment import Trace
from buckrl.harness.plotting import export_plot
from buckrl.management.base import BuckRLCommand


class Command(BuckRLCommand):
    help = "Plot a trace CSV as SVG."

    def add_arguments(self, parser):
        parser.add_argument("trace", help="Trace CSV written by eval or baseline.")
        parser.add_argument("--out", required=True, help="SVG file, or a directory for trace.svg.")
        parser.add_argument("--v-ref", type=float, default=None, help="Draw the reference line.")
        parser.add_argument("--title", default=None)
        parser.add_argument("--no-current", action="store_true", help="Voltage panel only.")

    def run(self, **options):
        out = Path(options["out"])
        if out.suffix != ".svg":
            out.mkdir(parents=True, exist_ok=True)
            out = out / "trace.svg"
        else:
            out.parent.mkdir(parents=True, exist_ok=True)
        path = export_plot(
            Trace.from_csv(options["trace"]),
            out,
            show_current=not options["no_current"],
            v_ref=options["v_ref"],
            title=options["title"],
        )
        self.write_paths([path])
