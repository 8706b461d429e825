from buckrl.environment import Trace
from buckrl.harness.metrics import compute_metrics
from buckrl.harness.runs import prepare_out_dir, write_metrics
from buckrl.management.base import BuckRLCommand


class Command(BuckRLCommand):
    help = "Compute overshoot, settling time and steady-state error of a trace CSV."

    def add_arguments(self, parser):
        parser.add_argument("trace", help="Trace CSV written by eval or baseline.")
        self.add_scenario_argument(parser)
        self.add_config_argument(parser)
        self.add_out_argument(parser, required=False)

    def run(self, **options):
        config = self.get_config(options)
        scenario = self.get_scenario(options, config)
        report = compute_metrics(
            Trace.from_csv(options["trace"]),
            scenario.circuit.v_ref,
            scenario.edges(),
            band=config.metrics.settling_band,
            steady_window=config.metrics.steady_window,
        )
        self.pprint_metrics(report)
        if options["out"]:
            self.write_paths([write_metrics(prepare_out_dir(options["out"]), report)])
