from buckrl.harness.runs import run_eval
from buckrl.management.base import BuckRLCommand


class Command(BuckRLCommand):
    help = "Run a trained checkpoint greedily through a scenario."

    def add_arguments(self, parser):
        parser.add_argument("--checkpoint", required=True, help="Checkpoint file from train.")
        self.add_scenario_argument(parser)
        self.add_config_argument(parser)
        self.add_out_argument(parser, required=False)

    def run(self, **options):
        config = self.get_config(options)
        scenario = self.get_scenario(options, config)
        _, report = run_eval(options["checkpoint"], scenario, config, options["out"])
        self.pprint_metrics(report, label="EVAL {}".format(scenario.name))
