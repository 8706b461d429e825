from buckrl.harness.runs import run_baseline
from buckrl.management.base import BuckRLCommand


class Command(BuckRLCommand):
    help = "Run the double-loop PI controller through a scenario."

    def add_arguments(self, parser):
        self.add_scenario_argument(parser)
        self.add_config_argument(parser)
        self.add_out_argument(parser, required=False)

    def run(self, **options):
        config = self.get_config(options)
        scenario = self.get_scenario(options, config)
        _, report = run_baseline(scenario, config=config, out_dir=options["out"])
        self.pprint_metrics(report, label="PI {}".format(scenario.name))
