from dataclasses import replace

from buckrl.harness.sweep import run_sweep
from buckrl.management.base import BuckRLCommand


class Command(BuckRLCommand):
    help = "Train and evaluate every topology and reward cell of the sweep section."

    def add_arguments(self, parser):
        self.add_config_argument(parser, required=True)
        self.add_seed_argument(parser)
        self.add_out_argument(parser)

    def run(self, **options):
        config = self.get_config(options)
        if options["seed"] is not None:
            config = replace(config, sweep=replace(config.sweep, master_seed=options["seed"]))
        summary = run_sweep(config, options["out"], self.verbosity, self.stdout)
        self.write_paths([summary])
