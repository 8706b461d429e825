from buckrl.harness.runs import run_train
from buckrl.management.base import BuckRLCommand


class Command(BuckRLCommand):
    help = "Train a DQN agent and write checkpoint, learning curve and manifest."

    def add_arguments(self, parser):
        self.add_config_argument(parser, required=True)
        self.add_seed_argument(parser)
        self.add_out_argument(parser)

    def run(self, **options):
        config = self.get_config(options)
        outputs = run_train(
            config,
            options["seed"],
            options["out"],
            verbosity=self.verbosity,
            log_stream=self.stdout,
        )
        self.write_paths([outputs.checkpoint, outputs.curve, outputs.manifest])
