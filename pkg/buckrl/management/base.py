"""Base class for the workbench's management commands.

https://docs.djangoproject.com/en/4.0/howto/custom-management-commands/
"""

import json
import sys

from pathlib import Path
from typing import Any, Dict, Iterable, Mapping, Optional

from django.conf import settings
from django.core.management.base import BaseCommand, CommandError

from buckrl.exceptions import UsageError, is_human_readable
from buckrl.harness.config import ExperimentConfig, load_config
from buckrl.harness.scenarios import Scenario, get_scenario
from buckrl.logging.debug import DebuggerMixin

ERROR_PREFIX = "buckrl-error"


class BuckRLCommand(DebuggerMixin, BaseCommand):
    """Runs ``run(**options)`` and turns any failure into one machine-parsable error line.

    Readable errors exit with status 2 and keep their message, anything else
    exits with status 1 and the generic message.
    """

    error_dict = {
        "title": "Error",
        "message": "Unable to run command.",
        "errors": None,
    }

    def create_parser(self, prog_name, subcommand, **kwargs):
        """Argument errors go through error_response like any other failure."""
        parser = super().create_parser(prog_name, subcommand, **kwargs)

        def report_usage(message: str) -> None:
            self.error_response(UsageError(message))

        parser.error = report_usage
        return parser

    def add_config_argument(self, parser, required=False) -> None:
        parser.add_argument("--config", dest="config", required=required, help="Experiment config file.")

    def add_seed_argument(self, parser) -> None:
        parser.add_argument("--seed", type=int, default=None, help="Master random seed.")

    def add_out_argument(self, parser, required=True) -> None:
        parser.add_argument("--out", dest="out", required=required, help="Output directory.")

    def add_scenario_argument(self, parser) -> None:
        parser.add_argument("--scenario", default="A", help="A, B or a scenario file path.")

    def get_config(self, options: Mapping[str, Any]) -> ExperimentConfig:
        return load_config(options.get("config"))

    def get_scenario(self, options: Mapping[str, Any], config: ExperimentConfig) -> Scenario:
        return get_scenario(options["scenario"], config.circuit)

    def handle(self, *args, **options) -> None:
        self.verbosity = options.get("verbosity", 1)
        self.log_stream = self.stdout
        try:
            self.run(**options)
        except Exception as exc:
            self.error_response(exc)

    def run(self, **options) -> None:
        raise NotImplementedError("subclasses of BuckRLCommand must provide a run() method")

    def is_error_human_readable(self, exception: BaseException) -> bool:
        """Check if error exception is human readable."""
        return is_human_readable(exception)

    def get_default_error_dict(self) -> Dict[str, Any]:
        return dict(self.error_dict)

    def get_error_data(self, exception: BaseException) -> Dict[str, Any]:
        """Error payload: title, message, errors and exception type name."""
        error_data = self.get_default_error_dict()
        error_data["type"] = type(exception).__name__
        if self.is_error_human_readable(exception):
            error_data["title"] = exception.title
            error_data["message"] = str(exception)
            error_data["errors"] = exception.errors or None
            field = getattr(exception, "field", None)
            line = getattr(exception, "line", None)
            if field is not None or line is not None:
                error_data["field"] = field
                error_data["line"] = line
        return error_data

    def error_response(self, exception: BaseException) -> None:
        """Write the error line to stderr and leave with a nonzero status.

        From the command line it exits here, so stderr carries this line alone.
        Called programmatically it raises CommandError with the status instead.
        """
        if settings.DEBUG:
            self.debug_exception(exception)

        error_data = self.get_error_data(exception)
        self.stderr.write(
            "{} {}".format(ERROR_PREFIX, json.dumps(error_data, sort_keys=True)),
            style_func=lambda text: text,
        )
        returncode = 2 if self.is_error_human_readable(exception) else 1
        if self._called_from_command_line:
            sys.exit(returncode)
        raise CommandError(error_data["message"], returncode=returncode) from exception

    def write_mapping_to_stdout(self, mapping: Mapping[str, Any], add_newline=True) -> None:
        """Write mapping to standard output"""
        for key, value in mapping.items():
            self.stdout.write(self.style.SQL_COLTYPE("{} : {}".format(key, value)))

        if add_newline:
            self.stdout.write("\n")

    def write_paths(self, paths: Iterable[Optional[Path]]) -> None:
        """Announce written files."""
        for path in paths:
            if path is not None:
                self.stdout.write(self.style.SUCCESS("wrote {}".format(path)))
