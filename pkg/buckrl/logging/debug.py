import os

from datetime import datetime, tzinfo
from types import TracebackType
from typing import Dict, NamedTuple, Optional

import pytz

from django.conf import settings
from django.utils.termcolors import colorize

from buckrl.logging.logging import TerminalLoggingMixin

TIMESTAMP_FORMAT = "%Y-%m-%d %I:%M %p"


class ExceptionReport(NamedTuple):
    """Where an exception was raised, read off its innermost traceback frame."""

    timestamp: str
    message: str
    type_name: str
    caller: str
    location: str
    line_number: Optional[int]
    context: Dict[str, str]

    def as_line(self) -> str:
        parts = [
            self.timestamp,
            "Exception:{}".format(self.message),
            "Type:{}".format(self.type_name),
            "Caller:{}()".format(self.caller),
            "Location:{}".format(self.location),
            "Line:{}".format(self.line_number),
        ]
        parts.extend("{}:{}".format(key, value) for key, value in self.context.items())
        return " -> ".join(parts)

    def as_mapping(self) -> Dict[str, str]:
        mapping = {
            "Timestamp": self.timestamp,
            "Exception": self.message,
            "Type": self.type_name,
            "Caller": "{}()".format(self.caller),
            "Location": self.location,
            "Line": str(self.line_number),
        }
        mapping.update(self.context)
        return mapping


def innermost(traceback: Optional[TracebackType]) -> Optional[TracebackType]:
    while traceback is not None and traceback.tb_next is not None:
        traceback = traceback.tb_next
    return traceback


def exception_context(exception: BaseException) -> Dict[str, str]:
    """Extra fields carried by readable errors: title, config field and line."""
    context = {}
    for attribute in ("title", "field", "line"):
        value = getattr(exception, attribute, None)
        if value is not None:
            context[attribute.capitalize()] = str(value)
    return context


class DebuggerMixin(TerminalLoggingMixin):
    """Exception reports for whoever runs the workbench with DEBUG on.

    The report goes to the log stream at level 0, so it shows at any verbosity.
    Set ``BUCKRL_DEBUG_MULTILINE=True`` for a labelled block instead of one line.
    """

    def get_project_root_dir(self) -> str:
        return str(getattr(settings, "BASE_DIR", "")) if settings.configured else ""

    def get_location(self, filename: str) -> str:
        """File path relative to the project root when inside it."""
        root = self.get_project_root_dir()
        if root and filename.startswith(root):
            return filename[len(root) :]
        return filename

    def is_debug_multiline(self) -> bool:
        return os.environ.get("BUCKRL_DEBUG_MULTILINE") == "True"

    def get_debug_timezone(self) -> tzinfo:
        """``settings.BUCKRL_TIMEZONE``, UTC when unset or unknown."""
        name = getattr(settings, "BUCKRL_TIMEZONE", "UTC") if settings.configured else "UTC"
        try:
            return pytz.timezone(name)
        except pytz.UnknownTimeZoneError:
            return pytz.utc

    def get_timestamp(self, datetime_format: Optional[str] = None) -> str:
        """Current time in the debug timezone, e.g. ``2022-05-06 02:35 AM``."""
        now = datetime.now(pytz.utc).astimezone(self.get_debug_timezone())
        return now.strftime(datetime_format or TIMESTAMP_FORMAT)

    def build_report(self, exception: BaseException) -> ExceptionReport:
        frame = innermost(exception.__traceback__)
        if frame is None:
            caller, location, line_number = "<unknown>", "<unknown>", None
        else:
            code = frame.tb_frame.f_code
            caller = code.co_name
            location = self.get_location(code.co_filename)
            line_number = frame.tb_lineno
        return ExceptionReport(
            timestamp=self.get_timestamp(),
            message=str(exception),
            type_name=type(exception).__name__,
            caller=caller,
            location=location,
            line_number=line_number,
            context=exception_context(exception),
        )

    def debug_exception(
        self, exception: BaseException, label="Exception Occurred", bg="red"
    ) -> None:
        """Report exception with the frame that raised it.

        Works inside or after the except clause, since the traceback is read
        from the exception itself.
        """
        try:
            report = self.build_report(exception)
            if self.is_debug_multiline():
                self.write_line(level=0)
                self.pprint_mapping(report.as_mapping(), label=label, bg=bg, level=0)
            else:
                self.write_line(
                    colorize(report.as_line(), opts=("bold", "underscore"), fg=bg), level=0
                )
        except Exception as exc:
            self.pprint_exception(exc, "Exception occured on trying to debug exception")
            self.pprint_exception(exception, "Exception")
