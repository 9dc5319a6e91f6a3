from __future__ import annotations

import logging
from collections.abc import Mapping
from dataclasses import dataclass, field
from enum import IntEnum
from typing import Any, TextIO

from pykoszul.algebra_objects.configurations import Configurations
from pykoszul.algebra_objects.errors import (
    BoundExhaustedError,
    HypothesisError,
    JobParseError,
    KoszulError,
    UnknownJobError,
    ValidationError,
)
from pykoszul.documents import parse_job
from pykoszul.reports import ReportDumper

logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    OK = 0
    USAGE = 1
    VALIDATION = 2
    HYPOTHESIS = 3
    BOUND = 4
    INTERNAL = 5


def classify(error: KoszulError) -> tuple[str, ExitCode]:
    if isinstance(error, JobParseError):
        return "parse", ExitCode.USAGE
    elif isinstance(error, UnknownJobError):
        return "usage", ExitCode.USAGE
    elif isinstance(error, ValidationError):
        return "validation", ExitCode.VALIDATION
    elif isinstance(error, HypothesisError):
        return "hypothesis", ExitCode.HYPOTHESIS
    elif isinstance(error, BoundExhaustedError):
        return "bound", ExitCode.BOUND
    return "error", ExitCode.USAGE


@dataclass
class JobRunner:
    writer: TextIO
    configurations: Configurations = field(default_factory=Configurations)
    overrides: Mapping[str, Any] = field(default_factory=dict)

    def dumper(self) -> ReportDumper:
        return ReportDumper(self.writer, self.configurations.character_convention)

    def run(self, text: str) -> ExitCode:
        try:
            job = parse_job(text, self.configurations, self.overrides)
            logger.info("dispatching %s", type(job).__name__)
            report = job.execute()
        except KoszulError as e:
            kind, code = classify(e)
            logger.info("job failed with %s error: %s", kind, e.message)
            self.dumper().dump_error(kind, e.message, self.configurations.output_format)
            return code
        except Exception as e:
            return self.internal_error(e)

        try:
            self.dumper().dump(report, self.configurations.output_format)
        except Exception as e:
            return self.internal_error(e)
        logger.info("%s done", report.command)
        return ExitCode.OK

    def internal_error(self, error: Exception) -> ExitCode:
        logger.exception("internal error")
        self.dumper().dump_error("internal", f"{type(error).__name__}: {error}", self.configurations.output_format)
        return ExitCode.INTERNAL
