from dataclasses import dataclass
from typing import Any, ClassVar, Self

from pykoszul.algebra_objects.configurations import Configurations
from pykoszul.jobs.dependencies import job_dependency
from pykoszul.reports import Report


@dataclass
class Job:
    NAME: ClassVar[str] = ""

    def execute(self) -> Report:
        raise NotImplementedError()

    @staticmethod
    def parse(document: dict[str, Any], strict: bool = True) -> dict[str, Any]:
        raise NotImplementedError()

    @staticmethod
    def render(job: "Job") -> dict[str, Any]:
        raise NotImplementedError()

    @classmethod
    def create(cls, document: dict[str, Any], configurations: Configurations) -> Self:
        raise NotImplementedError()


@dataclass
class ConfiguredJob(Job):
    configurations: Configurations = job_dependency()

    def execute(self) -> Report:
        raise NotImplementedError()

    def report(self, **fields: Any) -> Report:  # noqa: ANN401
        return Report(self.NAME, dict(fields))
