from __future__ import annotations

from collections import defaultdict
from collections.abc import Callable
from dataclasses import dataclass
from typing import TYPE_CHECKING, Any, ClassVar

from pykoszul.algebra_objects.errors import UnknownJobError, ValidationError
from pykoszul.jobs.parsers import job

if TYPE_CHECKING:
    from pykoszul.algebra_objects.configurations import Configurations
    from pykoszul.jobs.core import Job


@dataclass
class JobsRouter:
    ROUTES: ClassVar[dict[str, type[Job]]] = {}
    CATEGORIES: ClassVar[defaultdict[str, set[str]]] = defaultdict(set)
    NAMES: ClassVar[dict[type[Job], str]] = {}

    def internal_route(self, document: dict[str, Any]) -> type[Job]:
        if "command" not in document:
            raise ValidationError("command required")

        command = document.pop("command")
        if not isinstance(command, str):
            raise ValidationError("command must be a string")

        if command.lower() not in self.ROUTES:
            raise UnknownJobError(command)

        return self.ROUTES[command.lower()]

    def route(self, document: dict[str, Any], configurations: Configurations) -> Job:
        document = dict(document)
        routed_job: type[Job] = self.internal_route(document)

        return routed_job.create(document, configurations)

    @classmethod
    def job(cls, name: str, categories: list[str]) -> Callable[[type[Job]], type[Job]]:
        def _job_wrapper(job_cls: type[Job]) -> type[Job]:
            job_cls = job(job_cls)

            if not categories:
                raise TypeError("job must have at least one category")

            if name in cls.ROUTES:
                raise TypeError(f"job {name} registered twice")

            for category in categories:
                cls.CATEGORIES[category].add(name)

            job_cls.NAME = name
            cls.NAMES[job_cls] = name
            cls.ROUTES[name] = job_cls

            return job_cls

        return _job_wrapper
