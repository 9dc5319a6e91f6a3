from __future__ import annotations

from collections.abc import Callable
from dataclasses import Field, dataclass, fields
from enum import Enum, auto
from typing import TYPE_CHECKING, Any, Self, get_type_hints

from pykoszul.algebra_objects.configurations import Configurations

if TYPE_CHECKING:
    from pykoszul.jobs.core import Job


class DependencyMetadata(Enum):
    DEPENDENCY = auto()


@dataclass
class JobCreator:
    job_cls: type[Job]
    job_creator: Callable[..., Job]
    dependencies: list[Field]
    dependencies_types: list[Any]

    def __call__(self, document: dict[str, Any], configurations: Configurations) -> Job:
        job_kwargs = self.job_cls.parse(document, strict=configurations.strict)

        for job_dependency, job_dependency_type in zip(self.dependencies, self.dependencies_types):
            if job_dependency_type == Configurations:
                job_kwargs[job_dependency.name] = configurations
            else:
                raise TypeError(job_dependency_type)

        return self.job_creator(**job_kwargs)

    @classmethod
    def create(cls, job_cls: type[Job]) -> Self:
        field_types = get_type_hints(job_cls)

        job_dependencies = []
        job_dependencies_types = []
        for job_dependency in fields(job_cls):
            if not job_dependency.metadata.get(DependencyMetadata.DEPENDENCY):
                continue

            job_dependencies.append(job_dependency)
            job_dependencies_types.append(field_types[job_dependency.name])

        return cls(job_cls, job_cls, job_dependencies, job_dependencies_types)
