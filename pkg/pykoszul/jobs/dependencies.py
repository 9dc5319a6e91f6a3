from dataclasses import field
from typing import Any

from pykoszul.jobs.creators import DependencyMetadata


def job_dependency() -> Any:  # noqa: ANN401
    return field(metadata={DependencyMetadata.DEPENDENCY: True}, repr=False, compare=False, kw_only=True)
