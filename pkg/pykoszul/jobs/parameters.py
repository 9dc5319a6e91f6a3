from __future__ import annotations

from dataclasses import MISSING, field
from enum import Enum, auto
from typing import Any


class ParameterMetadata(Enum):
    JOB_PARAMETER = auto()
    KEY = auto()
    VALUES_MAPPING = auto()
    NONNEGATIVE = auto()


def job_parameter(
    key: str | None = None,
    values_mapping: dict[str, Any] | None = None,
    default: Any = MISSING,  # noqa: ANN401
    default_factory: Any = MISSING,  # noqa: ANN401
    nonnegative: bool = False,
) -> Any:  # noqa: ANN401
    metadata: dict[ParameterMetadata, Any] = {ParameterMetadata.JOB_PARAMETER: True}
    if key is not None:
        metadata[ParameterMetadata.KEY] = key
    if values_mapping:
        metadata[ParameterMetadata.VALUES_MAPPING] = values_mapping
    if nonnegative:
        metadata[ParameterMetadata.NONNEGATIVE] = True
    optional = default is not MISSING or default_factory is not MISSING
    return field(default=default, default_factory=default_factory, metadata=metadata, kw_only=optional)


def positional_parameter(
    key: str | None = None,
    values_mapping: dict[str, Any] | None = None,
    nonnegative: bool = False,
) -> Any:  # noqa: ANN401
    return job_parameter(key=key, values_mapping=values_mapping, nonnegative=nonnegative)


def keyword_parameter(
    key: str | None = None,
    values_mapping: dict[str, Any] | None = None,
    default: Any = MISSING,  # noqa: ANN401
    default_factory: Any = MISSING,  # noqa: ANN401
    nonnegative: bool = False,
) -> Any:  # noqa: ANN401
    if default is MISSING and default_factory is MISSING:
        default = None
    return job_parameter(
        key=key,
        values_mapping=values_mapping,
        default=default,
        default_factory=default_factory,
        nonnegative=nonnegative,
    )
