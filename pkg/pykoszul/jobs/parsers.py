from __future__ import annotations

import logging
from dataclasses import MISSING, Field, dataclass, fields, is_dataclass
from enum import Enum
from types import UnionType
from typing import TYPE_CHECKING, Any, Self, Union, get_args, get_origin, get_type_hints

from pykoszul.algebra_objects.errors import ValidationError
from pykoszul.jobs.creators import JobCreator
from pykoszul.jobs.parameters import ParameterMetadata

if TYPE_CHECKING:
    from pykoszul.jobs.core import Job

logger = logging.getLogger(__name__)


class ParameterParser:
    def parse(self, value: Any, name: str) -> Any:  # noqa: ANN401
        return value

    def render(self, value: Any) -> Any:  # noqa: ANN401
        return value

    @classmethod
    def _extract_optional_type(cls, parameter_type: Any) -> Any:  # noqa: ANN401
        if get_origin(parameter_type) == Union or get_origin(parameter_type) == UnionType:
            args = get_args(parameter_type)
            items = set([arg for arg in args if arg is not type(None)])
            if len(items) > 1:
                raise TypeError(items)
            parameter_type = items.pop()
        return parameter_type

    @classmethod
    def create(cls, parameter_field: Field, parameter_type: Any) -> ParameterParser:  # noqa: ANN401
        values_mapping = parameter_field.metadata.get(ParameterMetadata.VALUES_MAPPING)
        if values_mapping:
            return MappingParameterParser(values_mapping)
        return cls.create_from_type(parameter_type, parameter_field.metadata.get(ParameterMetadata.NONNEGATIVE, False))

    @classmethod
    def create_from_type(cls, parameter_type: Any, nonnegative: bool = False) -> ParameterParser:  # noqa: ANN401
        parameter_type = cls._extract_optional_type(parameter_type)

        if isinstance(parameter_type, type) and issubclass(parameter_type, Enum):
            return EnumParameterParser(parameter_type)

        if is_dataclass(parameter_type):
            return ObjectParser.create_from_object(parameter_type)

        match parameter_type():
            case bool():
                return BoolParameterParser()
            case int():
                return IntParameterParser(nonnegative)
            case str():
                return StringParameterParser()
            case list():
                return ListParameterParser(cls.create_from_type(get_args(parameter_type)[0], nonnegative))
            case tuple():
                return TupleParameterParser.create_from_tuple_types(get_args(parameter_type), nonnegative)
            case default:
                raise TypeError(default)


@dataclass
class IntParameterParser(ParameterParser):
    nonnegative: bool = False

    def parse(self, value: Any, name: str) -> int:  # noqa: ANN401
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(f"{name} must be an integer")
        if self.nonnegative and value < 0:
            raise ValidationError(f"{name} must be nonnegative")
        return value


class StringParameterParser(ParameterParser):
    def parse(self, value: Any, name: str) -> str:  # noqa: ANN401
        if isinstance(value, bool) or not isinstance(value, str | int):
            raise ValidationError(f"{name} must be a string")
        return str(value)


class BoolParameterParser(ParameterParser):
    def parse(self, value: Any, name: str) -> bool:  # noqa: ANN401
        if not isinstance(value, bool):
            raise ValidationError(f"{name} must be true or false")
        return value


@dataclass
class EnumParameterParser(ParameterParser):
    enum_cls: type[Enum]

    def parse(self, value: Any, name: str) -> Enum:  # noqa: ANN401
        try:
            return self.enum_cls(value)
        except ValueError as e:
            choices = ", ".join(str(member.value) for member in self.enum_cls)
            raise ValidationError(f"{name} must be one of {choices}") from e

    def render(self, value: Enum) -> Any:  # noqa: ANN401
        return value.value


@dataclass
class MappingParameterParser(ParameterParser):
    values_mapping: dict[str, Any]

    def parse(self, value: Any, name: str) -> Any:  # noqa: ANN401
        if value not in self.values_mapping:
            raise ValidationError(f"{name} must be one of {', '.join(self.values_mapping)}")
        return self.values_mapping[value]

    def render(self, value: Any) -> Any:  # noqa: ANN401
        for key, mapped in self.values_mapping.items():
            if mapped == value:
                return key
        raise ValueError(value)


@dataclass
class ListParameterParser(ParameterParser):
    parameter_parser: ParameterParser

    def parse(self, value: Any, name: str) -> list:  # noqa: ANN401
        if not isinstance(value, list):
            raise ValidationError(f"{name} must be an array")
        return [self.parameter_parser.parse(item, f"{name}[{index}]") for index, item in enumerate(value)]

    def render(self, value: list) -> list:
        return [self.parameter_parser.render(item) for item in value]


@dataclass
class TupleParameterParser(ParameterParser):
    parameter_parser_tuple: tuple[ParameterParser, ...]

    def parse(self, value: Any, name: str) -> tuple:  # noqa: ANN401
        if not isinstance(value, list) or len(value) != len(self.parameter_parser_tuple):
            raise ValidationError(f"{name} must be an array of {len(self.parameter_parser_tuple)} items")
        return tuple(
            parameter_parser.parse(item, f"{name}[{index}]")
            for index, (parameter_parser, item) in enumerate(zip(self.parameter_parser_tuple, value))
        )

    def render(self, value: tuple) -> list:
        return [parameter_parser.render(item) for parameter_parser, item in zip(self.parameter_parser_tuple, value)]

    @classmethod
    def create_from_tuple_types(cls, tuple_types: tuple[Any, ...], nonnegative: bool = False) -> Self:
        return cls(tuple(ParameterParser.create_from_type(arg, nonnegative) for arg in tuple_types))


@dataclass
class NamedParameterParser(ParameterParser):
    name: str
    key: str
    parameter_parser: ParameterParser
    default: Any = MISSING

    @property
    def is_optional(self) -> bool:
        return self.default is not MISSING

    def parse(self, value: Any, name: str) -> dict[str, Any]:  # noqa: ANN401
        return {self.name: self.parameter_parser.parse(value, name)}


@dataclass
class ObjectParametersParser(ParameterParser):
    parameters_parsers: list[NamedParameterParser]

    def parse(self, value: Any, name: str = "", strict: bool = True) -> dict[str, Any]:  # noqa: ANN401
        if not isinstance(value, dict):
            raise ValidationError(f"{name} must be a table")
        prefix = f"{name}." if name else ""

        known_keys = {parameter_parser.key for parameter_parser in self.parameters_parsers}
        for key in value:
            if key in known_keys:
                continue
            if strict:
                raise ValidationError(f"unknown key '{prefix}{key}'")
            logger.warning("ignoring unknown key '%s%s'", prefix, key)

        parsed_parameters: dict[str, Any] = {}
        for parameter_parser in self.parameters_parsers:
            if parameter_parser.key not in value:
                if not parameter_parser.is_optional:
                    raise ValidationError(f"{prefix}{parameter_parser.key} required")
                continue
            parsed_parameters.update(parameter_parser.parse(value[parameter_parser.key], prefix + parameter_parser.key))

        return parsed_parameters

    def __call__(self, document: dict[str, Any], strict: bool = True) -> dict[str, Any]:
        return self.parse(document, strict=strict)

    def render(self, value: Any) -> dict[str, Any]:  # noqa: ANN401
        rendered = {}
        for parameter_parser in self.parameters_parsers:
            parameter_value = getattr(value, parameter_parser.name)
            if parameter_value is None:
                continue
            rendered[parameter_parser.key] = parameter_parser.parameter_parser.render(parameter_value)
        return rendered

    @classmethod
    def create_from_object(cls, object_cls: Any) -> Self:  # noqa: ANN401
        resolved_hints = get_type_hints(object_cls)

        parameters_parsers = []
        for parameter_field in fields(object_cls):
            if not parameter_field.metadata.get(ParameterMetadata.JOB_PARAMETER):
                continue

            default = parameter_field.default
            if parameter_field.default_factory is not MISSING:
                default = parameter_field.default_factory()

            parameters_parsers.append(
                NamedParameterParser(
                    parameter_field.name,
                    parameter_field.metadata.get(ParameterMetadata.KEY, parameter_field.name),
                    ParameterParser.create(parameter_field, resolved_hints[parameter_field.name]),
                    default,
                )
            )

        return cls(parameters_parsers)


@dataclass
class ObjectParser(ParameterParser):
    object_cls: Any
    object_parameters_parser: ObjectParametersParser

    def parse(self, value: Any, name: str) -> Any:  # noqa: ANN401
        return self.object_cls(**self.object_parameters_parser.parse(value, name))

    def render(self, value: Any) -> dict[str, Any]:  # noqa: ANN401
        return self.object_parameters_parser.render(value)

    @classmethod
    def create_from_object(cls, object_cls: Any) -> Self:  # noqa: ANN401
        return cls(object_cls, ObjectParametersParser.create_from_object(object_cls))


def job_document(object_cls: Any) -> Any:  # noqa: ANN401
    """Turns a class with parameter fields into a dataclass usable as a nested table of a job document."""
    return dataclass(frozen=True)(object_cls)


def job(job_cls: type[Job]) -> type[Job]:
    job_cls = dataclass(job_cls)

    parser = ObjectParametersParser.create_from_object(job_cls)
    setattr(job_cls, "parse", parser)
    setattr(job_cls, "render", staticmethod(parser.render))
    setattr(job_cls, "create", JobCreator.create(job_cls))

    return job_cls
