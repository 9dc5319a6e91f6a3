from dataclasses import Field, dataclass, field, fields
from typing import Any, Literal

from pykoszul.algebra_objects.errors import ValidationError

ConfigurationType = Literal["string", "integer", "window", "boolean", "choice"]

Window = tuple[int, int]


def configuration(
    default: int | str | Window | bool | None, type_: ConfigurationType = "string", choices: tuple[str, ...] = ()
) -> Any:  # noqa:ANN401
    return field(
        default=default,
        metadata={
            "type": type_,
            "choices": choices,
        },
    )


def parse_window(value: str | list[int] | tuple[int, ...]) -> Window:
    if isinstance(value, list | tuple):
        if len(value) != 2 or not all(isinstance(item, int) and not isinstance(item, bool) for item in value):
            raise ValidationError(f"window must be a pair of integers, got {list(value)}")
        value = f"{value[0]}..{value[1]}"
    low, separator, high = value.partition("..")
    if not separator:
        raise ValidationError(f"window must look like a..b, got '{value}'")
    try:
        window = int(low), int(high)
    except ValueError:
        raise ValidationError(f"window must look like a..b, got '{value}'")
    if window[0] > window[1]:
        raise ValidationError(f"empty window {value}")
    return window


def format_window(window: Window) -> str:
    return f"{window[0]}..{window[1]}"


@dataclass
class Configurations:
    output_format: str = configuration(default="human", type_="choice", choices=("human", "machine"))
    window: Window = configuration(default=(0, 8), type_="window")
    max_m: int = configuration(default=4, type_="integer")
    max_degree: int = configuration(default=6, type_="integer")
    character_convention: str = configuration(default="chi", type_="choice", choices=("chi", "minus-chi"))
    n0: int = configuration(default=0, type_="integer")
    strict: bool = configuration(default=True, type_="boolean")
    resolution_slack: int | None = configuration(default=None, type_="integer")

    @classmethod
    def _field(cls, name: str) -> Field:
        try:
            return cls.__dataclass_fields__[name.replace("-", "_")]
        except KeyError:
            raise ValidationError(f"unknown option '{name}'")

    @classmethod
    def get_type(cls, name: str) -> str:
        return cls._field(name).metadata["type"]

    @classmethod
    def get_names(cls) -> list[str]:
        return [f.name.replace("_", "-") for f in fields(cls)]

    def set_values(self, name: str, value: str | int | bool | list[int]) -> None:
        a_field = self._field(name)
        field_type = a_field.metadata["type"]

        if field_type == "integer":
            if isinstance(value, bool | float):
                raise ValidationError(f"option '{name}' must be an integer")
            try:
                converted: Any = int(value)
            except (TypeError, ValueError):
                raise ValidationError(f"option '{name}' must be an integer")
            if converted < 0:
                raise ValidationError(f"option '{name}' must be nonnegative")
        elif field_type == "window":
            converted = parse_window(value if isinstance(value, list | tuple) else str(value))
        elif field_type == "boolean":
            if isinstance(value, bool):
                converted = value
            elif str(value).lower() in ("yes", "true", "1"):
                converted = True
            elif str(value).lower() in ("no", "false", "0"):
                converted = False
            else:
                raise ValidationError(f"option '{name}' must be yes or no")
        elif field_type == "choice":
            if value not in a_field.metadata["choices"]:
                raise ValidationError(f"option '{name}' must be one of {', '.join(a_field.metadata['choices'])}")
            converted = value
        else:
            converted = str(value)

        setattr(self, a_field.name, converted)

    def info(self) -> dict[str, str]:
        values = {}
        for f in fields(self):
            value = getattr(self, f.name)
            if f.metadata["type"] == "window":
                value = format_window(value)
            elif f.metadata["type"] == "boolean":
                value = "yes" if value else "no"
            values[f.name.replace("_", "-")] = "" if value is None else str(value)
        return values
