from __future__ import annotations

import json
import re
import tomllib
from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any

from pykoszul.algebra_objects.configurations import Configurations
from pykoszul.algebra_objects.errors import JobParseError, ValidationError
from pykoszul.jobs.core import Job
from pykoszul.jobs.router import JobsRouter

_POSITION = re.compile(r"\s*\(at line (\d+), column (\d+)\)")
_BARE_KEY = re.compile(r"^[A-Za-z0-9_-]+$")


def load_document(text: str) -> dict[str, Any]:
    try:
        return tomllib.loads(text)
    except tomllib.TOMLDecodeError as e:
        match = _POSITION.search(str(e))
        message = _POSITION.sub("", str(e))
        if match is None:
            raise JobParseError(message) from e
        raise JobParseError(message, int(match[1]), int(match[2])) from e


def apply_options(configurations: Configurations, options: Mapping[str, Any]) -> None:
    for name, value in options.items():
        configurations.set_values(name, value)


def parse_job(
    text: str, configurations: Configurations | None = None, overrides: Mapping[str, Any] | None = None
) -> Job:
    """Loads a job document; the ``[options]`` table feeds the configurations, ``overrides`` win over it."""
    if configurations is None:
        configurations = Configurations()
    document = load_document(text)

    options = document.pop("options", {})
    if not isinstance(options, dict):
        raise ValidationError("options must be a table")
    apply_options(configurations, options)
    apply_options(configurations, overrides or {})

    return JobsRouter().route(document, configurations)


@dataclass
class TomlDumper:
    lines: list[str] = field(default_factory=list)

    def dump_key(self, key: str) -> str:
        return key if _BARE_KEY.match(key) else json.dumps(key, ensure_ascii=False)

    def dump_value(self, value: Any) -> str:  # noqa: ANN401
        if isinstance(value, bool):
            return "true" if value else "false"
        elif isinstance(value, int):
            return str(value)
        elif isinstance(value, str):
            return json.dumps(value, ensure_ascii=False)
        elif isinstance(value, list | tuple):
            return "[" + ", ".join(self.dump_value(item) for item in value) + "]"
        elif isinstance(value, dict):
            if not value:
                return "{}"
            return "{ " + ", ".join(f"{self.dump_key(k)} = {self.dump_value(v)}" for k, v in value.items()) + " }"
        raise TypeError(value)

    def dump(self, document: Mapping[str, Any]) -> str:
        tables = {key: value for key, value in document.items() if isinstance(value, dict)}
        for key, value in document.items():
            if key not in tables:
                self.lines.append(f"{self.dump_key(key)} = {self.dump_value(value)}")
        for key, value in tables.items():
            self.lines.append("")
            self.lines.append(f"[{self.dump_key(key)}]")
            for inner_key, inner_value in value.items():
                self.lines.append(f"{self.dump_key(inner_key)} = {self.dump_value(inner_value)}")
        return "\n".join(self.lines) + "\n"


def render_job(job: Job) -> str:
    return TomlDumper().dump({"command": JobsRouter.NAMES[type(job)], **type(job).render(job)})
