from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, TextIO

from pykoszul.algebra_objects.monomials import Character

ReportValue = bool | int | str | Fraction | Character | list | tuple | dict | None


@dataclass
class Table:
    title: str
    columns: list[str]
    rows: list[list[ReportValue]] = field(default_factory=list)

    def add(self, *row: ReportValue) -> None:
        if len(row) != len(self.columns):
            raise ValueError(f"row has {len(row)} cells, table {self.title} has {len(self.columns)} columns")
        self.rows.append(list(row))


@dataclass
class Report:
    command: str
    fields: dict[str, ReportValue] = field(default_factory=dict)
    tables: list[Table] = field(default_factory=list)
    verdict: str | None = None

    def add_table(self, title: str, columns: list[str]) -> Table:
        table = Table(title, columns)
        self.tables.append(table)
        return table


@dataclass
class ReportDumper:
    writer: TextIO
    character_convention: str = "chi"

    def convert(self, value: ReportValue) -> Any:  # noqa: ANN401
        if isinstance(value, bool):
            return value
        elif isinstance(value, int):
            return value
        elif isinstance(value, Fraction):
            return value.numerator if value.denominator == 1 else str(value)
        elif isinstance(value, Character):
            if self.character_convention == "minus-chi":
                value = -value
            return list(value.residues)
        elif isinstance(value, str):
            return value
        elif isinstance(value, list | tuple):
            return [self.convert(item) for item in value]
        elif isinstance(value, dict):
            return {self.format_key(key): self.convert(item) for key, item in value.items()}
        elif value is None:
            return None
        raise TypeError(value)

    def format_key(self, key: Any) -> str:  # noqa: ANN401
        if isinstance(key, str):
            return key
        if isinstance(key, tuple | list | Character):
            return ",".join(str(item) for item in self._flatten(self.convert(key)))
        return str(self.convert(key))

    @classmethod
    def _flatten(cls, value: Any) -> list:  # noqa: ANN401
        if isinstance(value, list):
            return [item for element in value for item in cls._flatten(element)]
        return [value]

    def format_cell(self, value: ReportValue) -> str:
        converted = self.convert(value)
        if isinstance(converted, bool):
            return "yes" if converted else "no"
        if converted is None:
            return "-"
        if isinstance(converted, list):
            return "(" + ",".join(self.format_cell(item) for item in converted) + ")"
        if isinstance(converted, dict):
            return "{" + ", ".join(f"{key}: {self.format_cell(item)}" for key, item in converted.items()) + "}"
        return str(converted)

    def dump_machine(self, report: Report) -> None:
        document: dict[str, Any] = {"command": report.command}
        document.update((key, self.convert(value)) for key, value in report.fields.items())
        if report.tables:
            document["tables"] = [
                {"title": table.title, "columns": table.columns, "rows": self.convert(table.rows)}
                for table in report.tables
            ]
        if report.verdict is not None:
            document["verdict"] = report.verdict
        self.writer.write(json.dumps(document, ensure_ascii=False, indent=2) + "\n")

    def dump_table(self, table: Table) -> None:
        cells = [table.columns] + [[self.format_cell(cell) for cell in row] for row in table.rows]
        widths = [max(len(row[column]) for row in cells) for column in range(len(table.columns))]
        self.writer.write(f"{table.title}\n")
        for row in cells:
            self.writer.write("  ".join(cell.rjust(width) for cell, width in zip(row, widths)).rstrip() + "\n")

    def dump_human(self, report: Report) -> None:
        self.writer.write(f"{report.command}\n")
        if report.fields:
            width = max(len(key) for key in report.fields)
            for key, value in report.fields.items():
                self.writer.write(f"  {key.ljust(width)}  {self.format_cell(value)}\n")
        for table in report.tables:
            self.writer.write("\n")
            self.dump_table(table)
        if report.verdict is not None:
            self.writer.write(f"\n{report.verdict}\n")

    def dump(self, report: Report, output_format: str = "human") -> None:
        if output_format == "machine":
            self.dump_machine(report)
        else:
            self.dump_human(report)

    def dump_error(self, kind: str, message: str, output_format: str = "human") -> None:
        if output_format == "machine":
            self.writer.write(json.dumps({"error": kind, "message": message}, ensure_ascii=False, indent=2) + "\n")
        else:
            self.writer.write(f"error: {kind}: {message}\n")


def dump(report: Report, stream: TextIO, output_format: str = "human", character_convention: str = "chi") -> None:
    ReportDumper(stream, character_convention).dump(report, output_format)
