from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field

from pykoszul.algebra_objects.errors import NotAComplexError
from pykoszul.algebra_objects.linear import Matrix

logger = logging.getLogger(__name__)

Degree = int | tuple[int, int]


@dataclass(frozen=True)
class StrandRow:
    position: int
    degree: Degree
    dimension: int
    image: int
    kernel: int
    character: tuple[int, ...] | None = None

    @property
    def exact(self) -> bool:
        return self.image == self.kernel


@dataclass(frozen=True)
class StrandReport:
    rows: tuple[StrandRow, ...] = ()
    n0: int = 0
    notes: tuple[str, ...] = field(default=())

    @property
    def first_failure(self) -> StrandRow | None:
        return next((row for row in self.rows if not row.exact), None)

    @property
    def passed(self) -> bool:
        return self.first_failure is None

    def __add__(self, other: StrandReport) -> StrandReport:
        return StrandReport(self.rows + other.rows, self.n0, self.notes + other.notes)

    @classmethod
    def merge(cls, reports: Sequence[StrandReport], n0: int = 0) -> StrandReport:
        return cls(
            tuple(row for report in reports for row in report.rows), n0, tuple(n for r in reports for n in r.notes)
        )


def certify_sequence(
    dimensions: Sequence[int],
    maps: Sequence[Matrix],
    degree: Degree,
    character: tuple[int, ...] | None = None,
    positions: Sequence[int] | None = None,
) -> tuple[StrandRow, ...]:
    """Exactness of V_0 -> V_1 -> ... -> V_s at every V_i, with zero spaces on both ends.

    ``maps[i]`` is the matrix of V_i -> V_{i+1}; ``positions[i]`` labels V_i in the rows (default i).
    """
    if positions is None:
        positions = range(len(dimensions))
    if len(maps) != len(dimensions) - 1:
        raise ValueError("a sequence of s+1 spaces needs s maps")
    for index, matrix in enumerate(maps):
        if (matrix.rows, matrix.cols) != (dimensions[index + 1], dimensions[index]):
            raise ValueError(f"map {index} has shape {matrix.rows}x{matrix.cols}")
    for index in range(len(maps) - 1):
        if not (maps[index + 1] @ maps[index]).is_zero():
            raise NotAComplexError(f"consecutive maps at position {positions[index + 1]} do not compose to zero")

    ranks = [matrix.rank() for matrix in maps]
    rows = []
    for index, dimension in enumerate(dimensions):
        image = ranks[index - 1] if index > 0 else 0
        kernel = dimension - (ranks[index] if index < len(maps) else 0)
        rows.append(StrandRow(positions[index], degree, dimension, image, kernel, character))
    logger.debug("strand %s %s: %s", degree, character, [(row.image, row.kernel) for row in rows])
    return tuple(rows)
