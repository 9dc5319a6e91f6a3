from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Self

Rational = Fraction
Vector = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_rational(value: int | str | Fraction) -> Fraction:
    return value if isinstance(value, Fraction) else Fraction(value)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple[Vector, ...] = field(repr=False)

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ValueError(f"entry count does not match shape {self.rows}x{self.cols}")

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Self:
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, size: int) -> Self:
        return cls(size, size, tuple(tuple(ONE if i == j else ZERO for j in range(size)) for i in range(size)))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int | Fraction]], cols: int | None = None) -> Self:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, tuple(tuple(to_rational(value) for value in row) for row in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int | Fraction]], rows: int) -> Self:
        return cls(
            rows,
            len(columns),
            tuple(tuple(to_rational(column[i]) for column in columns) for i in range(rows)),
        )

    @classmethod
    def from_sparse(cls, rows: int, cols: int, values: dict[tuple[int, int], Fraction]) -> Self:
        dense = [[ZERO] * cols for _ in range(rows)]
        for (i, j), value in values.items():
            dense[i][j] = value
        return cls(rows, cols, tuple(tuple(row) for row in dense))

    def row(self, i: int) -> Vector:
        return self.entries[i]

    def column(self, j: int) -> Vector:
        return tuple(row[j] for row in self.entries)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def nonzero(self) -> list[list[tuple[int, Fraction]]]:
        return [[(j, value) for j, value in enumerate(row) if value] for row in self.entries]

    def is_zero(self) -> bool:
        return all(not value for row in self.entries for value in row)

    def transpose(self) -> Matrix:
        return Matrix(self.cols, self.rows, tuple(self.column(j) for j in range(self.cols)))

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        other_nonzero = other.nonzero()
        product = []
        for row in self.nonzero():
            accumulated = [ZERO] * other.cols
            for k, left in row:
                for j, right in other_nonzero[k]:
                    accumulated[j] += left * right
            product.append(tuple(accumulated))
        return Matrix(self.rows, other.cols, tuple(product))

    def __add__(self, other: Matrix) -> Matrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return Matrix(
            self.rows,
            self.cols,
            tuple(tuple(a + b for a, b in zip(left, right)) for left, right in zip(self.entries, other.entries)),
        )

    def __neg__(self) -> Matrix:
        return self.scale(-ONE)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def scale(self, factor: Fraction | int) -> Matrix:
        return Matrix(self.rows, self.cols, tuple(tuple(value * factor for value in row) for row in self.entries))

    def apply(self, vector: Sequence[Fraction]) -> Vector:
        return tuple(sum((value * vector[j] for j, value in row), ZERO) for row in self.nonzero())

    def select_rows(self, indices: Sequence[int]) -> Matrix:
        return Matrix(len(indices), self.cols, tuple(self.entries[i] for i in indices))

    def select_columns(self, indices: Sequence[int]) -> Matrix:
        return Matrix(self.rows, len(indices), tuple(tuple(row[j] for j in indices) for row in self.entries))

    def rank(self) -> int:
        return rref(self).rank


def kron(left: Matrix, right: Matrix) -> Matrix:
    values: dict[tuple[int, int], Fraction] = {}
    right_nonzero = right.nonzero()
    for i, row in enumerate(left.nonzero()):
        for j, a in row:
            for k, right_row in enumerate(right_nonzero):
                for m, b in right_row:
                    values[i * right.rows + k, j * right.cols + m] = a * b
    return Matrix.from_sparse(left.rows * right.rows, left.cols * right.cols, values)


def hstack(matrices: Sequence[Matrix], rows: int) -> Matrix:
    if any(matrix.rows != rows for matrix in matrices):
        raise ValueError("row count mismatch")
    cols = sum(matrix.cols for matrix in matrices)
    return Matrix(rows, cols, tuple(sum((matrix.entries[i] for matrix in matrices), ()) for i in range(rows)))


def vstack(matrices: Sequence[Matrix], cols: int) -> Matrix:
    if any(matrix.cols != cols for matrix in matrices):
        raise ValueError("column count mismatch")
    return Matrix(sum(matrix.rows for matrix in matrices), cols, sum((matrix.entries for matrix in matrices), ()))


def block_matrix(blocks: Sequence[Sequence[Matrix]], row_sizes: Sequence[int], col_sizes: Sequence[int]) -> Matrix:
    return vstack(
        [hstack(row_blocks, rows) for row_blocks, rows in zip(blocks, row_sizes)],
        sum(col_sizes),
    )


@dataclass(frozen=True)
class RowEchelon:
    """Reduced row echelon form of a matrix over the rationals.

    ``rows`` holds the nonzero reduced rows, ``pivot_columns[i]`` the pivot of ``rows[i]``. Kernel vectors are
    indexed by the free columns: the vector of free column ``f`` has a one at ``f``, zeros at every other free
    column and ``-rows[i][f]`` at ``pivot_columns[i]``.
    """

    cols: int
    pivot_columns: tuple[int, ...]
    rows: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return len(self.pivot_columns)

    @property
    def free_columns(self) -> tuple[int, ...]:
        pivots = set(self.pivot_columns)
        return tuple(column for column in range(self.cols) if column not in pivots)

    @property
    def kernel_basis(self) -> tuple[Vector, ...]:
        basis = []
        for free in self.free_columns:
            vector = [ZERO] * self.cols
            vector[free] = ONE
            for row, pivot in zip(self.rows, self.pivot_columns):
                vector[pivot] = -row[free]
            basis.append(tuple(vector))
        return tuple(basis)

    def kernel_matrix(self) -> Matrix:
        return Matrix.from_columns(self.kernel_basis, self.cols)

    def reduce(self, vector: Sequence[Fraction]) -> Vector:
        reduced = list(vector)
        for row, pivot in zip(self.rows, self.pivot_columns):
            factor = reduced[pivot]
            if factor:
                for j, value in enumerate(row):
                    if value:
                        reduced[j] -= factor * value
        return tuple(reduced)

    def contains(self, vector: Sequence[Fraction]) -> bool:
        return not any(self.reduce(vector))


def _rref_rows(rows: Iterable[dict[int, Fraction]], cols: int) -> tuple[list[int], list[dict[int, Fraction]]]:
    pending = [row for row in rows if row]
    pivots: list[int] = []
    reduced: list[dict[int, Fraction]] = []
    for column in range(cols):
        index = next((i for i, row in enumerate(pending) if row.get(column)), None)
        if index is None:
            continue
        pivot_row = pending.pop(index)
        inverse = ONE / pivot_row[column]
        pivot_row = {j: value * inverse for j, value in pivot_row.items()}
        for row in [*pending, *reduced]:
            factor = row.get(column)
            if not factor:
                continue
            for j, value in pivot_row.items():
                updated = row.get(j, ZERO) - factor * value
                if updated:
                    row[j] = updated
                else:
                    row.pop(j, None)
        pending = [row for row in pending if row]
        pivots.append(column)
        reduced.append(pivot_row)
        if not pending:
            break
    return pivots, reduced


def rref(matrix: Matrix) -> RowEchelon:
    pivots, reduced = _rref_rows(({j: value for j, value in row} for row in matrix.nonzero()), matrix.cols)
    return RowEchelon(
        matrix.cols,
        tuple(pivots),
        tuple(tuple(row.get(j, ZERO) for j in range(matrix.cols)) for row in reduced),
    )


def kernel(matrix: Matrix) -> tuple[Vector, ...]:
    return rref(matrix).kernel_basis


def solve(matrix: Matrix, vector: Sequence[Fraction]) -> Vector:
    """The coefficients c with ``matrix @ c = vector``, for a matrix with independent columns."""
    augmented = Matrix.from_columns([*matrix.columns(), tuple(vector)], matrix.rows)
    for candidate in rref(augmented).kernel_basis:
        if candidate[-1]:
            return tuple(-value / candidate[-1] for value in candidate[:-1])
    raise ValueError("vector does not lie in the column span")


def span(vectors: Sequence[Sequence[Fraction]], dimension: int) -> RowEchelon:
    """Echelon form of the row space spanned by ``vectors`` inside a space of the given dimension."""
    rows = ({j: value for j, value in enumerate(vector) if value} for vector in vectors)
    pivots, reduced = _rref_rows(rows, dimension)
    return RowEchelon(
        dimension,
        tuple(pivots),
        tuple(tuple(row.get(j, ZERO) for j in range(dimension)) for row in reduced),
    )


@dataclass(frozen=True)
class Subspace:
    """A subspace given by a basis whose restriction to ``coordinate_columns`` is the identity."""

    dimension: int
    basis: tuple[Vector, ...]
    coordinate_columns: tuple[int, ...]

    @classmethod
    def kernel_of(cls, matrix: Matrix) -> Self:
        echelon = rref(matrix)
        return cls(matrix.cols, echelon.kernel_basis, echelon.free_columns)

    @classmethod
    def whole(cls, dimension: int) -> Self:
        return cls(dimension, Matrix.identity(dimension).entries, tuple(range(dimension)))

    @property
    def rank(self) -> int:
        return len(self.basis)

    def inclusion(self) -> Matrix:
        return Matrix.from_columns(self.basis, self.dimension)

    def coordinates(self, vector: Sequence[Fraction]) -> Vector:
        coordinates = tuple(vector[column] for column in self.coordinate_columns)
        rebuilt = [ZERO] * self.dimension
        for coefficient, basis_vector in zip(coordinates, self.basis):
            if coefficient:
                for j, value in enumerate(basis_vector):
                    if value:
                        rebuilt[j] += coefficient * value
        if tuple(rebuilt) != tuple(vector):
            raise ValueError("vector does not lie in the subspace")
        return coordinates


def unit_vector(size: int, index: int) -> Vector:
    return tuple(ONE if i == index else ZERO for i in range(size))
