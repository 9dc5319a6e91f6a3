from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, Self

from sortedcontainers import SortedDict

from pykoszul.algebra_objects.linear import Matrix
from pykoszul.algebra_objects.monomials import Polynomial

if TYPE_CHECKING:
    from pykoszul.algebra_objects.graded import GradedAlgebra


@dataclass(frozen=True)
class PolynomialMatrix:
    rows: int
    cols: int
    variables: int
    entries: tuple[tuple[Polynomial, ...], ...] = field(repr=False)

    def __post_init__(self) -> None:
        if len(self.entries) != self.rows or any(len(row) != self.cols for row in self.entries):
            raise ValueError(f"entry count does not match shape {self.rows}x{self.cols}")

    @classmethod
    def zeros(cls, rows: int, cols: int, variables: int) -> Self:
        zero = Polynomial.zero(variables)
        return cls(rows, cols, variables, tuple((zero,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, size: int, variables: int) -> Self:
        one, zero = Polynomial.constant(1, variables), Polynomial.zero(variables)
        rows = tuple(tuple(one if i == j else zero for j in range(size)) for i in range(size))
        return cls(size, size, variables, rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Polynomial]], variables: int, cols: int | None = None) -> Self:
        if cols is None:
            cols = len(rows[0]) if rows else 0
        return cls(len(rows), cols, variables, tuple(tuple(row) for row in rows))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[Polynomial]], rows: int, variables: int) -> Self:
        return cls(rows, len(columns), variables, tuple(tuple(column[i] for column in columns) for i in range(rows)))

    @classmethod
    def from_function(cls, rows: int, cols: int, variables: int, entry: Callable[[int, int], Polynomial]) -> Self:
        return cls(rows, cols, variables, tuple(tuple(entry(i, j) for j in range(cols)) for i in range(rows)))

    def column(self, j: int) -> tuple[Polynomial, ...]:
        return tuple(row[j] for row in self.entries)

    def nonzero_entries(self) -> Iterator[tuple[int, int, Polynomial]]:
        for i, row in enumerate(self.entries):
            for j, entry in enumerate(row):
                if not entry.is_zero():
                    yield i, j, entry

    def is_zero(self) -> bool:
        return next(self.nonzero_entries(), None) is None

    def transpose(self) -> PolynomialMatrix:
        return PolynomialMatrix(
            self.cols, self.rows, self.variables, tuple(self.column(j) for j in range(self.cols))
        )

    def __matmul__(self, other: PolynomialMatrix) -> PolynomialMatrix:
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        zero = Polynomial.zero(self.variables)
        product = [[zero] * other.cols for _ in range(self.rows)]
        for i, k, left in self.nonzero_entries():
            for j, right in enumerate(other.entries[k]):
                if not right.is_zero():
                    product[i][j] = product[i][j] + left * right
        return PolynomialMatrix(self.rows, other.cols, self.variables, tuple(tuple(row) for row in product))

    def __add__(self, other: PolynomialMatrix) -> PolynomialMatrix:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return PolynomialMatrix.from_function(
            self.rows, self.cols, self.variables, lambda i, j: self.entries[i][j] + other.entries[i][j]
        )

    def __neg__(self) -> PolynomialMatrix:
        return self.scale(-1)

    def __sub__(self, other: PolynomialMatrix) -> PolynomialMatrix:
        return self + (-other)

    def scale(self, factor: Fraction | int) -> PolynomialMatrix:
        return PolynomialMatrix.from_function(
            self.rows, self.cols, self.variables, lambda i, j: self.entries[i][j].scale(factor)
        )


def block_polynomial_matrix(
    blocks: Sequence[Sequence[PolynomialMatrix | None]],
    row_sizes: Sequence[int],
    col_sizes: Sequence[int],
    variables: int,
) -> PolynomialMatrix:
    """Assembles a block matrix; ``None`` stands for a zero block."""
    zero = Polynomial.zero(variables)
    rows: list[tuple[Polynomial, ...]] = []
    for block_row, height in zip(blocks, row_sizes):
        for i in range(height):
            row: list[Polynomial] = []
            for block, width in zip(block_row, col_sizes):
                row.extend(block.entries[i] if block is not None else (zero,) * width)
            rows.append(tuple(row))
    return PolynomialMatrix(sum(row_sizes), sum(col_sizes), variables, tuple(rows))


@dataclass(frozen=True, eq=False)
class FreeComplex:
    """Bounded complex of graded free modules in homological indexing.

    ``terms[i]`` lists the generator degrees g of C_i = ⊕ A(-g); ``differentials[i]`` is the matrix of
    d_i: C_i -> C_{i-1} with rows indexed by the generators of C_{i-1}.
    """

    algebra: GradedAlgebra
    terms: SortedDict = field(default_factory=SortedDict)
    differentials: dict[int, PolynomialMatrix] = field(default_factory=dict)
    augmentation: PolynomialMatrix | None = None

    @classmethod
    def create(
        cls,
        algebra: GradedAlgebra,
        terms: dict[int, Sequence[int]],
        differentials: dict[int, PolynomialMatrix] | None = None,
        augmentation: PolynomialMatrix | None = None,
    ) -> Self:
        return cls(
            algebra,
            SortedDict({index: tuple(degrees) for index, degrees in terms.items() if degrees}),
            dict(differentials or {}),
            augmentation,
        )

    @classmethod
    def single(cls, algebra: GradedAlgebra, degrees: Sequence[int], index: int = 0) -> Self:
        return cls.create(algebra, {index: degrees})

    @property
    def variables(self) -> int:
        return self.algebra.weights.variables

    @property
    def is_empty(self) -> bool:
        return not self.terms

    @property
    def low(self) -> int:
        return self.terms.keys()[0] if self.terms else 0

    @property
    def high(self) -> int:
        return self.terms.keys()[-1] if self.terms else -1

    def indices(self) -> range:
        return range(self.low, self.high + 1)

    def term(self, index: int) -> tuple[int, ...]:
        return self.terms.get(index, ())

    def rank(self, index: int) -> int:
        return len(self.term(index))

    def differential(self, index: int) -> PolynomialMatrix:
        matrix = self.differentials.get(index)
        if matrix is None:
            return PolynomialMatrix.zeros(self.rank(index - 1), self.rank(index), self.variables)
        return matrix

    def strand_dimension(self, index: int, degree: int) -> int:
        return self.algebra.free_piece_dimension(self.term(index), degree)

    def strand_map(self, index: int, degree: int) -> Matrix:
        """The differential d_index restricted to internal degree ``degree``."""
        return self.algebra.map_piece(self.differential(index), self.term(index), self.term(index - 1), degree)

    def shift(self, amount: int) -> FreeComplex:
        """C[r]_i = C_{i-r} with differential (-1)^r d."""
        sign = -1 if amount % 2 else 1
        return FreeComplex.create(
            self.algebra,
            {index + amount: degrees for index, degrees in self.terms.items()},
            {index + amount: matrix.scale(sign) for index, matrix in self.differentials.items()},
        )

    def twist(self, amount: int) -> FreeComplex:
        """C(j): every summand A(-g) becomes A(-g+j)."""
        return FreeComplex.create(
            self.algebra,
            {index: tuple(degree - amount for degree in degrees) for index, degrees in self.terms.items()},
            self.differentials,
            self.augmentation,
        )

    def degree_range(self) -> tuple[int, int]:
        degrees = [degree for term in self.terms.values() for degree in term]
        return (min(degrees), max(degrees)) if degrees else (0, -1)


@dataclass(frozen=True, eq=False)
class ChainMap:
    """Degree-zero morphism of free complexes; ``maps[i]`` has rows indexed by the generators of target_i."""

    source: FreeComplex
    target: FreeComplex
    maps: dict[int, PolynomialMatrix] = field(default_factory=dict)

    @classmethod
    def identity(cls, complex_: FreeComplex) -> Self:
        return cls(
            complex_,
            complex_,
            {
                index: PolynomialMatrix.identity(len(degrees), complex_.variables)
                for index, degrees in complex_.terms.items()
            },
        )

    @classmethod
    def zero(cls, source: FreeComplex, target: FreeComplex) -> Self:
        return cls(source, target, {})

    def map(self, index: int) -> PolynomialMatrix:
        matrix = self.maps.get(index)
        if matrix is None:
            return PolynomialMatrix.zeros(self.target.rank(index), self.source.rank(index), self.source.variables)
        return matrix

    def indices(self) -> range:
        return range(min(self.source.low, self.target.low), max(self.source.high, self.target.high) + 1)

    def strand_map(self, index: int, degree: int) -> Matrix:
        return self.source.algebra.map_piece(
            self.map(index), self.source.term(index), self.target.term(index), degree
        )

    def compose(self, other: ChainMap) -> ChainMap:
        """``self`` after ``other``."""
        return ChainMap(
            other.source,
            self.target,
            {index: self.map(index) @ other.map(index) for index in other.indices()},
        )
