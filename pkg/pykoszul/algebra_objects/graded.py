from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from collections.abc import Callable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Self

from pykoszul.algebra_objects.errors import BoundExhaustedError, InhomogeneousError, ValidationError
from pykoszul.algebra_objects.free_modules import FreeComplex, PolynomialMatrix
from pykoszul.algebra_objects.linear import ZERO, Matrix, RowEchelon, Subspace, Vector, span, unit_vector
from pykoszul.algebra_objects.monomials import (
    Monomial,
    Polynomial,
    WeightVector,
    monomial_basis,
    monomial_index,
)

logger = logging.getLogger(__name__)


class PiecewiseAlgebra(ABC):
    """A connected graded algebra known through its finite-dimensional pieces and multiplication tables."""

    @abstractmethod
    def piece_dimension(self, degree: int) -> int:
        pass

    @abstractmethod
    def multiplication(self, left: int, right: int) -> Matrix:
        """Matrix of A_left ⊗ A_right -> A_{left+right}; column ``a * dim A_right + b`` is the product of basis
        elements ``a`` and ``b``."""


@dataclass(frozen=True)
class AlgebraPiece:
    degree: int
    basis: tuple[Monomial, ...]
    ambient: tuple[Monomial, ...]
    relations: RowEchelon = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def coordinates(self, ambient_vector: Sequence[Fraction]) -> Vector:
        reduced = self.relations.reduce(ambient_vector)
        return tuple(reduced[column] for column in self.relations.free_columns)


@dataclass(frozen=True, eq=False)
class GradedAlgebra(PiecewiseAlgebra):
    """A = S/I for S the weighted polynomial ring; pieces are quotients of the monomial pieces of S."""

    weights: WeightVector
    relations: tuple[Polynomial, ...] = ()
    _pieces: dict[int, AlgebraPiece] = field(default_factory=dict, init=False, repr=False)
    _multiplications: dict[tuple[int, int], Matrix] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        for relation in self.relations:
            if relation.variables != self.weights.variables:
                raise ValidationError(f"relation {relation} has the wrong number of variables")
            if relation.degree(self.weights) == 0:
                raise ValidationError(f"relation {relation} is a unit, A_0 would vanish")

    @classmethod
    def polynomial_ring(cls, weights: WeightVector | Sequence[int]) -> Self:
        if not isinstance(weights, WeightVector):
            weights = WeightVector(tuple(weights))
        return cls(weights)

    @property
    def variables(self) -> int:
        return self.weights.variables

    @property
    def is_polynomial_ring(self) -> bool:
        return not any(not relation.is_zero() for relation in self.relations)

    def relation_degrees(self) -> tuple[int, ...]:
        return tuple(degree for relation in self.relations if (degree := relation.degree(self.weights)) is not None)

    def piece(self, degree: int) -> AlgebraPiece:
        piece = self._pieces.get(degree)
        if piece is None:
            ambient = monomial_basis(self.weights, degree)
            index = monomial_index(self.weights, degree)
            spanning = []
            for relation in self.relations:
                relation_degree = relation.degree(self.weights)
                if relation_degree is None or relation_degree > degree:
                    continue
                for monomial in monomial_basis(self.weights, degree - relation_degree):
                    vector = [ZERO] * len(ambient)
                    for term, coefficient in relation.terms:
                        vector[index[term * monomial]] += coefficient
                    spanning.append(vector)
            echelon = span(spanning, len(ambient))
            piece = AlgebraPiece(degree, tuple(ambient[column] for column in echelon.free_columns), ambient, echelon)
            self._pieces[degree] = piece
        return piece

    def piece_dimension(self, degree: int) -> int:
        return self.piece(degree).dimension

    def coordinates(self, degree: int, polynomial: Polynomial) -> Vector:
        piece = self.piece(degree)
        index = monomial_index(self.weights, degree)
        vector = [ZERO] * len(piece.ambient)
        for monomial, coefficient in polynomial.terms:
            position = index.get(monomial)
            if position is None:
                raise InhomogeneousError(f"polynomial {polynomial} has a term outside degree {degree}")
            vector[position] += coefficient
        return piece.coordinates(vector)

    def element(self, degree: int, vector: Sequence[Fraction]) -> Polynomial:
        return Polynomial.from_dict(
            self.variables, {monomial: c for monomial, c in zip(self.piece(degree).basis, vector) if c}
        )

    def multiplication(self, left: int, right: int) -> Matrix:
        matrix = self._multiplications.get((left, right))
        if matrix is None:
            left_basis, right_basis = self.piece(left).basis, self.piece(right).basis
            columns = [
                self.coordinates(left + right, Polynomial.monomial(a * b)) for a in left_basis for b in right_basis
            ]
            matrix = Matrix.from_columns(columns, self.piece_dimension(left + right))
            self._multiplications[left, right] = matrix
        return matrix

    def multiplication_by(self, multiplier: Polynomial, degree: int, multiplier_degree: int | None = None) -> Matrix:
        """Matrix of A_degree -> A_{degree+e} given by a homogeneous multiplier of degree e."""
        shift = multiplier.degree(self.weights)
        if shift is None:
            shift = multiplier_degree if multiplier_degree is not None else 0
        columns = [
            self.coordinates(degree + shift, multiplier * Polynomial.monomial(monomial))
            for monomial in self.piece(degree).basis
        ]
        return Matrix.from_columns(columns, self.piece_dimension(degree + shift))

    def free_piece_dimension(self, degrees: Sequence[int], degree: int) -> int:
        return sum(self.piece_dimension(degree - generator) for generator in degrees)

    def free_offsets(self, degrees: Sequence[int], degree: int) -> list[int]:
        offsets = [0]
        for generator in degrees:
            offsets.append(offsets[-1] + self.piece_dimension(degree - generator))
        return offsets

    def map_piece(
        self, matrix: PolynomialMatrix, source_degrees: Sequence[int], target_degrees: Sequence[int], degree: int
    ) -> Matrix:
        """The linear map ⊕ A_{d-s_j} -> ⊕ A_{d-t_i} induced by a homogeneous polynomial matrix."""
        source_offsets = self.free_offsets(source_degrees, degree)
        target_offsets = self.free_offsets(target_degrees, degree)
        values: dict[tuple[int, int], Fraction] = {}
        for i, j, entry in matrix.nonzero_entries():
            target_degree = degree - target_degrees[i]
            if self.piece_dimension(target_degree) == 0:
                continue
            for position, monomial in enumerate(self.piece(degree - source_degrees[j]).basis):
                image = self.coordinates(target_degree, entry * Polynomial.monomial(monomial))
                for row, value in enumerate(image):
                    if value:
                        key = (target_offsets[i] + row, source_offsets[j] + position)
                        values[key] = values.get(key, ZERO) + value
        return Matrix.from_sparse(target_offsets[-1], source_offsets[-1], values)

    def column_to_vector(self, degrees: Sequence[int], degree: int, column: Sequence[Polynomial]) -> Vector:
        vector: list[Fraction] = []
        for generator, entry in zip(degrees, column):
            if self.piece_dimension(degree - generator) == 0:
                continue
            vector.extend(self.coordinates(degree - generator, entry))
        return tuple(vector)

    def vector_to_column(
        self, degrees: Sequence[int], degree: int, vector: Sequence[Fraction]
    ) -> tuple[Polynomial, ...]:
        offsets = self.free_offsets(degrees, degree)
        return tuple(
            self.element(degree - generator, vector[offsets[j] : offsets[j + 1]]) for j, generator in enumerate(degrees)
        )

    def check_homogeneous(
        self, matrix: PolynomialMatrix, source_degrees: Sequence[int], target_degrees: Sequence[int], shift: int = 0
    ) -> tuple[int, int] | None:
        """First entry (i, j) whose degree differs from s_j + shift - t_i."""
        for i, j, entry in matrix.nonzero_entries():
            if not entry.is_homogeneous(self.weights) or entry.degree(self.weights) != (
                source_degrees[j] + shift - target_degrees[i]
            ):
                return i, j
        return None


def algebra_piece(algebra: GradedAlgebra, degree: int) -> AlgebraPiece:
    return algebra.piece(degree)


@dataclass(frozen=True)
class ModulePiece:
    degree: int
    ambient_dimension: int
    relations: RowEchelon = field(repr=False)

    @property
    def dimension(self) -> int:
        return self.ambient_dimension - self.relations.rank

    @property
    def basis(self) -> tuple[int, ...]:
        """Ambient positions whose standard vectors form the basis of the piece."""
        return self.relations.free_columns

    def coordinates(self, ambient_vector: Sequence[Fraction]) -> Vector:
        reduced = self.relations.reduce(ambient_vector)
        return tuple(reduced[column] for column in self.basis)

    def coordinate_map(self) -> Matrix:
        return Matrix.from_columns(
            [self.coordinates(unit_vector(self.ambient_dimension, k)) for k in range(self.ambient_dimension)],
            self.dimension,
        )


@dataclass(frozen=True, eq=False)
class GradedModule:
    """coker(⊕ A(-r_k) -> ⊕ A(-g_j)) given by a relation matrix with one row per generator."""

    algebra: GradedAlgebra
    generator_degrees: tuple[int, ...]
    relations: PolynomialMatrix
    relation_degrees: tuple[int, ...]
    _pieces: dict[int, ModulePiece] = field(default_factory=dict, init=False, repr=False)

    def __post_init__(self) -> None:
        if self.relations.rows != len(self.generator_degrees) or self.relations.cols != len(self.relation_degrees):
            raise ValidationError(
                f"relation matrix is {self.relations.rows}x{self.relations.cols}, "
                f"expected {len(self.generator_degrees)}x{len(self.relation_degrees)}"
            )
        offending = self.algebra.check_homogeneous(self.relations, self.relation_degrees, self.generator_degrees)
        if offending is not None:
            i, j = offending
            raise InhomogeneousError(
                f"relation entry ({i},{j}) = {self.relations.entries[i][j]} is not homogeneous of degree "
                f"{self.relation_degrees[j] - self.generator_degrees[i]}"
            )

    @classmethod
    def free(cls, algebra: GradedAlgebra, degrees: Sequence[int]) -> Self:
        return cls(algebra, tuple(degrees), PolynomialMatrix.zeros(len(degrees), 0, algebra.variables), ())

    @classmethod
    def cyclic(cls, algebra: GradedAlgebra, generators: Sequence[Polynomial], degree: int = 0) -> Self:
        """A(-degree)/(f_1, ..., f_k)."""
        degrees = []
        for generator in generators:
            generator_degree = generator.degree(algebra.weights)
            if generator_degree is None:
                raise ValidationError("zero generator in cyclic module")
            degrees.append(generator_degree + degree)
        return cls(
            algebra,
            (degree,),
            PolynomialMatrix.from_rows([tuple(generators)], algebra.variables, len(generators)),
            tuple(degrees),
        )

    @property
    def is_free(self) -> bool:
        return self.relations.is_zero()

    def presentation_degrees(self) -> tuple[int, ...]:
        return self.generator_degrees + self.relation_degrees

    def ambient_dimension(self, degree: int) -> int:
        return self.algebra.free_piece_dimension(self.generator_degrees, degree)

    def piece(self, degree: int) -> ModulePiece:
        piece = self._pieces.get(degree)
        if piece is None:
            image = self.algebra.map_piece(self.relations, self.relation_degrees, self.generator_degrees, degree)
            piece = ModulePiece(degree, image.rows, span(image.columns(), image.rows))
            self._pieces[degree] = piece
        return piece

    def piece_dimension(self, degree: int) -> int:
        return self.piece(degree).dimension

    def coordinates(self, degree: int, column: Sequence[Polynomial]) -> Vector:
        return self.piece(degree).coordinates(self.algebra.column_to_vector(self.generator_degrees, degree, column))

    def twist(self, amount: int) -> GradedModule:
        """M(j) with M(j)_k = M_{j+k}."""
        return GradedModule(
            self.algebra,
            tuple(degree - amount for degree in self.generator_degrees),
            self.relations,
            tuple(degree - amount for degree in self.relation_degrees),
        )

    def pullback(self, cover: GradedAlgebra, weights: WeightVector) -> GradedModule:
        """M ⊗_S T along x_i -> x_i^a_i, degree preserving."""
        return GradedModule(
            cover,
            self.generator_degrees,
            PolynomialMatrix.from_function(
                self.relations.rows,
                self.relations.cols,
                cover.variables,
                lambda i, j: self.relations.entries[i][j].pullback(weights),
            ),
            self.relation_degrees,
        )


def module_piece(module: GradedModule, degree: int) -> ModulePiece:
    return module.piece(degree)


def twist(module: GradedModule, amount: int) -> GradedModule:
    return module.twist(amount)


@dataclass(frozen=True, eq=False)
class GradedMap:
    """Homogeneous map of the given degree shift; entry (i, j) has degree s_j + shift - t_i."""

    source: GradedModule
    target: GradedModule
    matrix: PolynomialMatrix
    shift: int = 0

    def __post_init__(self) -> None:
        if self.matrix.rows != len(self.target.generator_degrees) or self.matrix.cols != len(
            self.source.generator_degrees
        ):
            raise ValidationError("map matrix shape does not match the generators")
        offending = self.source.algebra.check_homogeneous(
            self.matrix, self.source.generator_degrees, self.target.generator_degrees, self.shift
        )
        if offending is not None:
            raise InhomogeneousError(f"map entry {offending} is not homogeneous of the declared degree")

    def ambient_map(self, degree: int) -> Matrix:
        return self.source.algebra.map_piece(
            self.matrix,
            self.source.generator_degrees,
            tuple(generator - self.shift for generator in self.target.generator_degrees),
            degree,
        )

    def piece_matrix(self, degree: int) -> Matrix:
        """source_d -> target_{d+shift} in the piece bases."""
        ambient = self.ambient_map(degree).select_columns(self.source.piece(degree).basis)
        return self.target.piece(degree + self.shift).coordinate_map() @ ambient

    def is_compatible(self, degree: int) -> bool:
        relations = self.source.algebra.map_piece(
            self.source.relations, self.source.relation_degrees, self.source.generator_degrees, degree
        )
        images = self.target.piece(degree + self.shift).coordinate_map() @ self.ambient_map(degree) @ relations
        return images.is_zero()


@dataclass(frozen=True)
class KernelPiece:
    degree: int
    subspace: Subspace

    @property
    def dimension(self) -> int:
        return self.subspace.rank

    @property
    def basis(self) -> tuple[Vector, ...]:
        return self.subspace.basis


def kernel_piece(graded_map: GradedMap, degree: int) -> KernelPiece:
    return KernelPiece(degree, Subspace.kernel_of(graded_map.piece_matrix(degree)))


def _minimal_generators(
    algebra: GradedAlgebra,
    degrees: Sequence[int],
    candidates: Callable[[int], Sequence[Vector]],
    dimension: Callable[[int], int],
    to_vector: Callable[[int, tuple[Polynomial, ...]], Vector],
    low: int,
    high: int,
) -> list[tuple[int, tuple[Polynomial, ...]]]:
    """Degree by degree, a minimal set of columns spanning the submodule whose degree-d part is spanned by
    ``candidates(d)``; columns are polynomial vectors over generators of the given degrees."""
    generators: list[tuple[int, tuple[Polynomial, ...]]] = []
    for degree in range(low, high + 1):
        found = candidates(degree)
        if not found:
            continue
        spanning = [
            to_vector(degree, tuple(entry * Polynomial.monomial(monomial) for entry in column))
            for generator_degree, column in generators
            for monomial in algebra.piece(degree - generator_degree).basis
        ]
        echelon = span(spanning, dimension(degree))
        for vector in found:
            if echelon.contains(vector):
                continue
            generators.append((degree, algebra.vector_to_column(degrees, degree, vector)))
            spanning.append(vector)
            echelon = span(spanning, dimension(degree))
    return generators


def free_resolution(module: GradedModule, max_steps: int, degree_bound: int) -> FreeComplex:
    """Minimal graded free resolution F_0 <- F_1 <- ... <- F_max_steps of ``module``, exact in degrees up to
    ``degree_bound``; the augmentation F_0 -> M is kept on the returned complex."""
    if max_steps < 0:
        raise ValidationError("max_steps must be nonnegative")
    algebra = module.algebra
    presentation = module.presentation_degrees() + algebra.relation_degrees()
    if presentation and max(presentation) > degree_bound:
        raise BoundExhaustedError("presentation degrees exceed the degree bound", max(presentation))

    generators = _minimal_module_generators(module, degree_bound)
    _check_bound(generators, degree_bound, 0, algebra.weights)

    terms: dict[int, tuple[int, ...]] = {0: tuple(degree for degree, _ in generators)}
    augmentation = PolynomialMatrix.from_columns(
        [column for _, column in generators], len(module.generator_degrees), algebra.variables
    )
    differentials: dict[int, PolynomialMatrix] = {}

    def previous_map(step: int, degree: int) -> Matrix:
        if step == 1:
            return module.piece(degree).coordinate_map() @ algebra.map_piece(
                augmentation, terms[0], module.generator_degrees, degree
            )
        return algebra.map_piece(differentials[step - 1], terms[step - 1], terms[step - 2], degree)

    for step in range(1, max_steps + 1):
        source = terms[step - 1]
        if not source:
            break
        kernel_generators = _minimal_generators(
            algebra,
            source,
            lambda degree, step=step: Subspace.kernel_of(previous_map(step, degree)).basis,
            lambda degree, source=source: algebra.free_piece_dimension(source, degree),
            lambda degree, column, source=source: algebra.column_to_vector(source, degree, column),
            min(source),
            degree_bound,
        )
        _check_bound(kernel_generators, degree_bound, step, algebra.weights)
        logger.debug("resolution step %d: %d generators", step, len(kernel_generators))
        if not kernel_generators:
            break
        terms[step] = tuple(degree for degree, _ in kernel_generators)
        differentials[step] = PolynomialMatrix.from_columns(
            [column for _, column in kernel_generators], len(source), algebra.variables
        )

    return FreeComplex.create(algebra, terms, differentials, augmentation)


def _minimal_module_generators(module: GradedModule, degree_bound: int) -> list[tuple[int, tuple[Polynomial, ...]]]:
    algebra = module.algebra

    def to_vector(degree: int, column: tuple[Polynomial, ...]) -> Vector:
        return module.piece(degree).coordinates(algebra.column_to_vector(module.generator_degrees, degree, column))

    def candidates(degree: int) -> list[Vector]:
        return [unit_vector(module.piece_dimension(degree), k) for k in range(module.piece_dimension(degree))]

    def to_column(degree: int, vector: Vector) -> tuple[Polynomial, ...]:
        piece = module.piece(degree)
        ambient = [ZERO] * piece.ambient_dimension
        for position, value in zip(piece.basis, vector):
            ambient[position] = value
        return algebra.vector_to_column(module.generator_degrees, degree, ambient)

    generators: list[tuple[int, tuple[Polynomial, ...]]] = []
    for degree in range(min(module.generator_degrees, default=0), degree_bound + 1):
        spanning = [
            to_vector(degree, tuple(entry * Polynomial.monomial(monomial) for entry in column))
            for generator_degree, column in generators
            for monomial in algebra.piece(degree - generator_degree).basis
        ]
        echelon = span(spanning, module.piece_dimension(degree))
        for vector in candidates(degree):
            if echelon.contains(vector):
                continue
            generators.append((degree, to_column(degree, vector)))
            spanning.append(vector)
            echelon = span(spanning, module.piece_dimension(degree))
    return generators


def _check_bound(
    generators: list[tuple[int, tuple[Polynomial, ...]]], degree_bound: int, step: int, weights: WeightVector
) -> None:
    """A generator of degree g has syzygies from degree g + w_i on, so generators closer to the bound than the
    largest weight leave the next step truncated."""
    margin = max(weights.weights)
    late = [degree for degree, _ in generators if degree > degree_bound - margin]
    if late:
        raise BoundExhaustedError(f"step {step} produces generators within {margin} of the degree bound", max(late))


def is_minimal(resolution: FreeComplex) -> bool:
    """No differential entry is a nonzero constant."""
    weights = resolution.algebra.weights
    return not any(
        entry.degree(weights) == 0
        for matrix in resolution.differentials.values()
        for _, _, entry in matrix.nonzero_entries()
    )


def default_degree_bound(module: GradedModule) -> int:
    weights = module.algebra.weights
    presentation = module.presentation_degrees() + module.algebra.relation_degrees()
    return max(presentation, default=0) + weights.sigma * (weights.n + 2) + 1
