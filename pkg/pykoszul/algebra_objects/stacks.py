from __future__ import annotations

import itertools
import logging
from collections.abc import Sequence
from dataclasses import dataclass
from functools import cached_property
from typing import Self

from pykoszul.algebra_objects.complexes import hom_derived, hom_differential, hom_strand
from pykoszul.algebra_objects.errors import ValidationError
from pykoszul.algebra_objects.free_modules import FreeComplex, PolynomialMatrix
from pykoszul.algebra_objects.graded import GradedAlgebra, GradedModule, default_degree_bound, free_resolution
from pykoszul.algebra_objects.monomials import Character, Polynomial, WeightVector, character_of, monomial_basis

logger = logging.getLogger(__name__)

Cohomology = tuple[int, ...]


@dataclass(frozen=True)
class StackDescriptor:
    """The weighted projective stack P(a_0, ..., a_n) and the character group Z_{a_0} x ... x Z_{a_n}."""

    weights: WeightVector
    characters: tuple[Character, ...]

    @property
    def sigma(self) -> int:
        return self.weights.sigma

    @property
    def n(self) -> int:
        return self.weights.n

    @cached_property
    def ring(self) -> GradedAlgebra:
        return GradedAlgebra.polynomial_ring(self.weights)

    @cached_property
    def cover(self) -> GradedAlgebra:
        """The straight polynomial ring T with S -> T, x_i -> x_i^a_i."""
        return GradedAlgebra.polynomial_ring(WeightVector.ones(self.weights.variables))


def validate_weights(weights: WeightVector | Sequence[int]) -> StackDescriptor:
    if not isinstance(weights, WeightVector):
        weights = WeightVector(tuple(weights))
    weights.validate()
    return StackDescriptor(weights, weights.characters())


def _weights(stack: StackDescriptor | WeightVector) -> WeightVector:
    return stack.weights if isinstance(stack, StackDescriptor) else stack


def line_cohomology(stack: StackDescriptor | WeightVector, k: int) -> Cohomology:
    """h^q(O(k)): h^0 = dim S_k, h^n = dim S_{-k-σ}, zero in between."""
    weights = _weights(stack)
    values = [0] * (weights.n + 1)
    values[0] += len(monomial_basis(weights, k))
    values[weights.n] += len(monomial_basis(weights, -k - weights.sigma))
    return tuple(values)


def euler_characteristic(cohomology: Sequence[int]) -> int:
    return sum((-1) ** q * dimension for q, dimension in enumerate(cohomology))


def line_euler_characteristic(stack: StackDescriptor | WeightVector, k: int) -> int:
    return euler_characteristic(line_cohomology(stack, k))


@dataclass(eq=False)
class ModuleCohomology:
    """Cohomology of the twists of the sheaf of a graded module, by local duality against ω = S(-σ).

    h^q(k) = dim Ext^{n-q}(M, ω)_{-k} for q >= 1, and
    h^0(k) = dim M_k - dim Ext^{n+1}(M, ω)_{-k} + dim Ext^n(M, ω)_{-k}.
    A module of finite length has the zero sheaf and gets zero everywhere.
    """

    module: GradedModule
    degree_bound: int | None = None

    @cached_property
    def resolution(self) -> FreeComplex:
        bound = self.degree_bound if self.degree_bound is not None else default_degree_bound(self.module)
        return free_resolution(self.module, self.module.algebra.weights.n + 1, bound)

    @cached_property
    def dualizing(self) -> FreeComplex:
        algebra = self.module.algebra
        return FreeComplex.single(algebra, (algebra.weights.sigma,))

    def ext(self, i: int, degree: int) -> int:
        return hom_derived(self.resolution, self.dualizing, i, (degree, degree))

    def at(self, k: int) -> Cohomology:
        n = self.module.algebra.weights.n
        if not self.module.generator_degrees:
            return (0,) * (n + 1)
        higher = [self.ext(n - q, -k) for q in range(1, n + 1)]
        h0 = self.module.piece_dimension(k) - self.ext(n + 1, -k) + self.ext(n, -k)
        return (h0, *higher)

    def euler_characteristic(self, k: int) -> int:
        return euler_characteristic(self.at(k))

    def sheaf_bound(self, sigma: int | None = None) -> int | None:
        """Least k0 with M_k = H^0(M~(k)) and H^q(M~(k)) = 0 for q > 0 whenever k >= k0.

        Every Ext^i(M, A(-sigma))_{-k} vanishes once k > g - sigma for all generator degrees g of the resolution;
        ``sigma`` defaults to the ring's and is n+1 for the straight cover. ``None`` for a module without generators.
        """
        if not self.module.generator_degrees:
            return None
        if sigma is None:
            sigma = self.module.algebra.weights.sigma
        degrees = [degree for index in self.resolution.indices() for degree in self.resolution.term(index)]
        return max(degrees) - sigma + 1


def module_cohomology(
    stack: StackDescriptor | WeightVector, module: GradedModule, k: int, degree_bound: int | None = None
) -> Cohomology:
    if module.algebra.weights != _weights(stack):
        raise ValidationError("module lives over a different ring")
    return ModuleCohomology(module, degree_bound).at(k)


def module_euler_characteristic(module: GradedModule | ModuleCohomology, k: int) -> int:
    if isinstance(module, GradedModule):
        module = ModuleCohomology(module)
    return module.euler_characteristic(k)


@dataclass(frozen=True, eq=False)
class EquivariantModule:
    """A graded module over the straight ring T whose generators are eigenvectors of G = Π μ_{a_i}; the monomial
    x^e has the character e mod a."""

    module: GradedModule
    weights: WeightVector
    generator_characters: tuple[Character, ...]

    def __post_init__(self) -> None:
        if len(self.generator_characters) != len(self.module.generator_degrees):
            raise ValidationError("one character per generator required")
        relations = self.module.relations
        for j in range(relations.cols):
            seen = {
                character_of(self.weights, monomial) + self.generator_characters[i]
                for i in range(relations.rows)
                for monomial, _ in relations.entries[i][j].terms
            }
            if len(seen) > 1:
                raise ValidationError(f"relation {j} mixes characters")

    @property
    def cover(self) -> GradedAlgebra:
        return self.module.algebra

    @classmethod
    def pullback(cls, module: GradedModule, stack: StackDescriptor) -> Self:
        """M^# = M ⊗_S T with generators of trivial character."""
        pulled = module.pullback(stack.cover, stack.weights)
        return cls(pulled, stack.weights, (stack.weights.trivial_character(),) * len(module.generator_degrees))

    @classmethod
    def structure_sheaf(cls, stack: StackDescriptor) -> Self:
        return cls(GradedModule.free(stack.cover, (0,)), stack.weights, (stack.weights.trivial_character(),))

    @classmethod
    def differentials(cls, stack: StackDescriptor, p: int) -> Self:
        """coker(Λ^{p+2}V ⊗ T(-p-2) -> Λ^{p+1}V ⊗ T(-p-1)), whose sheaf is Ω^p; e_I has character Σ_{i∈I} e_i."""
        if p == 0:
            return cls.structure_sheaf(stack)
        weights, cover = stack.weights, stack.cover
        variables = weights.variables
        generators = list(itertools.combinations(range(variables), p + 1))
        index = {subset: position for position, subset in enumerate(generators)}
        relations = list(itertools.combinations(range(variables), p + 2))
        zero = Polynomial.zero(variables)
        columns = []
        for subset in relations:
            column = [zero] * len(generators)
            for r, i in enumerate(subset):
                column[index[subset[:r] + subset[r + 1 :]]] = Polynomial.variable(i, variables).scale((-1) ** r)
            columns.append(column)
        module = GradedModule(
            cover,
            (p + 1,) * len(generators),
            PolynomialMatrix.from_columns(columns, len(generators), variables)
            if columns
            else PolynomialMatrix.zeros(len(generators), 0, variables),
            (p + 2,) * len(relations),
        )
        return cls(module, weights, tuple(subset_character(weights, subset) for subset in generators))

    def twist(self, amount: int) -> EquivariantModule:
        return EquivariantModule(self.module.twist(amount), self.weights, self.generator_characters)

    def tensor(self, other: EquivariantModule) -> EquivariantModule:
        left, right = self.module, other.module
        variables = left.algebra.variables
        rows = len(left.generator_degrees) * len(right.generator_degrees)
        zero = Polynomial.zero(variables)
        columns: list[list[Polynomial]] = []
        degrees: list[int] = []
        for j, relation_degree in enumerate(left.relation_degrees):
            for b, generator_degree in enumerate(right.generator_degrees):
                column = [zero] * rows
                for a in range(len(left.generator_degrees)):
                    column[a * len(right.generator_degrees) + b] = left.relations.entries[a][j]
                columns.append(column)
                degrees.append(relation_degree + generator_degree)
        for a, generator_degree in enumerate(left.generator_degrees):
            for j, relation_degree in enumerate(right.relation_degrees):
                column = [zero] * rows
                for b in range(len(right.generator_degrees)):
                    column[a * len(right.generator_degrees) + b] = right.relations.entries[b][j]
                columns.append(column)
                degrees.append(generator_degree + relation_degree)
        module = GradedModule(
            left.algebra,
            tuple(g + h for g in left.generator_degrees for h in right.generator_degrees),
            (
                PolynomialMatrix.from_columns(columns, rows, variables)
                if columns
                else PolynomialMatrix.zeros(rows, 0, variables)
            ),
            tuple(degrees),
        )
        return EquivariantModule(
            module,
            self.weights,
            tuple(a + b for a in self.generator_characters for b in other.generator_characters),
        )

    def ambient_characters(self, degree: int) -> list[Character]:
        characters = []
        for generator_degree, generator_character in zip(self.module.generator_degrees, self.generator_characters):
            characters.extend(
                character_of(self.weights, monomial) + generator_character
                for monomial in self.cover.piece(degree - generator_degree).basis
            )
        return characters

    def piece_characters(self, degree: int) -> list[Character]:
        ambient = self.ambient_characters(degree)
        return [ambient[position] for position in self.module.piece(degree).basis]


def subset_character(weights: WeightVector, subset: Sequence[int]) -> Character:
    character = weights.trivial_character()
    for i in subset:
        character = character + weights.unit_character(i)
    return character


def total_character(weights: WeightVector) -> Character:
    """Character of dx_0 ∧ ... ∧ dx_n, carried by the generator of ω_T = T(-n-1)."""
    return subset_character(weights, range(weights.variables))


def resolution_characters(resolution: FreeComplex, module: EquivariantModule) -> dict[int, list[Character]]:
    """Characters of the generators of a resolution, read off from any nonzero entry of their columns."""
    weights = module.weights
    characters: dict[int, list[Character]] = {}
    previous = list(module.generator_characters)
    for index in resolution.indices():
        matrix = resolution.augmentation if index == 0 else resolution.differential(index)
        if matrix is None:
            raise ValidationError("resolution has no augmentation")
        current = []
        for j in range(matrix.cols):
            row, entry = next(
                (i, matrix.entries[i][j]) for i in range(matrix.rows) if not matrix.entries[i][j].is_zero()
            )
            current.append(character_of(weights, entry.terms[0][0]) + previous[row])
        characters[index] = current
        previous = current
    return characters


@dataclass(eq=False)
class EquivariantCohomology:
    """Character decomposition of H^q(P^n, N~(k)) for an equivariant module N, by local duality against ω_T:
    the χ-part of H^q corresponds to the -χ part of Ext^{n-q}(N, ω_T)_{-k}."""

    module: EquivariantModule
    degree_bound: int | None = None

    @cached_property
    def resolution(self) -> FreeComplex:
        module = self.module.module
        bound = self.degree_bound if self.degree_bound is not None else default_degree_bound(module)
        return free_resolution(module, module.algebra.weights.n + 1, bound)

    @cached_property
    def characters(self) -> dict[int, list[Character]]:
        return resolution_characters(self.resolution, self.module)

    @cached_property
    def dualizing(self) -> FreeComplex:
        cover = self.module.cover
        return FreeComplex.single(cover, (cover.variables,))

    def ext(self, i: int, degree: int) -> dict[Character, int]:
        weights = self.module.weights
        omega = total_character(weights)
        strand = hom_strand(self.resolution, self.dualizing, -i, degree)
        labels = [
            character_of(weights, monomial) + omega - self.characters[index][a]
            for index, a, _, monomial in strand.labels
        ]
        if not labels:
            return {}
        outgoing = hom_differential(self.resolution, self.dualizing, -i, degree)
        incoming = hom_differential(self.resolution, self.dualizing, -i + 1, degree)
        dimensions = {}
        for character in sorted(set(labels)):
            block = [position for position, label in enumerate(labels) if label == character]
            dimension = len(block) - outgoing.select_columns(block).rank() - incoming.select_rows(block).rank()
            if dimension:
                dimensions[character] = dimension
        return dimensions

    def at(self, k: int) -> dict[Character, Cohomology]:
        weights = self.module.weights
        n = weights.n
        if not self.module.module.generator_degrees:
            return {character: (0,) * (n + 1) for character in weights.characters()}
        ext = {i: self.ext(i, -k) for i in range(n + 2)}
        pieces = self.module.piece_characters(k)
        result = {}
        for character in weights.characters():
            dual = -character
            h0 = sum(1 for label in pieces if label == character) - ext[n + 1].get(dual, 0) + ext[n].get(dual, 0)
            result[character] = (h0, *(ext[n - q].get(dual, 0) for q in range(1, n + 1)))
        logger.debug("equivariant cohomology at %d: %s", k, result)
        return result


def equivariant_cohomology(module: EquivariantModule, k: int) -> dict[Character, Cohomology]:
    return EquivariantCohomology(module).at(k)


def bott_eigen(stack: StackDescriptor, p: int, t: int) -> dict[Character, Cohomology]:
    """H^q(P^n, Ω^p(t)) split by the characters of G."""
    if not 0 <= p <= stack.n:
        raise ValidationError(f"p must lie in 0..{stack.n}, got {p}")
    return equivariant_cohomology(EquivariantModule.differentials(stack, p).twist(t), 0)


def eigensheaf_dimensions(weights: WeightVector, k: int) -> tuple[int, int]:
    """(Σ_χ dim S_{k-|χ|}, dim T_k); the two agree since T^χ ≅ S(-|χ|)."""
    straight = WeightVector.ones(weights.variables)
    total = sum(len(monomial_basis(weights, k - character.norm)) for character in weights.characters())
    return total, len(monomial_basis(straight, k))


def stabilizer_cover(stack: StackDescriptor) -> dict[int, int]:
    """For the i-th fixed point, the least j_0 such that sums of at most j_0 tangent characters a_j mod a_i
    cover Z_{a_i}."""
    weights = stack.weights.weights
    cover = {}
    for i, order in enumerate(weights):
        tangent = {weight % order for j, weight in enumerate(weights) if j != i}
        reached = {0}
        frontier = {0}
        steps = 0
        while len(reached) < order:
            frontier = {(value + character) % order for value in frontier for character in tangent} - reached
            if not frontier:
                raise ValidationError(f"tangent characters at fixed point {i} do not generate Z_{order}")
            reached |= frontier
            steps += 1
        cover[i] = steps
    return cover
