from __future__ import annotations

import itertools
import logging
from collections import Counter
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from sortedcontainers import SortedDict

from pykoszul.algebra_objects.complexes import require_complex
from pykoszul.algebra_objects.errors import HypothesisError, ValidationError
from pykoszul.algebra_objects.free_modules import FreeComplex, PolynomialMatrix
from pykoszul.algebra_objects.graded import GradedMap, GradedModule
from pykoszul.algebra_objects.linear import ZERO, Matrix, Subspace, Vector
from pykoszul.algebra_objects.monomials import Character, Monomial, Polynomial, WeightVector, character_of
from pykoszul.algebra_objects.stacks import (
    EquivariantCohomology,
    EquivariantModule,
    ModuleCohomology,
    StackDescriptor,
    bott_eigen,
    line_euler_characteristic,
    total_character,
)
from pykoszul.algebra_objects.strands import StrandReport, certify_sequence

logger = logging.getLogger(__name__)

TableKey = tuple[int, int, tuple[int, ...], int]


@dataclass(frozen=True)
class CohomologyTable:
    """Nonzero dimensions keyed by (p, q, character residues, twist)."""

    weights: WeightVector
    entries: SortedDict = field(default_factory=SortedDict)

    def get(self, p: int, q: int, character: Character | tuple[int, ...], twist: int = 0) -> int:
        residues = character.residues if isinstance(character, Character) else tuple(character)
        return self.entries.get((p, q, residues, twist), 0)

    @property
    def is_empty(self) -> bool:
        return not self.entries

    def items(self) -> Iterable[tuple[TableKey, int]]:
        return self.entries.items()

    def first(self, predicate: Literal["q>0", "q<n"]) -> tuple[TableKey, int] | None:
        n = self.weights.n
        for key, dimension in self.entries.items():
            q = key[1]
            if (predicate == "q>0" and q > 0) or (predicate == "q<n" and q < n):
                return key, dimension
        return None


def _sheaf_tables(
    stack: StackDescriptor, sharp: EquivariantModule, degree_bound: int | None
) -> CohomologyTable:
    """dim H^q(P^n, Ω^j(j) ⊗ N)^{-χ} at key (-j, q, χ)."""
    entries = SortedDict()
    for j in range(stack.n + 1):
        twisted = sharp if j == 0 else EquivariantModule.differentials(stack, j).twist(j).tensor(sharp)
        for character, values in EquivariantCohomology(twisted, degree_bound).at(0).items():
            for q, dimension in enumerate(values):
                if dimension:
                    entries[-j, q, (-character).residues, 0] = dimension
        logger.debug("E_1 column p=%d done", -j)
    return CohomologyTable(stack.weights, entries)


def beilinson_E1(  # noqa: N802
    stack: StackDescriptor, module: GradedModule, degree_bound: int | None = None
) -> CohomologyTable:
    """E_1(p, q, χ) = dim H^q(P^n, Ω^{-p}(-p) ⊗ a^#)^{-χ} for -n <= p <= 0."""
    if module.algebra.weights != stack.weights:
        raise ValidationError("module lives over a different ring")
    return _sheaf_tables(stack, EquivariantModule.pullback(module, stack), degree_bound)


@dataclass(frozen=True)
class KTheoryRow:
    k: int
    expansion: int
    expected: int

    @property
    def residual(self) -> int:
        return self.expansion - self.expected


def k_theory_check(
    stack: StackDescriptor, module: GradedModule, window: Iterable[int], table: CohomologyTable | None = None
) -> tuple[KTheoryRow, ...]:
    """Σ_{p,q,χ} (-1)^{p+q} E_1(p,q,χ) χ(O(p-|χ|+k)) against χ(a(k))."""
    if table is None:
        table = beilinson_E1(stack, module)
    cohomology = ModuleCohomology(module)
    rows = []
    for k in window:
        expansion = sum(
            (-1 if (p + q) % 2 else 1) * dimension * line_euler_characteristic(stack, p - sum(residues) + k)
            for (p, q, residues, _), dimension in table.items()
        )
        rows.append(KTheoryRow(k, expansion, cohomology.euler_characteristic(k)))
    return tuple(rows)


@dataclass(frozen=True)
class SaturatedPieces:
    """Degrees 0 and 1 of H^0_*(N~), realized as Hom_T(m^d, N) with d = ``saturation``.

    A vector of degree k lists φ(u) ∈ N_{k+d} for the monomials u of degree d in turn; d = 0 reads N itself.
    """

    module: EquivariantModule
    saturation: int
    monomials: tuple[Monomial, ...]
    spaces: tuple[Subspace, Subspace]
    characters: tuple[Character, ...]
    _monomial_maps: dict[tuple[Monomial, int], Matrix] = field(default_factory=dict, compare=False, repr=False)

    def dimension(self, degree: int) -> int:
        return self.spaces[degree].rank

    def multiplications(self) -> list[Matrix]:
        """x_i: degree 0 -> degree 1, in the coordinates of the two spaces."""
        maps = _multiplications(self.module, self.saturation)
        if self.saturation == 0:
            return maps
        size = self.module.module.piece_dimension(self.saturation)
        result = []
        for matrix in maps:
            columns = []
            for vector in self.spaces[0].basis:
                image: list[Fraction] = []
                for u in range(len(self.monomials)):
                    image.extend(matrix.apply(vector[u * size : (u + 1) * size]))
                columns.append(self.spaces[1].coordinates(image))
            result.append(Matrix.from_columns(columns, self.dimension(1)))
        return result

    def evaluate(self, monomial: Monomial, coordinates: Sequence[Fraction]) -> Vector:
        """μ·φ ∈ N_k for a monomial μ of degree k >= d and φ of degree 0 given by its coordinates."""
        remaining = self.saturation
        divisor = []
        for exponent in monomial.exponents:
            take = min(exponent, remaining)
            divisor.append(take)
            remaining -= take
        if remaining:
            raise ValidationError(f"monomial {monomial} has degree below the saturation power {self.saturation}")
        quotient = Monomial(tuple(e - t for e, t in zip(monomial.exponents, divisor)))

        size = self.module.module.piece_dimension(self.saturation)
        vector = [ZERO] * (len(self.monomials) * size)
        for coefficient, basis_vector in zip(coordinates, self.spaces[0].basis):
            if coefficient:
                for position, value in enumerate(basis_vector):
                    vector[position] += coefficient * value
        u = self.monomials.index(Monomial(tuple(divisor)))
        return self._monomial_map(quotient).apply(vector[u * size : (u + 1) * size])

    def _monomial_map(self, monomial: Monomial) -> Matrix:
        key = (monomial, self.saturation)
        matrix = self._monomial_maps.get(key)
        if matrix is None:
            graded = self.module.module
            size = len(graded.generator_degrees)
            entry = Polynomial.monomial(monomial)
            zero = Polynomial.zero(graded.algebra.variables)
            diagonal = PolynomialMatrix.from_function(
                size, size, graded.algebra.variables, lambda r, c: entry if r == c else zero
            )
            shift = sum(monomial.exponents)
            matrix = GradedMap(graded, graded, diagonal, shift).piece_matrix(self.saturation)
            self._monomial_maps[key] = matrix
        return matrix


def _labelled_kernel(matrix: Matrix, labels: Sequence[Character]) -> tuple[Subspace, list[Character]]:
    """Kernel of a map that respects a labelling of its columns, with a basis of label-pure vectors."""
    basis: list[Vector] = []
    coordinate_columns: list[int] = []
    characters: list[Character] = []
    for label in sorted(set(labels)):
        block = [position for position, value in enumerate(labels) if value == label]
        kernel = Subspace.kernel_of(matrix.select_columns(block))
        for vector in kernel.basis:
            full = [ZERO] * matrix.cols
            for position, value in zip(block, vector):
                full[position] = value
            basis.append(tuple(full))
            characters.append(label)
        coordinate_columns.extend(block[column] for column in kernel.coordinate_columns)
    return Subspace(matrix.cols, tuple(basis), tuple(coordinate_columns)), characters


def _divide(monomial: Monomial, variable: int) -> Monomial:
    return Monomial(tuple(e - 1 if i == variable else e for i, e in enumerate(monomial.exponents)))


def _hom_from_power(module: EquivariantModule, saturation: int, degree: int) -> tuple[Subspace, list[Character]]:
    """Hom_T(m^d, N)_degree inside ⊕_u N_{degree+d}, cut out by x_i φ(w/x_i) = x_j φ(w/x_j)."""
    cover, graded, weights = module.cover, module.module, module.weights
    monomials = cover.piece(saturation).basis
    index = {monomial: position for position, monomial in enumerate(monomials)}
    size = graded.piece_dimension(degree + saturation)
    target = graded.piece_dimension(degree + saturation + 1)
    multiplications = _multiplications(module, degree + saturation)
    values: dict[tuple[int, int], Fraction] = {}
    rows = 0
    for product in cover.piece(saturation + 1).basis:
        divisors = [i for i, exponent in enumerate(product.exponents) if exponent]
        for i in divisors[1:]:
            for variable, sign in ((divisors[0], 1), (i, -1)):
                u = index[_divide(product, variable)]
                for row, entries in enumerate(multiplications[variable].nonzero()):
                    for column, value in entries:
                        key = (rows + row, u * size + column)
                        values[key] = values.get(key, ZERO) + sign * value
            rows += target
    pieces = module.piece_characters(degree + saturation)
    labels = [pieces[v] - character_of(weights, u) for u in monomials for v in range(size)]
    return _labelled_kernel(Matrix.from_sparse(rows, len(monomials) * size, values), labels)


def saturated_pieces(module: EquivariantModule, saturation: int) -> SaturatedPieces:
    monomials = module.cover.piece(saturation).basis
    if saturation == 0:
        graded = module.module
        spaces = (Subspace.whole(graded.piece_dimension(0)), Subspace.whole(graded.piece_dimension(1)))
        return SaturatedPieces(module, 0, monomials, spaces, tuple(module.piece_characters(0)))
    zero, characters = _hom_from_power(module, saturation, 0)
    one, _ = _hom_from_power(module, saturation, 1)
    logger.debug("saturated through m^%d: h^0 pieces of dimension %d, %d", saturation, zero.rank, one.rank)
    return SaturatedPieces(module, saturation, monomials, (zero, one), tuple(characters))


@dataclass(frozen=True)
class Sections:
    """H_j = ker(Λ^j V ⊗ H^0(N~) -> Λ^{j-1} V ⊗ H^0(N~(1))), the sections of Ω^j(j) ⊗ N; vector index
    ``s * dim H^0(N~) + v``."""

    j: int
    subsets: tuple[tuple[int, ...], ...]
    piece_dimension: int
    space: Subspace
    characters: tuple[Character, ...]

    @property
    def dimension(self) -> int:
        return self.space.rank


def _multiplications(module: EquivariantModule, degree: int = 0) -> list[Matrix]:
    cover, graded = module.cover, module.module
    size = len(graded.generator_degrees)
    maps = []
    for i in range(cover.variables):
        variable = Polynomial.variable(i, cover.variables)
        zero = Polynomial.zero(cover.variables)
        diagonal = PolynomialMatrix.from_function(
            size, size, cover.variables, lambda r, c, variable=variable: variable if r == c else zero
        )
        maps.append(GradedMap(graded, graded, diagonal, 1).piece_matrix(degree))
    return maps


def sections(pieces: SaturatedPieces, j: int, multiplications: Sequence[Matrix]) -> Sections:
    variables = pieces.module.cover.variables
    subsets = tuple(itertools.combinations(range(variables), j))
    d0 = pieces.dimension(0)
    d1 = pieces.dimension(1)
    if j == 0:
        space = Subspace.whole(d0)
    else:
        lower = {subset: position for position, subset in enumerate(itertools.combinations(range(variables), j - 1))}
        values: dict[tuple[int, int], Fraction] = {}
        for s, subset in enumerate(subsets):
            for r, i in enumerate(subset):
                target = lower[subset[:r] + subset[r + 1 :]]
                sign = 1 if r % 2 == 0 else -1
                for row, entries in enumerate(multiplications[i].nonzero()):
                    for column, value in entries:
                        key = (target * d1 + row, s * d0 + column)
                        values[key] = values.get(key, ZERO) + sign * value
        space = Subspace.kernel_of(Matrix.from_sparse(len(lower) * d1, len(subsets) * d0, values))

    characters = []
    for vector in space.basis:
        index = next(position for position, value in enumerate(vector) if value)
        s, v = divmod(index, d0)
        character = pieces.characters[v]
        for i in subsets[s]:
            character = character + pieces.module.weights.unit_character(i)
        characters.append(character)
    return Sections(j, subsets, d0, space, tuple(characters))


def contraction(upper: Sections, lower: Sections, l: int) -> list[Vector]:
    """Coordinates in H_{j-1} of ι_l h for every basis vector h of H_j.

    ι_l e_I = (-1)^r e_{I - i_r} when l = i_r, and zero when l is not in I.
    """
    index = {subset: position for position, subset in enumerate(lower.subsets)}
    d0 = upper.piece_dimension
    images = []
    for vector in upper.space.basis:
        image = [ZERO] * (len(lower.subsets) * d0)
        for position, value in enumerate(vector):
            if not value:
                continue
            s, v = divmod(position, d0)
            subset = upper.subsets[s]
            if l not in subset:
                continue
            r = subset.index(l)
            image[index[subset[:r] + subset[r + 1 :]] * d0 + v] += value if r % 2 == 0 else -value
        images.append(lower.space.coordinates(image) if any(image) else (ZERO,) * lower.dimension)
    return images


def _lowest_exponents(character: Character) -> Monomial:
    return Monomial(character.residues)


def _divide_lowest(polynomial: Polynomial, character: Character) -> Polynomial:
    """f / x^{c} for a polynomial all of whose monomials carry the character c."""
    return Polynomial.from_dict(
        polynomial.variables,
        {
            Monomial(tuple(e - c for e, c in zip(monomial.exponents, character.residues))): coefficient
            for monomial, coefficient in polynomial.terms
        },
    )


def _invariant_entry(weights: WeightVector, source: Character, l: int, coefficient: Fraction) -> Polynomial:
    """x_l x^{c(source)} in terms of x^{c(source + e_l)}: a constant, or x_l (of S) when the exponent wraps."""
    variables = weights.variables
    if source.residues[l] + 1 == weights.weights[l]:
        return Polynomial.variable(l, variables).scale(coefficient)
    return Polynomial.constant(coefficient, variables)


def _invariant_differential(
    weights: WeightVector, contractions: Sequence[Sequence[Vector]], rows: int, pairings: Sequence[Character]
) -> PolynomialMatrix:
    """Invariant part of Σ_l x_l ⊗ D_l, with ``contractions[l][h]`` the coordinates of D_l h and ``pairings[h]``
    the character paired with h."""
    variables = weights.variables
    zero = Polynomial.zero(variables)
    entries = [[zero] * len(pairings) for _ in range(rows)]
    for l, images in enumerate(contractions):
        for column, coordinates in enumerate(images):
            for row, value in enumerate(coordinates):
                if value:
                    entries[row][column] = entries[row][column] + _invariant_entry(weights, pairings[column], l, value)
    return PolynomialMatrix.from_rows(entries, variables, len(pairings))


@dataclass(frozen=True)
class ResolutionCertificate:
    """A Beilinson resolution with its strand certificate; ``augmentation`` is ``None`` when the target module is
    not saturated and the map reaches it only through H^0_*."""

    side: Literal["left", "right"]
    complex: FreeComplex
    augmentation: PolynomialMatrix | None
    table: CohomologyTable
    vanishing: str
    report: StrandReport

    @property
    def exact(self) -> bool:
        return self.report.passed

    @property
    def n0(self) -> int:
        return self.report.n0

    def ranks(self) -> dict[int, int]:
        return {index: self.complex.rank(index) for index in self.complex.indices()}


def _check_against_table(table: CohomologyTable, q: int, residues_by_j: Sequence[Sequence[tuple[int, ...]]]) -> None:
    for j, residues in enumerate(residues_by_j):
        found = dict(Counter(residues))
        expected = {key: dimension for (p, row, key, _), dimension in table.items() if p == -j and row == q}
        if found != expected:
            raise ValidationError(
                f"H^{q} of Ω^{j}({j}) ⊗ a^# disagrees with the cohomology table ({found} != {expected})"
            )


def sheaf_window_start(stack: StackDescriptor, complex_: FreeComplex, *bounds: int | None) -> int | None:
    """Least twist k with H^{q>0}(O(k-t)) = 0 for every term S(-t) and at least every given module bound; from
    there on the degree-k strands are the global sections of the sheaf complex."""
    sigma = stack.sigma
    candidates = [t - sigma + 1 for index in complex_.indices() for t in complex_.term(index)]
    candidates.extend(bound for bound in bounds if bound is not None)
    return max(candidates, default=None)


def _certified_degrees(window: Iterable[int], start: int | None) -> tuple[list[int], int]:
    degrees = list(window)
    if start is None:
        return degrees, degrees[0] if degrees else 0
    return [degree for degree in degrees if degree >= start], start


def _left_augmentation(
    stack: StackDescriptor, sharp: EquivariantModule, top: Sections, pairings: Sequence[Character], generators: int
) -> PolynomialMatrix:
    weights = stack.weights
    piece = sharp.module.piece(0)
    columns = []
    for vector, character in zip(top.space.basis, pairings):
        ambient = [ZERO] * piece.ambient_dimension
        for position, value in zip(piece.basis, vector):
            ambient[position] = value
        lift = Polynomial.monomial(_lowest_exponents(character))
        column = stack.cover.vector_to_column(sharp.module.generator_degrees, 0, ambient)
        columns.append([(lift * entry).descend(weights) for entry in column])
    return PolynomialMatrix.from_columns(columns, generators, weights.variables)


def _ambient_monomials(module: EquivariantModule, degree: int) -> list[tuple[int, Monomial]]:
    labels = []
    for generator, generator_degree in enumerate(module.module.generator_degrees):
        labels.extend((generator, monomial) for monomial in module.cover.piece(degree - generator_degree).basis)
    return labels


def _descent_map(stack: StackDescriptor, sharp: EquivariantModule, module: GradedModule, degree: int) -> Matrix:
    """(N_k)^G -> a_k for N = a^#; non-invariant coordinates go to zero."""
    weights = stack.weights
    piece = sharp.module.piece(degree)
    labels = _ambient_monomials(sharp, degree)
    zero = Polynomial.zero(weights.variables)
    dimension = module.piece_dimension(degree)
    columns = []
    for position in piece.basis:
        generator, monomial = labels[position]
        if any(e % a for e, a in zip(monomial.exponents, weights.weights)):
            columns.append((ZERO,) * dimension)
            continue
        column = [zero] * len(module.generator_degrees)
        column[generator] = Polynomial.monomial(monomial).descend(weights)
        columns.append(module.coordinates(degree, column))
    return Matrix.from_columns(columns, dimension)


def _saturated_augmentation(
    stack: StackDescriptor,
    module: GradedModule,
    pieces: SaturatedPieces,
    top: Sections,
    pairings: Sequence[Character],
    degree: int,
) -> Matrix:
    """C_0 -> a in degree k, sending s·(x^c ⊗ h) to s^# x^c h ∈ H^0(N~(k))^G = a_k."""
    weights = stack.weights
    descent = _descent_map(stack, pieces.module, module, degree)
    columns = []
    for vector, character in zip(top.space.basis, pairings):
        for monomial in stack.ring.piece(degree - character.norm).basis:
            pulled = Monomial(
                tuple(e * a + c for e, a, c in zip(monomial.exponents, weights.weights, character.residues))
            )
            columns.append(descent.apply(pieces.evaluate(pulled, vector)))
    return Matrix.from_columns(columns, module.piece_dimension(degree))


def left_resolution(
    stack: StackDescriptor, module: GradedModule, window: Iterable[int], degree_bound: int | None = None
) -> ResolutionCertificate:
    """0 -> C_n -> ... -> C_0 -> a -> 0 with C_j = ⊕_χ S(-j-|χ|) ⊗ H^0(Ω^j(j) ⊗ a^#)^{-χ}.

    The sections are taken from H^0_*(a^#), computed as Hom_T(m^d, a^#) when a is not saturated in degrees 0
    and 1; the strands are certified from the degree where a_k = H^0(a~(k)) and no term has higher cohomology.
    """
    table = beilinson_E1(stack, module, degree_bound)
    violation = table.first("q>0")
    if violation is not None:
        (p, q, residues, _), dimension = violation
        raise HypothesisError(p, q, residues, dimension)

    weights, ring = stack.weights, stack.ring
    cohomology = ModuleCohomology(module, degree_bound)
    cover_bound = cohomology.sheaf_bound(stack.n + 1)
    saturation = 0 if cover_bound is None else max(0, cover_bound)
    sharp = EquivariantModule.pullback(module, stack)
    pieces = saturated_pieces(sharp, saturation)
    multiplications = pieces.multiplications()
    all_sections = [sections(pieces, j, multiplications) for j in range(stack.n + 1)]
    _check_against_table(
        table, 0, [[(-character).residues for character in section.characters] for section in all_sections]
    )

    pairings = [[-character for character in section.characters] for section in all_sections]
    terms = {j: tuple(j + character.norm for character in pairings[j]) for j in range(stack.n + 1)}
    differentials = {
        j: _invariant_differential(
            weights,
            [contraction(all_sections[j], all_sections[j - 1], l) for l in range(weights.variables)],
            all_sections[j - 1].dimension,
            pairings[j],
        )
        for j in range(1, stack.n + 1)
    }
    augmentation = (
        _left_augmentation(stack, sharp, all_sections[0], pairings[0], len(module.generator_degrees))
        if saturation == 0
        else None
    )

    complex_ = require_complex(FreeComplex.create(ring, terms, differentials, augmentation))
    degrees, n0 = _certified_degrees(
        window, sheaf_window_start(stack, complex_, cohomology.sheaf_bound(), saturation or None)
    )
    reports = []
    for degree in degrees:
        dimensions = [complex_.strand_dimension(j, degree) for j in range(stack.n, -1, -1)]
        maps = [complex_.strand_map(j, degree) for j in range(stack.n, 0, -1)]
        dimensions.append(module.piece_dimension(degree))
        if augmentation is None:
            maps.append(_saturated_augmentation(stack, module, pieces, all_sections[0], pairings[0], degree))
        else:
            maps.append(
                module.piece(degree).coordinate_map()
                @ ring.map_piece(augmentation, complex_.term(0), module.generator_degrees, degree)
            )
        reports.append(
            StrandReport(certify_sequence(dimensions, maps, degree, positions=[*range(stack.n, -1, -1), -1]))
        )
    logger.debug("left resolution ranks %s, certified from %d", [complex_.rank(j) for j in range(stack.n + 1)], n0)
    notes = () if saturation == 0 else (f"sections taken from Hom(m^{saturation}, a^#)",)
    return ResolutionCertificate(
        "left",
        complex_,
        augmentation,
        table,
        "H^q = 0 for q > 0",
        StrandReport.merge([*reports, StrandReport(notes=notes)], n0),
    )


@dataclass(frozen=True)
class TopCohomology:
    """Hom_T(Ω^p(p) ⊗ N, ω_T)_0, dual to H^n(Ω^p(p) ⊗ N); a vector lists ψ(e_g) ∈ T_{g-n-1} generator by
    generator and ``characters[ψ]`` is the character by which ψ shifts."""

    p: int
    module: EquivariantModule
    space: Subspace
    characters: tuple[Character, ...]

    @property
    def dimension(self) -> int:
        return self.space.rank

    @property
    def dual_degrees(self) -> tuple[int, ...]:
        return _dual_degrees(self.module)


def _dual_degrees(module: EquivariantModule) -> tuple[int, ...]:
    variables = module.cover.variables
    return tuple(variables - degree for degree in module.module.generator_degrees)


def top_cohomology(stack: StackDescriptor, sharp: EquivariantModule, p: int) -> TopCohomology:
    weights, cover = stack.weights, stack.cover
    twisted = EquivariantModule.differentials(stack, p).twist(p).tensor(sharp)
    graded = twisted.module
    source = _dual_degrees(twisted)
    target = tuple(cover.variables - degree for degree in graded.relation_degrees)
    matrix = cover.map_piece(graded.relations.transpose(), source, target, 0)
    omega = total_character(weights)
    labels = [
        character_of(weights, monomial) + omega - character
        for degree, character in zip(source, twisted.generator_characters)
        for monomial in cover.piece(-degree).basis
    ]
    space, characters = _labelled_kernel(matrix, labels)
    return TopCohomology(p, twisted, space, tuple(characters))


def _contraction_generators(stack: StackDescriptor, p: int, l: int, size: int) -> PolynomialMatrix:
    """ι_l: Ω^p(p) ⊗ N -> Ω^{p-1}(p-1) ⊗ N on generators, e_J ↦ ι_l δ(e_J) = -δ(ι_l e_J)."""
    variables = stack.weights.variables
    upper = list(itertools.combinations(range(variables), p + 1))
    lower = {subset: position for position, subset in enumerate(itertools.combinations(range(variables), p))}
    rows = (len(lower) if p > 1 else 1) * size
    zero = Polynomial.zero(variables)
    entries: dict[tuple[int, int], Polynomial] = {}
    for s, subset in enumerate(upper):
        if l not in subset:
            continue
        r = subset.index(l)
        rest = subset[:r] + subset[r + 1 :]
        sign = -1 if r % 2 == 0 else 1
        if p > 1:
            target, value = lower[rest], Polynomial.constant(sign, variables)
        else:
            target, value = 0, Polynomial.variable(rest[0], variables).scale(sign)
        for b in range(size):
            entries[target * size + b, s * size + b] = value
    return PolynomialMatrix.from_function(rows, len(upper) * size, variables, lambda i, j: entries.get((i, j), zero))


def _top_contraction(
    stack: StackDescriptor, upper: TopCohomology, lower: TopCohomology, l: int, size: int
) -> list[Vector]:
    """Coordinates of ι_l w in H^n(Ω^{p-1}(p-1) ⊗ N) for the dual basis w of H^n(Ω^p(p) ⊗ N), read off the
    pullback ψ ↦ ψ ∘ ι_l."""
    generators = _contraction_generators(stack, upper.p, l, size)
    pullback = stack.cover.map_piece(generators.transpose(), lower.dual_degrees, upper.dual_degrees, 0)
    rows = [upper.space.coordinates(pullback.apply(vector)) for vector in lower.space.basis]
    return [tuple(row[column] for row in rows) for column in range(upper.dimension)]


def right_resolution(
    stack: StackDescriptor, module: GradedModule, window: Iterable[int], degree_bound: int | None = None
) -> ResolutionCertificate:
    """0 -> a -> R^0 -> ... -> R^n -> 0 with R^i = ⊕_χ S(-(n-i)-|χ|) ⊗ H^n(Ω^{n-i}(n-i) ⊗ a^#)^{-χ} at homological
    index -i, under H^q(Ω^p(p) ⊗ a^#) = 0 for q < n; the H^n spaces are the duals of Hom(Ω^p(p) ⊗ a^#, ω_T)."""
    table = beilinson_E1(stack, module, degree_bound)
    violation = table.first("q<n")
    if violation is not None:
        (p, q, residues, _), dimension = violation
        raise HypothesisError(p, q, residues, dimension)

    weights, ring, cover = stack.weights, stack.ring, stack.cover
    n = stack.n
    sharp = EquivariantModule.pullback(module, stack)
    size = len(module.generator_degrees)
    spaces = [top_cohomology(stack, sharp, p) for p in range(n + 1)]
    _check_against_table(table, n, [[character.residues for character in space.characters] for space in spaces])

    terms = {p - n: tuple(p + character.norm for character in spaces[p].characters) for p in range(n + 1)}
    differentials = {
        p - n: _invariant_differential(
            weights,
            [_top_contraction(stack, spaces[p], spaces[p - 1], l, size) for l in range(weights.variables)],
            spaces[p - 1].dimension,
            spaces[p].characters,
        )
        for p in range(1, n + 1)
    }

    top = spaces[n]
    rows = []
    for vector, character in zip(top.space.basis, top.characters):
        column = cover.vector_to_column(top.dual_degrees, 0, vector)
        rows.append([_divide_lowest(entry, character).descend(weights) for entry in column])
    augmentation = PolynomialMatrix.from_rows(rows, weights.variables, size)

    complex_ = require_complex(FreeComplex.create(ring, terms, differentials))
    degrees, n0 = _certified_degrees(
        window, sheaf_window_start(stack, complex_, ModuleCohomology(module, degree_bound).sheaf_bound())
    )
    reports = []
    for degree in degrees:
        dimensions = [module.piece_dimension(degree)] + [complex_.strand_dimension(-i, degree) for i in range(n + 1)]
        maps = [
            ring.map_piece(augmentation, module.generator_degrees, complex_.term(0), degree).select_columns(
                module.piece(degree).basis
            )
        ]
        maps.extend(complex_.strand_map(1 - i, degree) for i in range(1, n + 1))
        reports.append(StrandReport(certify_sequence(dimensions, maps, degree, positions=[1, *range(0, -n - 1, -1)])))
    logger.debug("right resolution ranks %s, certified from %d", [complex_.rank(-i) for i in range(n + 1)], n0)
    return ResolutionCertificate(
        "right",
        complex_,
        augmentation,
        table,
        "H^q(Ω^j(j) ⊗ a^#) = 0 for q < n",
        StrandReport.merge(reports, n0),
    )


def eigen_table(stack: StackDescriptor, p: int, twists: Iterable[int]) -> CohomologyTable:
    """bott_eigen over a range of twists, keyed (p, q, χ, t)."""
    entries = SortedDict()
    for t in twists:
        for character, values in bott_eigen(stack, p, t).items():
            for q, dimension in enumerate(values):
                if dimension:
                    entries[p, q, character.residues, t] = dimension
    return CohomologyTable(stack.weights, entries)

