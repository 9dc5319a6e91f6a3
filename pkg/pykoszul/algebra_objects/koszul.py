from __future__ import annotations

import itertools
import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from fractions import Fraction

from pykoszul.algebra_objects.errors import BoundExhaustedError, ValidationError
from pykoszul.algebra_objects.graded import GradedAlgebra, GradedModule, PiecewiseAlgebra
from pykoszul.algebra_objects.linear import ZERO, Matrix, Subspace, kron, solve
from pykoszul.algebra_objects.monomials import Character, WeightVector, character_of
from pykoszul.algebra_objects.stacks import (
    EquivariantCohomology,
    EquivariantModule,
    euler_characteristic,
    line_euler_characteristic,
    module_euler_characteristic,
    subset_character,
    validate_weights,
)
from pykoszul.algebra_objects.strands import StrandReport, StrandRow, certify_sequence

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class VeroneseAlgebra(PiecewiseAlgebra):
    """A^(d) with pieces A^(d)_m = A_{dm}, known only through the multiplication tables of A."""

    base: PiecewiseAlgebra
    d: int

    def __post_init__(self) -> None:
        if self.d < 1:
            raise ValidationError(f"veronese degree must be positive, got {self.d}")

    def piece_dimension(self, degree: int) -> int:
        return self.base.piece_dimension(self.d * degree)

    def multiplication(self, left: int, right: int) -> Matrix:
        return self.base.multiplication(self.d * left, self.d * right)


def veronese(algebra: PiecewiseAlgebra, d: int) -> PiecewiseAlgebra:
    if d == 1:
        return algebra
    return VeroneseAlgebra(algebra, d)


@dataclass(eq=False)
class KoszulData:
    """The spaces B_m, each realized as the kernel of B_{m-1} ⊗ A_1 -> B_{m-2} ⊗ A_2.

    ``inclusions[m]`` is the matrix of B_m -> B_{m-1} ⊗ A_1, with column index ``i * dim A_1 + a``
    on the target. B_0 is the ground field and B_1 = A_1.
    """

    algebra: PiecewiseAlgebra
    inclusions: list[Matrix] = field(default_factory=list)
    _kernels: dict[tuple[int, int], Subspace] = field(default_factory=dict, repr=False)
    _embeddings: dict[int, Matrix] = field(default_factory=dict, repr=False)
    _leading: dict[int, Matrix] = field(default_factory=dict, repr=False)

    def __post_init__(self) -> None:
        if not self.inclusions:
            generators = self.algebra.piece_dimension(1)
            self.inclusions.extend([Matrix.identity(1), Matrix.identity(generators)])

    @property
    def generators(self) -> int:
        return self.algebra.piece_dimension(1)

    @property
    def computed(self) -> int:
        return len(self.inclusions) - 1

    def extend(self, m: int) -> None:
        while self.computed < m:
            step = len(self.inclusions)
            previous = self.inclusions[step - 1]
            multiplication = kron(Matrix.identity(self.b(step - 2)), self.algebra.multiplication(1, 1))
            relation = multiplication @ kron(previous, Matrix.identity(self.generators))
            self.inclusions.append(Subspace.kernel_of(relation).inclusion())
            logger.debug("B_%d has dimension %d", step, self.inclusions[-1].cols)

    def b(self, m: int) -> int:
        if m < 0:
            return 0
        self.extend(m)
        return self.inclusions[m].cols

    def inclusion(self, m: int) -> Matrix:
        self.extend(m)
        return self.inclusions[m]

    def embedding(self, m: int) -> Matrix:
        """B_m -> A_1^{⊗m}, the last factor varying fastest."""
        matrix = self._embeddings.get(m)
        if matrix is None:
            if m == 0:
                matrix = Matrix.identity(1)
            else:
                matrix = kron(self.embedding(m - 1), Matrix.identity(self.generators)) @ self.inclusion(m)
            self._embeddings[m] = matrix
        return matrix

    def leading_split(self, m: int) -> Matrix:
        """B_m -> A_1 ⊗ B_{m-1}, splitting off the first factor; column index ``x * dim B_{m-1} + u``."""
        matrix = self._leading.get(m)
        if matrix is None:
            lower = self.embedding(m - 1)
            block = lower.rows
            columns = []
            for column in self.embedding(m).columns():
                image: list[Fraction] = []
                for x in range(self.generators):
                    image.extend(solve(lower, column[x * block : (x + 1) * block]))
                columns.append(image)
            matrix = Matrix.from_columns(columns, self.generators * self.b(m - 1))
            self._leading[m] = matrix
        return matrix

    def dimensions(self, m_max: int) -> tuple[int, ...]:
        return tuple(self.b(m) for m in range(m_max + 1))

    def koszul_map(self, m: int, j: int) -> Matrix:
        """B_m ⊗ A_j -> B_{m-1} ⊗ A_{j+1}; the target is zero for m = 0."""
        source = self.b(m) * self.algebra.piece_dimension(j)
        if m == 0:
            return Matrix.zeros(0, source)
        split = kron(self.inclusion(m), Matrix.identity(self.algebra.piece_dimension(j)))
        return kron(Matrix.identity(self.b(m - 1)), self.algebra.multiplication(1, j)) @ split

    def r_piece(self, m: int, l: int) -> Subspace:
        """(R_m)_l inside B_m ⊗ A_l."""
        if m < 0 or l < 0:
            raise ValidationError("m and l must be nonnegative")
        if m == 0:
            return Subspace.whole(self.algebra.piece_dimension(l))
        kernel = self._kernels.get((m, l))
        if kernel is None:
            kernel = Subspace.kernel_of(self.koszul_map(m, l))
            self._kernels[m, l] = kernel
        return kernel


def b_spaces(algebra: PiecewiseAlgebra, m_max: int) -> KoszulData:
    if m_max < 0:
        raise ValidationError("m_max must be nonnegative")
    data = KoszulData(algebra)
    data.extend(m_max)
    return data


def r_piece(data: KoszulData, m: int, l: int) -> Subspace:
    return data.r_piece(m, l)


def _check_bounds(*bounds: int) -> None:
    if any(bound < 0 for bound in bounds):
        raise ValidationError("bounds must be nonnegative")


def koszul_check(data: KoszulData, m_max: int, k_max: int) -> StrandReport:
    """Exactness of the strands Σ_m B_m ⊗ A_{k-m} -> ℚ of the Koszul complex for k <= k_max, at homological
    positions m <= m_max."""
    _check_bounds(m_max, k_max)
    algebra = data.algebra
    reports = []
    for k in range(k_max + 1):
        top = min(m_max + 1, k)
        ms = list(range(top, -1, -1))
        dimensions = [data.b(m) * algebra.piece_dimension(k - m) for m in ms]
        maps = [data.koszul_map(m, k - m) for m in ms[:-1]]
        augmentation = Matrix.identity(1) if k == 0 else Matrix.zeros(0, dimensions[-1])
        rows = certify_sequence([*dimensions, augmentation.rows], [*maps, augmentation], k, positions=[*ms, -1])
        reports.append(StrandReport(tuple(row for row in rows if 0 <= row.position <= m_max)))
    return StrandReport.merge(reports)


@dataclass(frozen=True)
class FrobergRow:
    k: int
    alternating_sum: int
    expected: int
    complete: bool

    @property
    def holds(self) -> bool:
        return self.alternating_sum == self.expected


@dataclass(frozen=True)
class FrobergReport:
    rows: tuple[FrobergRow, ...]

    @property
    def passed(self) -> bool:
        return all(row.holds for row in self.rows if row.complete)


def froberg_check(data: KoszulData, m_max: int, k_max: int) -> FrobergReport:
    """Σ_m (-1)^m dim B_m dim A_{k-m} = δ_{k,0}, truncated at m_max; a row is complete when the truncation drops
    nothing, i.e. k <= m_max or B_{m_max+1} = 0."""
    _check_bounds(m_max, k_max)
    algebra = data.algebra
    vanishes_beyond = data.b(m_max + 1) == 0
    rows = []
    for k in range(k_max + 1):
        total = sum((-1) ** m * data.b(m) * algebra.piece_dimension(k - m) for m in range(min(k, m_max) + 1))
        rows.append(FrobergRow(k, total, 1 if k == 0 else 0, k <= m_max or vanishes_beyond))
    return FrobergReport(tuple(rows))


def seq_sheaf_check(data: KoszulData, m: int, l_range: Iterable[int]) -> StrandReport:
    """Degree-l strands of 0 -> R_m -> B_m ⊗ A -> B_{m-1} ⊗ A(1) -> ... -> A(m) -> 0.

    R_m sits at position m + 1 and B_j ⊗ A_{l+m-j} at position j.
    """
    _check_bounds(m)
    reports = []
    for l in l_range:
        _check_bounds(l)
        kernel = data.r_piece(m, l)
        js = list(range(m, -1, -1))
        dimensions = [kernel.rank] + [data.b(j) * data.algebra.piece_dimension(l + m - j) for j in js]
        maps = [kernel.inclusion()] + [data.koszul_map(j, l + m - j) for j in js[:-1]]
        reports.append(StrandReport(certify_sequence(dimensions, maps, l, positions=[m + 1, *js])))
    return StrandReport.merge(reports)


@dataclass(frozen=True)
class DiagonalStrand:
    """Strand at bidegree (k, l) of the resolution of the diagonal.

    ``dimensions[i]`` is dim A_{k-m} ⊗ (R_m)_l for m = k - i, the last entry is dim A_{k+l}; ``maps[i]`` goes from
    term i to term i + 1.
    """

    k: int
    l: int
    dimensions: tuple[int, ...]
    maps: tuple[Matrix, ...]

    @property
    def positions(self) -> tuple[int, ...]:
        return (*range(self.k, -1, -1), -1)

    @property
    def augmentation_dimension(self) -> int:
        return self.dimensions[-1]


def _absorb(data: KoszulData, i: int, j: int, l: int) -> Matrix:
    """A_i ⊗ (R_j)_l -> A_{i+1} ⊗ (R_{j-1})_l: split off the first A_1 factor of B_j and multiply it into A_i."""
    algebra = data.algebra
    source_r, target_r = data.r_piece(j, l), data.r_piece(j - 1, l)
    a_i, a_l = algebra.piece_dimension(i), algebra.piece_dimension(l)
    a_next = algebra.piece_dimension(i + 1)
    block = data.b(j - 1) * a_l
    split = kron(data.leading_split(j), Matrix.identity(a_l)) @ source_r.inclusion()
    split_columns = [[(row, value) for row, value in enumerate(column) if value] for column in split.columns()]
    multiplication = algebra.multiplication(i, 1)
    products = [
        [(row, value) for row, value in enumerate(column) if value] for column in multiplication.columns()
    ]
    values: dict[tuple[int, int], Fraction] = {}
    for p in range(a_i):
        for q, entries in enumerate(split_columns):
            image = [[ZERO] * block for _ in range(a_next)]
            for index, value in entries:
                x, rest = divmod(index, block)
                for s, coefficient in products[p * data.generators + x]:
                    image[s][rest] += value * coefficient
            for s, vector in enumerate(image):
                if not any(vector):
                    continue
                for row, coordinate in enumerate(target_r.coordinates(vector)):
                    if coordinate:
                        values[s * target_r.rank + row, p * source_r.rank + q] = coordinate
    return Matrix.from_sparse(a_next * target_r.rank, a_i * source_r.rank, values)


def diagonal_strand(data: KoszulData, k: int, l: int) -> DiagonalStrand:
    _check_bounds(k, l)
    algebra = data.algebra
    dimensions = [algebra.piece_dimension(k - m) * data.r_piece(m, l).rank for m in range(k, -1, -1)]
    maps = [_absorb(data, k - m, m, l) for m in range(k, 0, -1)]
    dimensions.append(algebra.piece_dimension(k + l))
    maps.append(algebra.multiplication(k, l))
    return DiagonalStrand(k, l, tuple(dimensions), tuple(maps))


def diagonal_strand_check(data: KoszulData, k: int, l: int) -> StrandReport:
    strand = diagonal_strand(data, k, l)
    return StrandReport(certify_sequence(strand.dimensions, strand.maps, (k, l), positions=strand.positions))


def ar_strand_check(data: KoszulData, m: int, l_range: Iterable[int]) -> StrandReport:
    """Degree-l strands of 0 -> A_0 ⊗ R_m -> A_1 ⊗ R_{m-1} -> ... -> A_m ⊗ R_0 -> A_{m+l} -> 0."""
    reports = []
    for l in l_range:
        strand = diagonal_strand(data, m, l)
        reports.append(StrandReport(certify_sequence(strand.dimensions, strand.maps, l, positions=strand.positions)))
    return StrandReport.merge(reports)


def diagonal_window_check(data: KoszulData, window: Sequence[int], n0: int = 0) -> StrandReport:
    """diagonal_strand_check over every bidegree of window x window with both degrees at least n0."""
    reports = [diagonal_strand_check(data, k, l) for k in window for l in window if k >= n0 and l >= n0]
    return StrandReport.merge(reports, n0)


def _b_characters(data: KoszulData, weights: WeightVector, algebra: GradedAlgebra, m: int) -> list[Character]:
    characters = [weights.trivial_character()]
    generators = [character_of(weights, monomial) for monomial in algebra.piece(1).basis]
    for step in range(1, m + 1):
        inclusion = data.inclusion(step)
        current = []
        for column in inclusion.columns():
            index = next(i for i, value in enumerate(column) if value)
            u, x = divmod(index, data.generators)
            current.append(characters[u] + generators[x])
        characters = current
    return characters


def _r_characters(data: KoszulData, weights: WeightVector, algebra: GradedAlgebra, m: int, l: int) -> list[Character]:
    b_characters = _b_characters(data, weights, algebra, m)
    monomials = [character_of(weights, monomial) for monomial in algebra.piece(l).basis]
    size = len(monomials)
    characters = []
    for vector in data.r_piece(m, l).basis:
        index = next(i for i, value in enumerate(vector) if value)
        u, f = divmod(index, size)
        characters.append(b_characters[u] + monomials[f])
    return characters


def _term_characters(
    data: KoszulData, weights: WeightVector, algebra: GradedAlgebra, i: int, m: int, l: int
) -> list[Character]:
    left = [character_of(weights, monomial) for monomial in algebra.piece(i).basis]
    right = _r_characters(data, weights, algebra, m, l)
    return [a + b for a in left for b in right]


def equivariant_strand_check(weights: WeightVector, k: int, l: int, invariant_only: bool = False) -> StrandReport:
    """The diagonal strand at (k, l) for the straight polynomial ring on n+1 variables, split into blocks by
    the diagonal character τ = χ_1 + χ_2 of G = Π μ_{a_i}; τ = 0 is the ΔG-invariant substrand.
    """
    weights.validate()
    algebra = GradedAlgebra.polynomial_ring(WeightVector.ones(weights.variables))
    data = KoszulData(algebra)
    strand = diagonal_strand(data, k, l)
    labels = [_term_characters(data, weights, algebra, k - m, m, l) for m in range(k, -1, -1)]
    labels.append([character_of(weights, monomial) for monomial in algebra.piece(k + l).basis])

    taus = [weights.trivial_character()] if invariant_only else sorted(set(weights.characters()))
    rows: list[StrandRow] = []
    for tau in taus:
        selected = [[index for index, character in enumerate(term) if character == tau] for term in labels]
        maps = [
            strand.maps[i].select_rows(selected[i + 1]).select_columns(selected[i]) for i in range(len(strand.maps))
        ]
        rows.extend(
            certify_sequence(
                [len(indices) for indices in selected], maps, (k, l), tau.residues, positions=strand.positions
            )
        )
    return StrandReport(tuple(rows))


def invariant_rows(report: StrandReport) -> StrandReport:
    return StrandReport(tuple(row for row in report.rows if row.character is not None and not any(row.character)))


@dataclass(frozen=True)
class EulerRow:
    k: int
    expansion: int
    expected: int

    @property
    def residual(self) -> int:
        return self.expansion - self.expected


@dataclass(frozen=True)
class EulerVerdict:
    rows: tuple[EulerRow, ...]

    @property
    def passed(self) -> bool:
        return not any(row.residual for row in self.rows)


def euler_kernel_check(data: KoszulData, module: GradedModule, window: Sequence[int], m_max: int) -> EulerVerdict:
    """χ(a(k)) = Σ_m (-1)^m χ(O(k-m)) χ(R_m ⊗ a) on P^n, with χ(R_m ⊗ a) = Σ_j (-1)^j dim B_{m-j} χ(a(j)).

    Over a weighted polynomial ring the identity runs on the straight cover, split by characters:
    χ(a(k)) = Σ_m (-1)^m Σ_χ χ(O(k-m-|χ|)) χ(Ω^m(m) ⊗ a^#)^{-χ} with the Koszul pieces e_I of character Σ_{i∈I} e_i.
    """
    algebra = data.algebra
    if not isinstance(algebra, GradedAlgebra) or not algebra.is_polynomial_ring:
        raise ValidationError("euler_kernel_check needs a polynomial ring")
    if module.algebra.weights != algebra.weights:
        raise ValidationError("module lives over a different ring")
    weights = algebra.weights
    if set(weights.weights) != {1}:
        return _weighted_euler_check(weights, module, window, m_max)
    if data.b(m_max + 1):
        raise BoundExhaustedError(f"B_{m_max + 1} is nonzero, m_max must be at least {weights.n + 1}", m_max)

    twists: dict[int, int] = {}

    def chi(j: int) -> int:
        if j not in twists:
            twists[j] = module_euler_characteristic(module, j)
        return twists[j]

    rows = []
    for k in window:
        expansion = 0
        for m in range(m_max + 1):
            kernel = sum((-1) ** j * data.b(m - j) * chi(j) for j in range(m + 1))
            expansion += (-1) ** m * line_euler_characteristic(weights, k - m) * kernel
        rows.append(EulerRow(k, expansion, chi(k)))
    return EulerVerdict(tuple(rows))


def _weighted_euler_check(
    weights: WeightVector, module: GradedModule, window: Sequence[int], m_max: int
) -> EulerVerdict:
    stack = validate_weights(weights)
    if m_max < weights.variables:
        raise BoundExhaustedError(f"Λ^{m_max + 1} V is nonzero, m_max must be at least {weights.variables}", m_max)
    cover = EquivariantCohomology(EquivariantModule.pullback(module, stack))
    twists: dict[int, dict[Character, int]] = {}

    def chi(j: int) -> dict[Character, int]:
        if j not in twists:
            twists[j] = {character: euler_characteristic(values) for character, values in cover.at(j).items()}
        return twists[j]

    subsets = {
        size: [subset_character(weights, subset) for subset in itertools.combinations(range(weights.variables), size)]
        for size in range(weights.variables + 1)
    }
    kernels: dict[int, dict[Character, int]] = {}
    for m in range(m_max + 1):
        kernel: dict[Character, int] = {}
        for j in range(m + 1):
            sign = -1 if j % 2 else 1
            for character, value in chi(j).items():
                for shift in subsets.get(m - j, []):
                    kernel[character + shift] = kernel.get(character + shift, 0) + sign * value
        kernels[m] = kernel

    rows = []
    for k in window:
        expansion = 0
        for m, kernel in kernels.items():
            sign = -1 if m % 2 else 1
            for character, value in kernel.items():
                expansion += sign * value * line_euler_characteristic(weights, k - m - (-character).norm)
        rows.append(EulerRow(k, expansion, module_euler_characteristic(module, k)))
    logger.debug("weighted Euler kernel check over %s", list(weights.weights))
    return EulerVerdict(tuple(rows))
