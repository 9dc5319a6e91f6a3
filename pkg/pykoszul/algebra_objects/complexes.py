from __future__ import annotations

import logging
from collections.abc import Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal

from sortedcontainers import SortedDict

from pykoszul.algebra_objects.errors import NotAComplexError, ValidationError
from pykoszul.algebra_objects.free_modules import ChainMap, FreeComplex, PolynomialMatrix, block_polynomial_matrix
from pykoszul.algebra_objects.linear import ZERO, Matrix
from pykoszul.algebra_objects.monomials import Monomial, Polynomial

logger = logging.getLogger(__name__)

Window = tuple[int, int]


@dataclass(frozen=True)
class ComplexVerdict:
    passed: bool
    index: int | None = None
    entry: tuple[int, int] | None = None
    message: str = ""


def check_complex(complex_: FreeComplex) -> ComplexVerdict:
    algebra = complex_.algebra
    for index, matrix in sorted(complex_.differentials.items()):
        if (matrix.rows, matrix.cols) != (complex_.rank(index - 1), complex_.rank(index)):
            return ComplexVerdict(False, index, None, f"d_{index} has shape {matrix.rows}x{matrix.cols}")
        offending = algebra.check_homogeneous(matrix, complex_.term(index), complex_.term(index - 1))
        if offending is not None:
            return ComplexVerdict(False, index, offending, f"d_{index} entry {offending} is not homogeneous")
    for index in complex_.indices():
        square = complex_.differential(index - 1) @ complex_.differential(index)
        entry = next(((i, j) for i, j, _ in square.nonzero_entries()), None)
        if entry is not None:
            return ComplexVerdict(False, index, entry, f"d_{index - 1} d_{index} is nonzero at {entry}")
    return ComplexVerdict(True)


def require_complex(complex_: FreeComplex) -> FreeComplex:
    verdict = check_complex(complex_)
    if not verdict.passed:
        raise NotAComplexError(verdict.message)
    return complex_


def check_chain_map(chain_map: ChainMap) -> int | None:
    """First index where the square with the differentials fails to commute."""
    source, target = chain_map.source, chain_map.target
    for index in chain_map.indices():
        left = target.differential(index) @ chain_map.map(index)
        right = chain_map.map(index - 1) @ source.differential(index)
        if not (left - right).is_zero():
            return index
    return None


def require_chain_map(chain_map: ChainMap) -> ChainMap:
    for index in chain_map.indices():
        matrix = chain_map.map(index)
        if (matrix.rows, matrix.cols) != (chain_map.target.rank(index), chain_map.source.rank(index)):
            raise ValidationError(f"chain map component {index} has shape {matrix.rows}x{matrix.cols}")
    index = check_chain_map(chain_map)
    if index is not None:
        raise ValidationError(f"invalid chain map: square at index {index} does not commute")
    return chain_map


def cone(chain_map: ChainMap) -> FreeComplex:
    """cone(f)_i = F_{i-1} ⊕ G_i with differential [[-d_F, 0], [f, d_G]]."""
    require_chain_map(chain_map)
    source, target = chain_map.source, chain_map.target
    variables = source.variables
    low = min(source.low + 1, target.low)
    high = max(source.high + 1, target.high)
    terms = {index: source.term(index - 1) + target.term(index) for index in range(low, high + 1)}
    differentials = {}
    for index in range(low + 1, high + 1):
        differentials[index] = block_polynomial_matrix(
            [
                [-source.differential(index - 1), None],
                [chain_map.map(index - 1), target.differential(index)],
            ],
            [source.rank(index - 2), target.rank(index - 1)],
            [source.rank(index - 1), target.rank(index)],
            variables,
        )
    return FreeComplex.create(source.algebra, terms, differentials)


def homology_strand(complex_: FreeComplex, index: int, degree: int) -> int:
    dimension = complex_.strand_dimension(index, degree)
    if dimension == 0:
        return 0
    outgoing = complex_.strand_map(index, degree).rank() if complex_.rank(index - 1) else 0
    incoming = complex_.strand_map(index + 1, degree).rank() if complex_.rank(index + 1) else 0
    return dimension - outgoing - incoming


def homology_table(complex_: FreeComplex, window: Window) -> SortedDict:
    """(index, degree) -> dim H_index in that internal degree, over all indices and degrees of the window."""
    return SortedDict(
        {
            (index, degree): homology_strand(complex_, index, degree)
            for index in range(complex_.low - 1, complex_.high + 2)
            for degree in range(window[0], window[1] + 1)
        }
    )


def euler_characteristics(complex_: FreeComplex, window: Window) -> dict[int, int]:
    return {
        degree: sum((-1) ** (index % 2) * complex_.strand_dimension(index, degree) for index in complex_.indices())
        for degree in range(window[0], window[1] + 1)
    }


@dataclass(frozen=True)
class HomStrand:
    """Degree-t piece of Hom(F, G) in homological degree k, Hom_k = ⊕_i Hom(F_i, G_{i+k}).

    Every basis element is labelled (i, a, b, monomial): the map sending generator a of F_i to
    monomial · generator b of G_{i+k}.
    """

    k: int
    t: int
    labels: tuple[tuple[int, int, int, Monomial], ...]
    offsets: dict[tuple[int, int, int], int] = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.labels)


def hom_strand(source: FreeComplex, target: FreeComplex, k: int, t: int) -> HomStrand:
    algebra = source.algebra
    labels = []
    offsets = {}
    for index in source.indices():
        for a, a_degree in enumerate(source.term(index)):
            for b, b_degree in enumerate(target.term(index + k)):
                offsets[index, a, b] = len(labels)
                labels.extend((index, a, b, monomial) for monomial in algebra.piece(a_degree - b_degree + t).basis)
    return HomStrand(k, t, tuple(labels), offsets)


def hom_differential(source: FreeComplex, target: FreeComplex, k: int, t: int) -> Matrix:
    """D: Hom_k -> Hom_{k-1}, D(φ) = d_G φ - (-1)^k φ d_F, in internal degree t."""
    algebra = source.algebra
    domain = hom_strand(source, target, k, t)
    codomain = hom_strand(source, target, k - 1, t)
    sign = Fraction(-1) if k % 2 == 0 else Fraction(1)
    values: dict[tuple[int, int], Fraction] = {}

    def accumulate(
        column: int, block: tuple[int, int, int], degree: int, polynomial: Polynomial, factor: Fraction
    ) -> None:
        if polynomial.is_zero() or algebra.piece_dimension(degree) == 0:
            return
        offset = codomain.offsets[block]
        for row, value in enumerate(algebra.coordinates(degree, polynomial)):
            if value:
                key = (offset + row, column)
                values[key] = values.get(key, ZERO) + factor * value

    for column, (index, a, b, monomial) in enumerate(domain.labels):
        element = Polynomial.monomial(monomial)
        a_degree = source.term(index)[a]
        target_differential = target.differential(index + k)
        for b_low, b_low_degree in enumerate(target.term(index + k - 1)):
            accumulate(
                column,
                (index, a, b_low),
                a_degree - b_low_degree + t,
                target_differential.entries[b_low][b] * element,
                Fraction(1),
            )
        source_differential = source.differential(index + 1)
        b_degree = target.term(index + k)[b]
        for a_high, a_high_degree in enumerate(source.term(index + 1)):
            accumulate(
                column,
                (index + 1, a_high, b),
                a_high_degree - b_degree + t,
                element * source_differential.entries[a][a_high],
                sign,
            )
    return Matrix.from_sparse(codomain.dimension, domain.dimension, values)


def hom_homology(source: FreeComplex, target: FreeComplex, k: int, t: int) -> int:
    dimension = hom_strand(source, target, k, t).dimension
    if dimension == 0:
        return 0
    return dimension - hom_differential(source, target, k, t).rank() - hom_differential(source, target, k + 1, t).rank()


def hom_derived(source: FreeComplex, target: FreeComplex, r: int, window: Window = (0, 0)) -> int:
    """dim Hom_D(F, G[r]) summed over the internal degrees t of the window, computed as H_{-r} of Hom(F, G)."""
    if window[0] > window[1]:
        raise ValidationError(f"empty window {window}")
    if source.algebra is not target.algebra and source.algebra.weights != target.algebra.weights:
        raise ValidationError("complexes live over different rings")
    return sum(hom_homology(source, target, -r, t) for t in range(window[0], window[1] + 1))


def totalization(sequence: Sequence[FreeComplex], maps: Sequence[ChainMap]) -> FreeComplex:
    """Tot_n = ⊕_p (a_p[p])_n with differential d_internal + (-1)^p d_p, where d_internal is the differential
    (-1)^p d_{a_p} of the shifted term; summands ordered by p."""
    _check_complex_of_complexes(sequence, maps)
    algebra = sequence[0].algebra
    variables = sequence[0].variables
    low = min(p + complex_.low for p, complex_ in enumerate(sequence))
    high = max(p + complex_.high for p, complex_ in enumerate(sequence))

    def component_sizes(n: int) -> list[int]:
        return [complex_.rank(n - p) for p, complex_ in enumerate(sequence)]

    terms = {n: sum((complex_.term(n - p) for p, complex_ in enumerate(sequence)), ()) for n in range(low, high + 1)}
    differentials = {}
    for n in range(low + 1, high + 1):
        blocks: list[list[PolynomialMatrix | None]] = []
        for q in range(len(sequence)):
            row: list[PolynomialMatrix | None] = []
            for p, complex_ in enumerate(sequence):
                if q == p:
                    internal = complex_.differential(n - p)
                    row.append(internal.scale(-1) if p % 2 else internal)
                elif q == p - 1:
                    component = maps[p - 1].map(n - p)
                    row.append(component.scale(-1) if p % 2 else component)
                else:
                    row.append(None)
            blocks.append(row)
        differentials[n] = block_polynomial_matrix(blocks, component_sizes(n - 1), component_sizes(n), variables)
    return FreeComplex.create(algebra, terms, differentials)


def _check_complex_of_complexes(sequence: Sequence[FreeComplex], maps: Sequence[ChainMap]) -> None:
    if not sequence:
        raise ValidationError("a complex of complexes needs at least one term")
    if len(maps) != len(sequence) - 1:
        raise ValidationError(f"{len(sequence)} terms need {len(sequence) - 1} maps")
    for p, chain_map in enumerate(maps, start=1):
        if chain_map.source is not sequence[p] or chain_map.target is not sequence[p - 1]:
            raise ValidationError(f"map d_{p} must go from a_{p} to a_{p - 1}")
        if check_chain_map(chain_map) is not None:
            raise NotAComplexError(f"not a complex of complexes: d_{p} is not a chain map")
    for p in range(1, len(maps)):
        composite = maps[p - 1].compose(maps[p])
        if any(not composite.map(index).is_zero() for index in composite.indices()):
            raise NotAComplexError("not a complex of complexes")


@dataclass(frozen=True)
class HypothesisReport:
    """dim Hom(a_p[r], b_q) for p > q and 1 <= r <= r_max; the vanishing of all entries is the uniqueness
    condition for convolutions."""

    entries: SortedDict
    r_max: int

    @property
    def violations(self) -> list[tuple[int, int, int]]:
        return [key for key, dimension in self.entries.items() if dimension]

    @property
    def holds(self) -> bool:
        return not self.violations


def hypothesis_report(
    sequence: Sequence[FreeComplex],
    other: Sequence[FreeComplex] | None = None,
    r_max: int | None = None,
    window: Window = (0, 0),
) -> HypothesisReport:
    other = sequence if other is None else other
    if r_max is None:
        r_max = len(sequence) + sequence[0].algebra.weights.n + 1
    entries = SortedDict()
    for p, source in enumerate(sequence):
        for q, target in enumerate(other):
            if p <= q:
                continue
            for r in range(1, r_max + 1):
                entries[p, q, r] = hom_derived(source, target, -r, window)
    return HypothesisReport(entries, r_max)


@dataclass(frozen=True)
class ConvolutionTrace:
    result: FreeComplex
    intermediates: tuple[FreeComplex, ...]
    morphism: ChainMap
    hypothesis: HypothesisReport
    side: Literal["right", "left"] = "right"
    bracketing: Literal["top", "bottom"] = "top"


def _into_block(
    source: FreeComplex, target: FreeComplex, matrices: dict[int, PolynomialMatrix], position: Literal["first", "last"]
) -> ChainMap:
    """Chain map into ``target`` whose only nonzero block lands in its first or last summand."""
    maps = {}
    for index, matrix in matrices.items():
        padding = target.rank(index) - matrix.rows
        zero = PolynomialMatrix.zeros(padding, matrix.cols, source.variables)
        blocks = [[matrix], [zero]] if position == "first" else [[zero], [matrix]]
        heights = [matrix.rows, padding] if position == "first" else [padding, matrix.rows]
        maps[index] = block_polynomial_matrix(blocks, heights, [matrix.cols], source.variables)
    return ChainMap(source, target, maps)


def _from_last_block(source: FreeComplex, target: FreeComplex, matrices: dict[int, PolynomialMatrix]) -> ChainMap:
    """Chain map out of ``source`` that vanishes off its trailing summand."""
    maps = {}
    for index, matrix in matrices.items():
        padding = source.rank(index) - matrix.cols
        maps[index] = block_polynomial_matrix(
            [[None, matrix]], [matrix.rows], [padding, matrix.cols], source.variables
        )
    return ChainMap(source, target, maps)


def _projection(source: FreeComplex, target: FreeComplex) -> ChainMap:
    """Projection from ``source`` onto its leading summand ``target``."""
    maps = {}
    for index in source.indices():
        width = source.rank(index) - target.rank(index)
        maps[index] = block_polynomial_matrix(
            [[PolynomialMatrix.identity(target.rank(index), source.variables), None]],
            [target.rank(index)],
            [target.rank(index), width],
            source.variables,
        )
    return ChainMap(source, target, maps)


def _inclusion(source: FreeComplex, target: FreeComplex) -> ChainMap:
    """Inclusion of ``source`` as the trailing summand of ``target``."""
    return _into_block(
        source,
        target,
        {index: PolynomialMatrix.identity(source.rank(index), source.variables) for index in source.indices()},
        "last",
    )


def right_convolution(
    sequence: Sequence[FreeComplex],
    maps: Sequence[ChainMap],
    window: Window = (0, 0),
    bracketing: Literal["top", "bottom"] = "top",
    r_max: int | None = None,
) -> ConvolutionTrace:
    """Convolution of a_m -> ... -> a_0 by iterated cones, with a_p in homological shift p.

    ``top`` takes a'_{p-1} = cone(a'_p -> a_{p-1}) starting from a'_m = a_m; ``bottom`` starts from
    cone(a_1 -> a_0) and attaches a_p[p-1] one at a time.
    """
    _check_complex_of_complexes(sequence, maps)
    report = hypothesis_report(sequence, r_max=r_max, window=window)
    m = len(sequence) - 1
    if m == 0:
        identity = ChainMap.identity(sequence[0])
        return ConvolutionTrace(sequence[0], (sequence[0],), identity, report, "right", bracketing)

    intermediates: list[FreeComplex] = []
    if bracketing == "top":
        current = sequence[m]
        intermediates.append(current)
        for p in range(m, 0, -1):
            # a_p is the trailing summand of a'_p
            step = _from_last_block(
                current, sequence[p - 1], {index: maps[p - 1].map(index) for index in sequence[p].indices()}
            )
            current = cone(step)
            intermediates.append(current)
            logger.debug("right convolution: cone at p=%d", p)
    else:
        current = cone(maps[0])
        intermediates.append(current)
        for p in range(2, m + 1):
            shifted = sequence[p].shift(p - 1)
            step = _into_block(
                shifted,
                current,
                {index: maps[p - 1].map(index - p + 1) for index in shifted.indices()},
                "first",
            )
            current = cone(step)
            intermediates.append(current)
            logger.debug("right convolution: attached a_%d", p)

    morphism = _inclusion(sequence[0], current)
    return ConvolutionTrace(current, tuple(intermediates), morphism, report, "right", bracketing)


def left_convolution(
    sequence: Sequence[FreeComplex],
    maps: Sequence[ChainMap],
    window: Window = (0, 0),
    r_max: int | None = None,
) -> ConvolutionTrace:
    """Convolution with a morphism to a_m: a'_1 = cone(d_1)[-1] and a'_p = cone(a_p -> a'_{p-1})[-1]."""
    _check_complex_of_complexes(sequence, maps)
    report = hypothesis_report(sequence, r_max=r_max, window=window)
    m = len(sequence) - 1
    if m == 0:
        return ConvolutionTrace(sequence[0], (sequence[0],), ChainMap.identity(sequence[0]), report, "left")

    current = cone(maps[0]).shift(-1)
    intermediates = [current]
    for p in range(2, m + 1):
        step = _into_block(
            sequence[p],
            current,
            {index: maps[p - 1].map(index) for index in sequence[p].indices()},
            "first",
        )
        current = cone(step).shift(-1)
        intermediates.append(current)
        logger.debug("left convolution: attached a_%d", p)
    return ConvolutionTrace(current, tuple(intermediates), _projection(current, sequence[m]), report, "left")


@dataclass(frozen=True)
class ConvolutionMorphism:
    chain_map: ChainMap
    hypothesis: HypothesisReport


def convolution_morphism(
    source_sequence: Sequence[FreeComplex],
    source_maps: Sequence[ChainMap],
    target_sequence: Sequence[FreeComplex],
    target_maps: Sequence[ChainMap],
    components: Sequence[ChainMap],
    window: Window = (0, 0),
    r_max: int | None = None,
) -> ConvolutionMorphism:
    """The map of totalizations induced by f_p: a_p -> b_p, with the table dim Hom(a_p[r], b_q), p > q, r > 0."""
    if len(components) != len(source_sequence) or len(source_sequence) != len(target_sequence):
        raise ValidationError("a morphism of complexes of complexes needs one component per term")
    for p, component in enumerate(components):
        require_chain_map(component)
        if p > 0:
            left = target_maps[p - 1].compose(component)
            right = components[p - 1].compose(source_maps[p - 1])
            if any(not (left.map(i) - right.map(i)).is_zero() for i in left.indices()):
                raise ValidationError(f"components do not commute with d_{p}")
    source = totalization(source_sequence, source_maps)
    target = totalization(target_sequence, target_maps)
    variables = source.variables
    maps = {}
    for n in source.indices():
        source_sizes = [complex_.rank(n - p) for p, complex_ in enumerate(source_sequence)]
        target_sizes = [complex_.rank(n - p) for p, complex_ in enumerate(target_sequence)]
        blocks = [
            [components[p].map(n - p) if p == q else None for p in range(len(components))]
            for q in range(len(components))
        ]
        maps[n] = block_polynomial_matrix(blocks, target_sizes, source_sizes, variables)
    report = hypothesis_report(source_sequence, target_sequence, r_max=r_max, window=window)
    return ConvolutionMorphism(ChainMap(source, target, maps), report)
