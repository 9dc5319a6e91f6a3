from __future__ import annotations

from collections.abc import Sequence

from pykoszul.algebra_objects.configurations import Configurations, Window
from pykoszul.algebra_objects.errors import ValidationError
from pykoszul.algebra_objects.free_modules import ChainMap, FreeComplex, PolynomialMatrix
from pykoszul.algebra_objects.graded import GradedAlgebra, GradedModule
from pykoszul.algebra_objects.monomials import WeightVector
from pykoszul.algebra_objects.polynomials import parse_polynomial
from pykoszul.algebra_objects.stacks import StackDescriptor, validate_weights
from pykoszul.jobs.parameters import keyword_parameter, positional_parameter
from pykoszul.jobs.parsers import job_document


@job_document
class ModuleInput:
    generators: list[int] = positional_parameter()
    relations: list[list[str]] = keyword_parameter(default_factory=list)
    relation_degrees: list[int] = keyword_parameter(default_factory=list)
    twist: int = keyword_parameter(default=0)


@job_document
class ComplexInput:
    """``terms[i]`` holds the generator degrees at homological index ``low + i``; ``differentials[i]`` is the
    matrix of d: C_{low+i+1} -> C_{low+i}, one row of polynomial strings per generator of the target."""

    terms: list[list[int]] = positional_parameter()
    differentials: list[list[list[str]]] = keyword_parameter(default_factory=list)
    low: int = keyword_parameter(default=0)


@job_document
class MapInput:
    """``matrices[i]`` is the component at homological index ``low + i``."""

    matrices: list[list[list[str]]] = positional_parameter()
    low: int = keyword_parameter(default=0)


def build_weights(weights: Sequence[int]) -> WeightVector:
    return WeightVector(tuple(weights))


def build_algebra(weights: Sequence[int], relations: Sequence[str] = ()) -> GradedAlgebra:
    vector = build_weights(weights)
    return GradedAlgebra(vector, tuple(parse_polynomial(relation, vector.variables) for relation in relations))


def build_matrix(rows: Sequence[Sequence[str]], shape: tuple[int, int], variables: int, name: str) -> PolynomialMatrix:
    if len(rows) != shape[0] or any(len(row) != shape[1] for row in rows):
        raise ValidationError(f"{name} must be a {shape[0]}x{shape[1]} matrix")
    return PolynomialMatrix.from_rows(
        [[parse_polynomial(entry, variables) for entry in row] for row in rows], variables, shape[1]
    )


def _infer_relation_degrees(
    algebra: GradedAlgebra, generators: Sequence[int], relations: PolynomialMatrix
) -> list[int]:
    degrees = []
    for j in range(relations.cols):
        for i, entry in enumerate(relations.column(j)):
            entry_degree = entry.degree(algebra.weights)
            if entry_degree is not None:
                degrees.append(entry_degree + generators[i])
                break
        else:
            raise ValidationError(f"module.relations column {j} is zero, give module.relation_degrees")
    return degrees


def build_module(algebra: GradedAlgebra, module: ModuleInput) -> GradedModule:
    if not module.generators:
        raise ValidationError("module.generators must not be empty")
    if module.relation_degrees and not module.relations:
        raise ValidationError("module.relation_degrees given without module.relations")
    rows = module.relations or [[] for _ in module.generators]
    relations = build_matrix(
        rows,
        (len(module.generators), len(rows[0])),
        algebra.variables,
        "module.relations",
    )
    relation_degrees = list(module.relation_degrees) or _infer_relation_degrees(algebra, module.generators, relations)
    return GradedModule(algebra, tuple(module.generators), relations, tuple(relation_degrees)).twist(module.twist)


def build_complex(algebra: GradedAlgebra, complex_input: ComplexInput, name: str = "complex") -> FreeComplex:
    terms = {complex_input.low + i: degrees for i, degrees in enumerate(complex_input.terms)}
    if len(complex_input.differentials) > max(len(complex_input.terms) - 1, 0):
        raise ValidationError(f"{name} has more differentials than gaps between terms")
    differentials = {}
    for i, rows in enumerate(complex_input.differentials):
        index = complex_input.low + i + 1
        differentials[index] = build_matrix(
            rows,
            (len(terms.get(index - 1, ())), len(terms.get(index, ()))),
            algebra.variables,
            f"{name}.differentials[{i}]",
        )
    return FreeComplex.create(algebra, terms, differentials)


def build_map(source: FreeComplex, target: FreeComplex, map_input: MapInput, name: str = "map") -> ChainMap:
    maps = {}
    for i, rows in enumerate(map_input.matrices):
        index = map_input.low + i
        maps[index] = build_matrix(
            rows, (target.rank(index), source.rank(index)), source.variables, f"{name}.matrices[{i}]"
        )
    return ChainMap(source, target, maps)


def build_stack(weights: Sequence[int]) -> StackDescriptor:
    return validate_weights(weights)


def window_of(configurations: Configurations, degrees: tuple[int, int] | None = None) -> range:
    window: Window = degrees if degrees is not None else configurations.window
    if window[0] > window[1]:
        raise ValidationError(f"range {window[0]}..{window[1]} is empty")
    return range(window[0], window[1] + 1)


def degree_bound(module: GradedModule, configurations: Configurations) -> int | None:
    if configurations.resolution_slack is None:
        return None
    return max(module.presentation_degrees()) + configurations.resolution_slack
