import pytest
from parametrization import Parametrization

from pykoszul.algebra_objects.errors import BoundExhaustedError, InhomogeneousError, ValidationError
from pykoszul.algebra_objects.free_modules import PolynomialMatrix
from pykoszul.algebra_objects.graded import (
    GradedAlgebra,
    GradedMap,
    GradedModule,
    default_degree_bound,
    free_resolution,
    is_minimal,
    kernel_piece,
    module_piece,
    twist,
)
from pykoszul.algebra_objects.koszul import veronese
from pykoszul.algebra_objects.monomials import WeightVector
from pykoszul.algebra_objects.polynomials import parse_polynomial


def polynomial_ring(*weights):
    return GradedAlgebra.polynomial_ring(weights)


def quotient(weights, *relations):
    return GradedAlgebra(WeightVector(weights), tuple(parse_polynomial(text, len(weights)) for text in relations))


def residue_field(algebra):
    return GradedModule.cyclic(
        algebra, [parse_polynomial(f"x{i}", algebra.variables) for i in range(algebra.variables)]
    )


@Parametrization.autodetect_parameters()
@Parametrization.case(
    name="cubic_curve_degree_3", algebra=quotient((1, 1, 1), "x0^3 + x1^3 + x2^3"), degree=3, expected=9
)
@Parametrization.case(
    name="cubic_curve_degree_4", algebra=quotient((1, 1, 1), "x0^3 + x1^3 + x2^3"), degree=4, expected=12
)
@Parametrization.case(name="weighted_line_degree_5", algebra=polynomial_ring(1, 2), degree=5, expected=3)
@Parametrization.case(name="negative_degree", algebra=polynomial_ring(1, 1), degree=-1, expected=0)
@Parametrization.case(name="plane_conic", algebra=quotient((1, 1, 1), "x0*x1 - x2^2"), degree=2, expected=5)
def test_piece_dimension(algebra, degree, expected):
    assert algebra.piece_dimension(degree) == expected


def test_veronese_pieces():
    algebra = veronese(polynomial_ring(1, 1), 2)

    assert [algebra.piece_dimension(degree) for degree in range(4)] == [1, 3, 5, 7]


def test_unit_relation_is_rejected():
    with pytest.raises(ValidationError, match="is a unit"):
        quotient((1, 1), "3")


def test_multiplication_table_shape():
    algebra = polynomial_ring(1, 2)
    matrix = algebra.multiplication(1, 2)

    assert (matrix.rows, matrix.cols) == (algebra.piece_dimension(3), 1 * 2)
    assert matrix.rank() == 2


@Parametrization.autodetect_parameters()
@Parametrization.case(name="residue_field_degree_0", degree=0, expected=1)
@Parametrization.case(name="residue_field_degree_1", degree=1, expected=0)
@Parametrization.case(name="residue_field_degree_3", degree=3, expected=0)
def test_residue_field_pieces(degree, expected):
    assert module_piece(residue_field(polynomial_ring(1, 1)), degree).dimension == expected


def test_cyclic_module_pieces():
    module = GradedModule.cyclic(polynomial_ring(1, 2), [parse_polynomial("x0", 2)])

    assert [module.piece_dimension(degree) for degree in range(6)] == [1, 0, 1, 0, 1, 0]


def test_twist_shifts_pieces():
    algebra = polynomial_ring(1, 2)
    module = GradedModule.cyclic(algebra, [parse_polynomial("x1", 2)])
    twisted = twist(module, 3)

    assert [twisted.piece_dimension(degree) for degree in range(-5, 5)] == [
        module.piece_dimension(degree + 3) for degree in range(-5, 5)
    ]
    assert twisted.generator_degrees == (-3,)


def test_free_module_pieces():
    module = GradedModule.free(polynomial_ring(1, 1), [0, 2])

    assert module.piece_dimension(2) == 3 + 1
    assert module.is_free


def test_inhomogeneous_relation_is_rejected():
    algebra = polynomial_ring(1, 1)
    with pytest.raises(InhomogeneousError):
        GradedModule(algebra, (0,), PolynomialMatrix.from_rows([[parse_polynomial("x0 + x1^2", 2)]], 2), (1,))


def test_kernel_piece_of_multiplication():
    algebra = polynomial_ring(1, 1)
    source = GradedModule.free(algebra, [0, 0])
    target = GradedModule.free(algebra, [-1])
    graded_map = GradedMap(
        source, target, PolynomialMatrix.from_rows([[parse_polynomial("x0", 2), parse_polynomial("x1", 2)]], 2)
    )

    assert [kernel_piece(graded_map, degree).dimension for degree in range(4)] == [0, 1, 2, 3]


@Parametrization.autodetect_parameters()
@Parametrization.case(
    name="residue_field_projective_line",
    module=residue_field(polynomial_ring(1, 1)),
    expected={0: (0,), 1: (1, 1), 2: (2,)},
)
@Parametrization.case(
    name="residue_field_weighted_line",
    module=residue_field(polynomial_ring(1, 2)),
    expected={0: (0,), 1: (1, 2), 2: (3,)},
)
@Parametrization.case(
    name="hyperplane_weighted_line",
    module=GradedModule.cyclic(polynomial_ring(1, 2), [parse_polynomial("x0", 2)]),
    expected={0: (0,), 1: (1,)},
)
@Parametrization.case(
    name="free_module",
    module=GradedModule.free(polynomial_ring(1, 1), [0, 3]),
    expected={0: (0, 3)},
)
def test_free_resolution(module, expected):
    resolution = free_resolution(module, module.algebra.weights.variables + 1, default_degree_bound(module))

    assert dict(resolution.terms) == expected
    assert is_minimal(resolution)


def test_free_resolution_matches_hilbert_function():
    algebra = polynomial_ring(1, 1, 2)
    module = GradedModule.cyclic(algebra, [parse_polynomial("x0^2 - x2", 3), parse_polynomial("x1", 3)])
    resolution = free_resolution(module, 4, default_degree_bound(module))

    for degree in range(12):
        alternating = sum(
            (-1) ** index * algebra.free_piece_dimension(resolution.term(index), degree)
            for index in resolution.indices()
        )
        assert alternating == module.piece_dimension(degree)


def test_free_resolution_bound_exhausted():
    module = GradedModule.cyclic(polynomial_ring(1, 1), [parse_polynomial("x0^3", 2)])

    with pytest.raises(BoundExhaustedError):
        free_resolution(module, 2, 2)


def test_free_resolution_bound_keeps_a_weight_margin():
    module = GradedModule.cyclic(polynomial_ring(1, 2), [parse_polynomial("x0^3", 2)])

    with pytest.raises(BoundExhaustedError, match="step 1 produces generators within 2 of the degree bound"):
        free_resolution(module, 2, 4)

    assert dict(free_resolution(module, 2, 5).terms) == {0: (0,), 1: (3,)}
