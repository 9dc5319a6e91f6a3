from fractions import Fraction

import pytest
from parametrization import Parametrization

from pykoszul.algebra_objects.linear import Matrix, Subspace, kernel, kron, rref, solve, span


@Parametrization.autodetect_parameters()
@Parametrization.case(
    name="proportional_rows",
    rows=[[1, 2], [2, 4]],
    expected_rank=1,
    expected_kernel=[(Fraction(-2), Fraction(1))],
    expected_pivots=(0,),
)
@Parametrization.case(
    name="identity",
    rows=[[1, 0, 0], [0, 1, 0], [0, 0, 1]],
    expected_rank=3,
    expected_kernel=[],
    expected_pivots=(0, 1, 2),
)
@Parametrization.case(
    name="full_column_rank",
    rows=[[1, 0], [0, 1], [1, 1]],
    expected_rank=2,
    expected_kernel=[],
    expected_pivots=(0, 1),
)
def test_rref(rows, expected_rank, expected_kernel, expected_pivots):
    echelon = rref(Matrix.from_rows(rows))

    assert echelon.rank == expected_rank
    assert list(echelon.kernel_basis) == expected_kernel
    assert echelon.pivot_columns == expected_pivots


def test_rref_kernel_vectors_are_annihilated():
    matrix = Matrix.from_rows([[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, Fraction(1, 2), 0]])

    basis = kernel(matrix)

    assert len(basis) + rref(matrix).rank == matrix.cols
    for vector in basis:
        assert not any(matrix.apply(vector))


def test_rref_is_idempotent():
    matrix = Matrix.from_rows([[0, 2, 4], [1, 1, 1], [1, 3, 5]])
    echelon = rref(matrix)

    again = rref(Matrix.from_rows(echelon.rows, matrix.cols))

    assert again == echelon


def test_span_contains():
    echelon = span([(Fraction(1), Fraction(1), Fraction(0))], 3)

    assert echelon.contains((Fraction(2), Fraction(2), Fraction(0)))
    assert not echelon.contains((Fraction(1), Fraction(0), Fraction(0)))


def test_subspace_coordinates():
    subspace = Subspace.kernel_of(Matrix.from_rows([[1, 1, 0]]))

    assert subspace.rank == 2
    vector = (Fraction(-3), Fraction(3), Fraction(5))
    assert subspace.inclusion().apply(subspace.coordinates(vector)) == vector

    with pytest.raises(ValueError):
        subspace.coordinates((Fraction(1), Fraction(0), Fraction(0)))


def test_kron():
    product = kron(Matrix.identity(2), Matrix.from_rows([[1, 2]]))

    assert product == Matrix.from_rows([[1, 2, 0, 0], [0, 0, 1, 2]])


def test_matrix_shape_is_checked():
    with pytest.raises(ValueError):
        Matrix(2, 2, ((Fraction(1),),))


def test_solve():
    matrix = Matrix.from_rows([[1, 0], [1, 1], [0, 1]])

    assert solve(matrix, [Fraction(2), Fraction(5), Fraction(3)]) == (Fraction(2), Fraction(3))

    with pytest.raises(ValueError, match="column span"):
        solve(matrix, [Fraction(1), Fraction(0), Fraction(0)])
