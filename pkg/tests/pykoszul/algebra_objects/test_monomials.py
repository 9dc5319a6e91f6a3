import itertools

import pytest
from parametrization import Parametrization

from pykoszul.algebra_objects.errors import InhomogeneousError, NotWellFormedError, ValidationError
from pykoszul.algebra_objects.linear import Matrix
from pykoszul.algebra_objects.monomials import (
    Character,
    Monomial,
    Polynomial,
    WeightVector,
    character_of,
    monomial_basis,
    mult_map,
)
from pykoszul.algebra_objects.polynomials import parse_polynomial


@Parametrization.autodetect_parameters()
@Parametrization.case(name="weights_1_2_degree_4", weights=(1, 2), degree=4, expected=[(4, 0), (2, 1), (0, 2)])
@Parametrization.case(name="weights_1_1_degree_2", weights=(1, 1), degree=2, expected=[(2, 0), (1, 1), (0, 2)])
@Parametrization.case(name="weights_2_3_degree_1", weights=(2, 3), degree=1, expected=[])
@Parametrization.case(name="negative_degree", weights=(1, 1), degree=-1, expected=[])
def test_monomial_basis(weights, degree, expected):
    assert [monomial.exponents for monomial in monomial_basis(WeightVector(weights), degree)] == expected


@Parametrization.autodetect_parameters()
@Parametrization.case(name="1_2", weights=(1, 2))
@Parametrization.case(name="1_1_2", weights=(1, 1, 2))
@Parametrization.case(name="2_3_5", weights=(2, 3, 5))
@Parametrization.case(name="1_1_1_1", weights=(1, 1, 1, 1))
def test_monomial_basis_counts_match_hilbert_series(weights):
    vector = WeightVector(weights)
    series = vector.hilbert_coefficients(40)

    assert [len(monomial_basis(vector, degree)) for degree in range(41)] == list(series)


def test_mult_map_by_variable():
    weights = WeightVector((1, 1))

    assert mult_map(weights, Polynomial.variable(0, 2), 1) == Matrix.from_rows([[1, 0], [0, 1], [0, 0]])


def test_mult_map_into_weighted_basis():
    weights = WeightVector((1, 2))

    assert mult_map(weights, Polynomial.variable(1, 2), 0) == Matrix.from_rows([[0], [1]])


def test_mult_map_by_sum():
    matrix = mult_map(WeightVector((1, 1)), parse_polynomial("x0 + x1", 2), 1)

    assert [sum(1 for value in column if value) for column in matrix.columns()] == [2, 2]


def test_mult_map_composition():
    weights = WeightVector((1, 2))
    f = parse_polynomial("x0^2 + x1", 2)
    g = parse_polynomial("x0", 2)

    assert mult_map(weights, g, 5) @ mult_map(weights, f, 3) == mult_map(weights, g * f, 3)


def test_mult_map_rejects_inhomogeneous_multiplier():
    with pytest.raises(InhomogeneousError, match="inhomogeneous multiplier"):
        mult_map(WeightVector((1, 1)), parse_polynomial("x0 + x1^2", 2), 0)


@Parametrization.autodetect_parameters()
@Parametrization.case(name="x0_cubed_x1", weights=(1, 2), exponents=(3, 1), expected=(0, 1), expected_norm=1)
@Parametrization.case(name="one", weights=(2, 3), exponents=(0, 0), expected=(0, 0), expected_norm=0)
@Parametrization.case(name="x0_x1_squared", weights=(2, 3), exponents=(1, 2), expected=(1, 2), expected_norm=3)
def test_character_of(weights, exponents, expected, expected_norm):
    character = character_of(WeightVector(weights), Monomial(exponents))

    assert character.residues == expected
    assert character.norm == expected_norm


def test_character_of_is_multiplicative():
    weights = WeightVector((2, 3, 4))
    monomials = [Monomial(exponents) for exponents in itertools.product(range(3), repeat=3)]

    for left, right in itertools.product(monomials[:9], monomials[9:18]):
        assert character_of(weights, left * right) == character_of(weights, left) + character_of(weights, right)


@Parametrization.autodetect_parameters()
@Parametrization.case(name="1_2", weights=(1, 2))
@Parametrization.case(name="2_3_5", weights=(2, 3, 5))
@Parametrization.case(name="3_4_5_6", weights=(3, 4, 5, 6))
def test_character_norm_identity(weights):
    for character in WeightVector(weights).characters():
        assert character.norm + (-character).norm == sum(weights[i] for i in character.support)
        assert -(-character) == character


def test_character_residues_are_checked():
    with pytest.raises(ValidationError):
        Character((2,), (2,))


@Parametrization.autodetect_parameters()
@Parametrization.case(name="projective_line", weights=(1, 1), expected=True)
@Parametrization.case(name="weighted_line", weights=(1, 2), expected=True)
@Parametrization.case(name="common_factor_pair", weights=(2, 2), expected=False)
@Parametrization.case(name="plane", weights=(1, 2, 3), expected=True)
@Parametrization.case(name="plane_with_shared_factor", weights=(1, 2, 2), expected=False)
@Parametrization.case(name="single_weight", weights=(1,), expected=False)
def test_well_formed(weights, expected):
    assert WeightVector(weights).is_well_formed is expected


def test_validate_names_the_offending_subset():
    with pytest.raises(NotWellFormedError, match="not well formed") as e:
        WeightVector((2, 2)).validate()

    assert e.value.subset == (2, 2)


def test_weights_required():
    with pytest.raises(ValidationError, match="weights required"):
        WeightVector(())


def test_pullback_and_descend():
    weights = WeightVector((1, 2))
    polynomial = parse_polynomial("x0^2 - 3*x1", 2)

    pulled = polynomial.pullback(weights)

    assert pulled == parse_polynomial("x0^2 - 3*x1^2", 2)
    assert pulled.descend(weights) == polynomial
