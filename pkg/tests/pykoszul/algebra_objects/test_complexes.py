import pytest
from parametrization import Parametrization

from pykoszul.algebra_objects.complexes import (
    check_chain_map,
    check_complex,
    cone,
    convolution_morphism,
    euler_characteristics,
    hom_derived,
    homology_strand,
    homology_table,
    left_convolution,
    require_complex,
    right_convolution,
    totalization,
)
from pykoszul.algebra_objects.errors import NotAComplexError, ValidationError
from pykoszul.algebra_objects.free_modules import ChainMap, FreeComplex, PolynomialMatrix
from pykoszul.algebra_objects.graded import GradedAlgebra
from pykoszul.algebra_objects.polynomials import parse_polynomial

RING = GradedAlgebra.polynomial_ring((1, 1))


def matrix(*rows):
    return PolynomialMatrix.from_rows([[parse_polynomial(entry, 2) for entry in row] for row in rows], 2)


def koszul_complex(sign="-"):
    return FreeComplex.create(
        RING, {0: (0,), 1: (1, 1), 2: (2,)}, {1: matrix(["x0", "x1"]), 2: matrix([f"{sign}x1"], ["x0"])}
    )


def single(*degrees):
    return FreeComplex.single(RING, degrees)


def koszul_sequence():
    """The Koszul complex of (x0, x1) as a complex of one-term complexes a_2 -> a_1 -> a_0."""
    a_0, a_1, a_2 = single(0), single(1, 1), single(2)
    d_1 = ChainMap(a_1, a_0, {0: matrix(["x0", "x1"])})
    d_2 = ChainMap(a_2, a_1, {0: matrix(["-x1"], ["x0"])})
    return [a_0, a_1, a_2], [d_1, d_2]


def nonzero(table):
    return {key: value for key, value in table.items() if value}


def test_check_complex():
    assert check_complex(koszul_complex()).passed


def test_check_complex_reports_nonzero_square():
    verdict = check_complex(koszul_complex(sign=""))

    assert not verdict.passed
    assert verdict.index == 2
    with pytest.raises(NotAComplexError, match="d_1 d_2 is nonzero"):
        require_complex(koszul_complex(sign=""))


def test_check_complex_reports_inhomogeneous_differential():
    complex_ = FreeComplex.create(RING, {0: (0,), 1: (1,)}, {1: matrix(["x0^2"])})

    verdict = check_complex(complex_)

    assert not verdict.passed
    assert "not homogeneous" in verdict.message


def test_koszul_complex_homology():
    assert nonzero(homology_table(koszul_complex(), (0, 5))) == {(0, 0): 1}


@Parametrization.autodetect_parameters()
@Parametrization.case(name="residue", index=0, degree=0, expected=1)
@Parametrization.case(name="exact_top", index=2, degree=2, expected=0)
@Parametrization.case(name="exact_middle", index=1, degree=3, expected=0)
@Parametrization.case(name="outside", index=3, degree=3, expected=0)
def test_homology_strand(index, degree, expected):
    assert homology_strand(koszul_complex(), index, degree) == expected


def test_euler_characteristics_of_koszul_complex():
    assert euler_characteristics(koszul_complex(), (0, 4)) == {0: 1, 1: 0, 2: 0, 3: 0, 4: 0}


def test_shift_moves_homology():
    shifted = koszul_complex().shift(3)

    assert nonzero(homology_table(shifted, (0, 3))) == {(3, 0): 1}
    assert check_complex(shifted).passed


def test_twist_moves_homology():
    assert nonzero(homology_table(koszul_complex().twist(-2), (0, 4))) == {(0, 2): 1}


def test_cone_of_identity_is_acyclic():
    complex_ = koszul_complex()

    assert not nonzero(homology_table(cone(ChainMap.identity(complex_)), (0, 5)))


def test_cone_rejects_non_chain_maps():
    source, target = single(1), single(0)
    bad = ChainMap(koszul_complex(), koszul_complex(), {1: PolynomialMatrix.identity(2, 2)})

    assert check_chain_map(bad) is not None
    with pytest.raises(ValidationError, match="does not commute"):
        cone(bad)
    assert check_chain_map(ChainMap(source, target, {0: matrix(["x1"])})) is None


@Parametrization.autodetect_parameters()
@Parametrization.case(name="hom_residue_field_to_ring", r=0, expected=0)
@Parametrization.case(name="ext_1_residue_field_to_ring", r=1, expected=0)
@Parametrization.case(name="ext_2_residue_field_to_ring", r=2, expected=1)
def test_hom_derived_from_residue_field(r, expected):
    assert hom_derived(koszul_complex(), single(0), r, (-2, 0)) == expected


def test_hom_derived_counts_maps_between_free_modules():
    assert hom_derived(single(0), single(0), 0, (0, 2)) == 1 + 2 + 3
    assert hom_derived(single(0), single(0), 1, (0, 2)) == 0


def test_hom_derived_rejects_empty_window():
    with pytest.raises(ValidationError, match="empty window"):
        hom_derived(single(0), single(0), 0, (1, 0))


def test_totalization_of_koszul_sequence():
    sequence, maps = koszul_sequence()
    total = totalization(sequence, maps)

    assert dict(total.terms) == {0: (0,), 1: (1, 1), 2: (2,)}
    assert nonzero(homology_table(total, (0, 4))) == {(0, 0): 1}


def test_totalization_rejects_non_complexes():
    a_0, a_1, a_2 = single(0), single(1, 1), single(2)
    d_1 = ChainMap(a_1, a_0, {0: matrix(["x0", "x1"])})
    d_2 = ChainMap(a_2, a_1, {0: matrix(["x1"], ["x0"])})

    with pytest.raises(NotAComplexError):
        totalization([a_0, a_1, a_2], [d_1, d_2])


def test_totalization_signs_square_to_zero_with_internal_differentials():
    complex_ = koszul_complex()

    total = totalization([complex_, complex_], [ChainMap.identity(complex_)])

    assert check_complex(total).passed
    assert dict(total.terms)[1] == (1, 1, 0)
    assert total.differential(1).entries[0][2] == PolynomialMatrix.identity(1, 2).scale(-1).entries[0][0]
    assert nonzero(homology_table(total, (0, 4))) == {}


@Parametrization.autodetect_parameters()
@Parametrization.case(name="top", bracketing="top")
@Parametrization.case(name="bottom", bracketing="bottom")
def test_right_convolution_matches_totalization(bracketing):
    sequence, maps = koszul_sequence()

    trace = right_convolution(sequence, maps, bracketing=bracketing)

    assert homology_table(trace.result, (0, 4)) == homology_table(totalization(sequence, maps), (0, 4))
    assert trace.hypothesis.holds
    assert len(trace.intermediates) == (3 if bracketing == "top" else 2)
    assert check_chain_map(trace.morphism) is None


def test_right_bracketings_agree():
    sequence, maps = koszul_sequence()

    top = right_convolution(sequence, maps, bracketing="top").result
    bottom = right_convolution(sequence, maps, bracketing="bottom").result

    assert nonzero(homology_table(top, (0, 4))) == nonzero(homology_table(bottom, (0, 4)))


def test_left_convolution_is_shifted_totalization():
    sequence, maps = koszul_sequence()

    trace = left_convolution(sequence, maps)

    assert trace.side == "left"
    assert nonzero(homology_table(trace.result, (0, 4))) == {(-2, 0): 1}
    assert check_chain_map(trace.morphism) is None


def test_convolution_of_single_term():
    complex_ = koszul_complex()

    trace = right_convolution([complex_], [])

    assert trace.result is complex_
    assert trace.hypothesis.holds


def test_convolution_map_count_is_checked():
    sequence, maps = koszul_sequence()

    with pytest.raises(ValidationError, match="3 terms need 2 maps"):
        right_convolution(sequence, maps[:1])


def test_hypothesis_violation_is_reported():
    a_0, a_1 = single(0), single(0).shift(-1)
    d_1 = ChainMap.zero(a_1, a_0)

    trace = right_convolution([a_0, a_1], [d_1], r_max=2)

    assert trace.hypothesis.violations == [(1, 0, 1)]
    assert not trace.hypothesis.holds


def test_convolution_morphism_of_identity_components():
    sequence, maps = koszul_sequence()
    components = [ChainMap.identity(complex_) for complex_ in sequence]

    morphism = convolution_morphism(sequence, maps, sequence, maps, components)

    assert check_chain_map(morphism.chain_map) is None
    assert morphism.hypothesis.holds


def test_convolution_morphism_rejects_non_commuting_components():
    sequence, maps = koszul_sequence()
    components = [
        ChainMap.identity(sequence[0]),
        ChainMap.zero(sequence[1], sequence[1]),
        ChainMap.identity(sequence[2]),
    ]

    with pytest.raises(ValidationError, match="do not commute"):
        convolution_morphism(sequence, maps, sequence, maps, components)
