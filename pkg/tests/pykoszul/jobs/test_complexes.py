from unittest.mock import Mock

import pytest
from parametrization import Parametrization

from pykoszul.algebra_objects.configurations import Configurations
from pykoszul.algebra_objects.errors import ValidationError
from pykoszul.jobs.complexes import Convolve, Hom
from pykoszul.jobs.inputs import ComplexInput, MapInput

KOSZUL_TERMS = [ComplexInput([[0]]), ComplexInput([[1, 1]]), ComplexInput([[2]])]
KOSZUL_MAPS = [MapInput([[["x0", "x1"]]]), MapInput([[["-x1"], ["x0"]]])]
KOSZUL_COMPLEX = ComplexInput([[0], [1, 1], [2]], differentials=[[["x0", "x1"]], [["-x1"], ["x0"]]])


@Parametrization.autodetect_parameters()
@Parametrization.case(name="top", bracketing="top")
@Parametrization.case(name="bottom", bracketing="bottom")
def test_right_convolution_job(bracketing):
    job = Convolve(
        weights=[1, 1],
        complexes=KOSZUL_TERMS,
        maps=KOSZUL_MAPS,
        bracketing=bracketing,
        configurations=Configurations(),
    )

    report = job.execute()

    assert report.fields == {"side": "right", "bracketing": bracketing, "terms": 3, "hypothesis holds": True}
    assert report.tables[1].rows == []
    assert report.verdict == "matches totalization"


class TestConvolve:
    def test_parse(self):
        document = {
            "weights": [1, 1],
            "complexes": [{"terms": [[0]]}, {"terms": [[1, 1]]}],
            "maps": [{"matrices": [[["x0", "x1"]]]}],
            "side": "left",
        }

        assert Convolve.parse(document) == {
            "weights": [1, 1],
            "complexes": [ComplexInput([[0]]), ComplexInput([[1, 1]])],
            "maps": [MapInput([[["x0", "x1"]]])],
            "side": "left",
        }

    def test_parse_rejects_unknown_side(self):
        with pytest.raises(ValidationError, match="side must be one of right, left"):
            Convolve.parse({"weights": [1, 1], "complexes": [], "side": "middle"})

    def test_create(self):
        configurations = Mock(spec_set=["strict"])
        configurations.strict = True

        job = Convolve.create({"weights": [1, 1], "complexes": [{"terms": [[0]]}]}, configurations)

        assert (job.side, job.bracketing) == ("right", "top")
        assert job.maps == []
        assert job.configurations == configurations

    def test_execute_left(self):
        job = Convolve(
            weights=[1, 1], complexes=KOSZUL_TERMS, maps=KOSZUL_MAPS, side="left", configurations=Configurations()
        )

        report = job.execute()

        assert report.tables[2].rows == [[-2, 0, 1]]
        assert report.verdict == "matches totalization"

    def test_execute_left_rejects_bottom_bracketing(self):
        job = Convolve(
            weights=[1, 1],
            complexes=KOSZUL_TERMS,
            maps=KOSZUL_MAPS,
            side="left",
            bracketing="bottom",
            configurations=Configurations(),
        )

        with pytest.raises(ValidationError, match="single bracketing"):
            job.execute()

    def test_execute_counts_maps(self):
        job = Convolve(weights=[1, 1], complexes=KOSZUL_TERMS, maps=KOSZUL_MAPS[:1], configurations=Configurations())

        with pytest.raises(ValidationError, match="3 complexes need 2 maps"):
            job.execute()

    def test_execute_induced_morphism(self):
        job = Convolve(
            weights=[1, 1],
            complexes=KOSZUL_TERMS,
            maps=KOSZUL_MAPS,
            targets=KOSZUL_TERMS,
            target_maps=KOSZUL_MAPS,
            components=[MapInput([[["1"]]]), MapInput([[["1", "0"], ["0", "1"]]]), MapInput([[["1"]]])],
            configurations=Configurations(),
        )

        report = job.execute()

        assert report.fields["induced morphism unique"] is True
        assert report.verdict == "matches totalization, induced morphism on 3 indices"


class TestHom:
    def test_parse(self):
        document = {"weights": [1, 1], "source": {"terms": [[0]]}, "target": {"terms": [[0]], "low": 1}, "r": -1}

        assert Hom.parse(document) == {
            "weights": [1, 1],
            "source": ComplexInput([[0]]),
            "target": ComplexInput([[0]], low=1),
            "r": -1,
        }

    def test_execute(self):
        job = Hom(
            weights=[1, 1],
            source=KOSZUL_COMPLEX,
            target=ComplexInput([[0]]),
            r=2,
            degrees=(-2, 0),
            configurations=Configurations(),
        )

        report = job.execute()

        assert report.fields == {"r": 2, "dimension": 1}
        assert report.tables[0].rows == [[-2, 1], [-1, 0], [0, 0]]

    def test_execute_rejects_non_complex(self):
        source = ComplexInput([[0], [1, 1], [2]], differentials=[[["x0", "x1"]], [["x1"], ["x0"]]])
        job = Hom(weights=[1, 1], source=source, target=ComplexInput([[0]]), r=0, configurations=Configurations())

        with pytest.raises(ValidationError, match="is nonzero"):
            job.execute()
