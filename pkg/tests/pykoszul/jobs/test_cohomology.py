from unittest.mock import Mock

import pytest

from pykoszul.algebra_objects.configurations import Configurations
from pykoszul.algebra_objects.errors import NotWellFormedError, ValidationError
from pykoszul.algebra_objects.monomials import Character
from pykoszul.jobs.cohomology import Bott, Cohomology, StabilizerCover
from pykoszul.jobs.inputs import ModuleInput


class TestCohomology:
    def test_parse(self):
        assert Cohomology.parse({"weights": [1, 2], "k": -5}) == {"weights": [1, 2], "k": -5}

    def test_create(self):
        configurations = Mock(spec_set=["strict"])
        configurations.strict = True

        job = Cohomology.create({"weights": [1, 2], "range": [0, 2], "by_character": True}, configurations)

        assert job.degrees == (0, 2)
        assert job.by_character is True
        assert job.configurations == configurations

    def test_execute_line_bundles(self):
        report = Cohomology(weights=[1, 2], degrees=(-5, -4), configurations=Configurations()).execute()

        assert report.tables[0].columns == ["k", "h^0", "h^1", "χ"]
        assert report.tables[0].rows == [[-5, 0, 2, -2], [-4, 0, 1, -1]]

    def test_execute_single_twist(self):
        report = Cohomology(weights=[1, 2], k=4, configurations=Configurations()).execute()

        assert report.tables[0].rows == [[4, 3, 0, 3]]

    def test_execute_module(self):
        job = Cohomology(
            weights=[1, 2],
            degrees=(-2, 1),
            module=ModuleInput([0], relations=[["x0"]]),
            configurations=Configurations(),
        )

        report = job.execute()

        assert report.tables[0].title == "sheaf cohomology"
        assert report.tables[0].rows == [[-2, 1, 0, 1], [-1, 0, 0, 0], [0, 1, 0, 1], [1, 0, 0, 0]]

    def test_execute_by_character(self):
        job = Cohomology(
            weights=[1, 2], k=2, module=ModuleInput([0]), by_character=True, configurations=Configurations()
        )

        report = job.execute()

        assert report.tables[0].rows == [
            [Character((0, 0), (1, 2)), 2, 2, 0, 2],
            [Character((0, 1), (1, 2)), 2, 1, 0, 1],
        ]

    def test_execute_needs_exactly_one_twist_source(self):
        with pytest.raises(ValidationError, match="either k or range"):
            Cohomology(weights=[1, 2], k=0, degrees=(0, 1), configurations=Configurations()).execute()
        with pytest.raises(ValidationError, match="k or range required"):
            Cohomology(weights=[1, 2], configurations=Configurations()).execute()

    def test_execute_by_character_needs_module(self):
        with pytest.raises(ValidationError, match="needs a module"):
            Cohomology(weights=[1, 2], k=0, by_character=True, configurations=Configurations()).execute()

    def test_execute_rejects_weights_with_common_factor(self):
        with pytest.raises(NotWellFormedError):
            Cohomology(weights=[2, 2], k=0, configurations=Configurations()).execute()


class TestBott:
    def test_parse(self):
        assert Bott.parse({"weights": [1, 2], "p": 1, "t": 0}) == {"weights": [1, 2], "p": 1, "t": 0}

    def test_execute(self):
        report = Bott(weights=[1, 2], p=1, t=0, configurations=Configurations()).execute()

        assert report.tables[0].rows == [[0, Character((0, 0), (1, 2)), 0, 1]]

    def test_execute_range(self):
        report = Bott(weights=[1, 2], p=0, degrees=(0, 1), configurations=Configurations()).execute()

        assert report.tables[0].rows == [
            [0, Character((0, 0), (1, 2)), 1, 0],
            [1, Character((0, 0), (1, 2)), 1, 0],
            [1, Character((0, 1), (1, 2)), 1, 0],
        ]

    def test_execute_rejects_large_p(self):
        with pytest.raises(ValidationError, match="p must lie in 0..1"):
            Bott(weights=[1, 2], p=2, t=0, configurations=Configurations()).execute()


class TestStabilizerCover:
    def test_parse(self):
        assert StabilizerCover.parse({"weights": [2, 3]}) == {"weights": [2, 3]}

    def test_execute(self):
        report = StabilizerCover(weights=[2, 3], configurations=Configurations()).execute()

        assert report.tables[0].rows == [[0, 2, 1], [1, 3, 2]]
        assert report.fields["max j_0"] == 2
