from unittest.mock import Mock

import pytest

from pykoszul.algebra_objects.configurations import Configurations
from pykoszul.algebra_objects.errors import NotWellFormedError, ValidationError
from pykoszul.jobs.inputs import ModuleInput
from pykoszul.jobs.koszul import DiagonalCheck, EquivariantCheck, KoszulCheck


class TestKoszulCheck:
    def test_parse(self):
        assert KoszulCheck.parse({"weights": [1, 1], "veronese": 2, "bounds": [3, 4]}) == {
            "weights": [1, 1],
            "veronese": 2,
            "bounds": (3, 4),
        }

    def test_create(self):
        configurations = Mock(spec_set=["strict"])
        configurations.strict = True

        job = KoszulCheck.create({"weights": [1, 1, 1], "relations": ["x0^3 + x1^3 + x2^3"]}, configurations)

        assert job.relations == ["x0^3 + x1^3 + x2^3"]
        assert job.veronese == 1
        assert job.bounds is None

    def test_execute_veronese(self):
        job = KoszulCheck(weights=[1, 1], veronese=2, bounds=(3, 4), configurations=Configurations())

        report = job.execute()

        assert report.fields["B dims"] == [1, 3, 4, 4]
        assert report.tables[1].rows == []
        assert report.verdict == "PASS"

    def test_execute_cubic(self):
        job = KoszulCheck(
            weights=[1, 1, 1], relations=["x0^3 + x1^3 + x2^3"], bounds=(3, 4), configurations=Configurations()
        )

        report = job.execute()

        assert report.fields["B dims"] == [1, 3, 3, 1]
        assert report.verdict == "FAIL at (m,k)=(1,3)"

    def test_execute_uses_configured_bounds(self):
        configurations = Configurations()
        configurations.set_values("max-m", 2)
        configurations.set_values("max-degree", 3)

        report = KoszulCheck(weights=[1, 1], configurations=configurations).execute()

        assert (report.fields["m_max"], report.fields["k_max"]) == (2, 3)

    def test_execute_rejects_zero_veronese(self):
        with pytest.raises(ValidationError, match="veronese must be at least 1"):
            KoszulCheck(weights=[1, 1], veronese=0, configurations=Configurations()).execute()


class TestDiagonalCheck:
    def test_execute(self):
        report = DiagonalCheck(weights=[1, 1], degrees=(0, 3), configurations=Configurations()).execute()

        assert report.tables[0].rows == []
        assert report.verdict == "PASS"

    def test_execute_single_m(self):
        report = DiagonalCheck(weights=[1, 1], degrees=(0, 3), m=1, configurations=Configurations()).execute()

        assert report.verdict == "PASS"

    def test_execute_euler_kernel(self):
        job = DiagonalCheck(
            weights=[1, 1, 1], degrees=(0, 2), module=ModuleInput([-1, 2]), configurations=Configurations()
        )

        report = job.execute()

        assert [row[0] for row in report.tables[1].rows] == [0, 1, 2]
        assert report.verdict == "PASS, Euler PASS"

    def test_execute_euler_kernel_needs_polynomial_ring(self):
        job = DiagonalCheck(
            weights=[1, 1], veronese=2, degrees=(0, 2), module=ModuleInput([0]), configurations=Configurations()
        )

        with pytest.raises(ValidationError, match="polynomial ring itself"):
            job.execute()


class TestEquivariantCheck:
    def test_parse(self):
        assert EquivariantCheck.parse({"weights": [1, 2], "invariant_only": True}) == {
            "weights": [1, 2],
            "invariant_only": True,
        }

    def test_execute(self):
        job = EquivariantCheck(weights=[1, 2], degrees=(0, 2), invariant_only=True, configurations=Configurations())

        report = job.execute()

        assert report.tables[1].rows == [[0, 1, 1], [1, 2, 2], [2, 3, 3]]
        assert report.verdict == "PASS, eigensheaf PASS"

    def test_execute_rejects_weights_with_common_factor(self):
        with pytest.raises(NotWellFormedError):
            EquivariantCheck(weights=[2, 2], degrees=(0, 1), configurations=Configurations()).execute()
