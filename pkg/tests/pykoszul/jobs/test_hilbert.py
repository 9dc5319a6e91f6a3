from unittest.mock import Mock

from pykoszul.algebra_objects.configurations import Configurations
from pykoszul.jobs.hilbert import Hilbert
from pykoszul.jobs.inputs import ModuleInput


class TestHilbert:
    def test_parse(self):
        assert Hilbert.parse({"weights": [1, 2], "range": [0, 3], "relations": ["x0^2 - x1"]}) == {
            "weights": [1, 2],
            "degrees": (0, 3),
            "relations": ["x0^2 - x1"],
        }

    def test_create(self):
        configurations = Mock(spec_set=["strict"])
        configurations.strict = True

        job = Hilbert.create({"weights": [1, 2]}, configurations)

        assert job.weights == [1, 2]
        assert job.degrees is None
        assert job.configurations == configurations

    def test_execute(self):
        job = Hilbert(weights=[1, 2], degrees=(0, 4), configurations=Configurations())

        report = job.execute()

        assert report.command == "hilbert"
        assert report.fields == {"weights": [1, 2], "sigma": 3}
        assert report.tables[0].rows == [[0, 1], [1, 1], [2, 2], [3, 2], [4, 3]]
        assert report.verdict == "series PASS"

    def test_execute_uses_configured_window(self):
        configurations = Configurations()
        configurations.set_values("window", "2..3")

        report = Hilbert(weights=[1, 1, 1], configurations=configurations).execute()

        assert report.tables[0].rows == [[2, 6], [3, 10]]

    def test_execute_quotient(self):
        job = Hilbert(
            weights=[1, 1, 1], degrees=(2, 4), relations=["x0^3 + x1^3 + x2^3"], configurations=Configurations()
        )

        report = job.execute()

        assert report.tables[0].title == "algebra pieces"
        assert report.tables[0].rows == [[2, 6], [3, 9], [4, 12]]
        assert report.verdict is None

    def test_execute_module(self):
        job = Hilbert(
            weights=[1, 2],
            degrees=(-1, 4),
            module=ModuleInput([0], relations=[["x0"]], twist=1),
            configurations=Configurations(),
        )

        report = job.execute()

        assert report.tables[0].title == "module pieces"
        assert report.tables[0].rows == [[-1, 1], [0, 0], [1, 1], [2, 0], [3, 1], [4, 0]]
