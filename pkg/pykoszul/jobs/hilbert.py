from __future__ import annotations

from pykoszul.jobs.core import ConfiguredJob
from pykoszul.jobs.inputs import ModuleInput, build_algebra, build_module, window_of
from pykoszul.jobs.parameters import keyword_parameter, positional_parameter
from pykoszul.jobs.router import JobsRouter
from pykoszul.reports import Report


@JobsRouter.job("hilbert", ["algebra", "read"])
class Hilbert(ConfiguredJob):
    weights: list[int] = positional_parameter()
    degrees: tuple[int, int] | None = keyword_parameter(key="range")
    relations: list[str] = keyword_parameter(default_factory=list)
    module: ModuleInput | None = keyword_parameter()

    def execute(self) -> Report:
        algebra = build_algebra(self.weights, self.relations)
        degrees = window_of(self.configurations, self.degrees)

        report = self.report(weights=self.weights, sigma=algebra.weights.sigma)
        if self.module is not None:
            module = build_module(algebra, self.module)
            table = report.add_table("module pieces", ["d", "dim M_d"])
            for degree in degrees:
                table.add(degree, module.piece_dimension(degree))
            return report

        table = report.add_table("algebra pieces", ["d", "dim A_d"])
        for degree in degrees:
            table.add(degree, algebra.piece_dimension(degree))

        if algebra.is_polynomial_ring and degrees.stop > 0:
            series = algebra.weights.hilbert_coefficients(degrees.stop - 1)
            mismatch = next(
                (degree for degree in degrees if degree >= 0 and series[degree] != algebra.piece_dimension(degree)),
                None,
            )
            report.verdict = "series PASS" if mismatch is None else f"series FAIL at d={mismatch}"
        return report
