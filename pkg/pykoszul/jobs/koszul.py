from __future__ import annotations

from dataclasses import dataclass

from pykoszul.algebra_objects.errors import ValidationError
from pykoszul.algebra_objects.graded import PiecewiseAlgebra
from pykoszul.algebra_objects.koszul import (
    KoszulData,
    ar_strand_check,
    diagonal_window_check,
    equivariant_strand_check,
    euler_kernel_check,
    froberg_check,
    koszul_check,
    seq_sheaf_check,
    veronese as veronese_subring,
)
from pykoszul.algebra_objects.stacks import eigensheaf_dimensions
from pykoszul.algebra_objects.strands import StrandReport
from pykoszul.jobs.core import ConfiguredJob
from pykoszul.jobs.inputs import ModuleInput, build_algebra, build_module, build_weights, window_of
from pykoszul.jobs.parameters import keyword_parameter, positional_parameter
from pykoszul.jobs.router import JobsRouter
from pykoszul.reports import Report


def add_failures(report: Report, strands: StrandReport) -> None:
    table = report.add_table("inexact strands", ["degree", "character", "position", "dim", "image", "kernel"])
    for row in strands.rows:
        if not row.exact:
            table.add(row.degree, row.character, row.position, row.dimension, row.image, row.kernel)


@dataclass
class AlgebraJob(ConfiguredJob):
    weights: list[int] = positional_parameter()
    relations: list[str] = keyword_parameter(default_factory=list)
    veronese: int = keyword_parameter(default=1, nonnegative=True)

    def algebra(self) -> PiecewiseAlgebra:
        if self.veronese < 1:
            raise ValidationError("veronese must be at least 1")
        return veronese_subring(build_algebra(self.weights, self.relations), self.veronese)


@JobsRouter.job("koszul-check", ["koszul", "check"])
class KoszulCheck(AlgebraJob):
    bounds: tuple[int, int] | None = keyword_parameter(nonnegative=True)

    def execute(self) -> Report:
        m_max, k_max = (
            self.bounds if self.bounds is not None else (self.configurations.max_m, self.configurations.max_degree)
        )
        data = KoszulData(self.algebra())
        strands = koszul_check(data, m_max, k_max)

        report = self.report(weights=self.weights, veronese=self.veronese, m_max=m_max, k_max=k_max)
        report.fields["B dims"] = list(data.dimensions(m_max))

        froberg = report.add_table("Fröberg identity", ["k", "Σ (-1)^m dim B_m dim A_{k-m}", "expected", "complete"])
        for row in froberg_check(data, m_max, k_max).rows:
            froberg.add(row.k, row.alternating_sum, row.expected, row.complete)
        add_failures(report, strands)

        failure = strands.first_failure
        report.verdict = "PASS" if failure is None else f"FAIL at (m,k)=({failure.position},{failure.degree})"
        return report


@JobsRouter.job("diagonal-check", ["koszul", "check"])
class DiagonalCheck(AlgebraJob):
    degrees: tuple[int, int] | None = keyword_parameter(key="range")
    m: int | None = keyword_parameter(nonnegative=True)
    module: ModuleInput | None = keyword_parameter()

    def execute(self) -> Report:
        window = window_of(self.configurations, self.degrees)
        data = KoszulData(self.algebra())
        report = self.report(weights=self.weights, veronese=self.veronese, n0=self.configurations.n0)

        if self.m is not None:
            degrees = [l for l in window if l >= self.configurations.n0]
            strands = StrandReport.merge(
                [seq_sheaf_check(data, self.m, degrees), ar_strand_check(data, self.m, degrees)]
            )
        else:
            strands = diagonal_window_check(data, window, self.configurations.n0)
        report.fields["strands"] = len({row.degree for row in strands.rows})
        add_failures(report, strands)

        verdicts = ["PASS" if strands.passed else f"FAIL at degree {strands.first_failure.degree}"]
        if self.module is not None:
            if self.veronese != 1:
                raise ValidationError("the Euler kernel check runs on the polynomial ring itself")
            algebra = build_algebra(self.weights, self.relations)
            euler = euler_kernel_check(
                KoszulData(algebra), build_module(algebra, self.module), window, self.configurations.max_m
            )
            table = report.add_table("kernel Euler characteristics", ["k", "Σ (-1)^m χ(O(k-m)) χ(R_m ⊗ a)", "χ(a(k))"])
            for row in euler.rows:
                table.add(row.k, row.expansion, row.expected)
            verdicts.append("Euler PASS" if euler.passed else "Euler FAIL")
        report.verdict = ", ".join(verdicts)
        return report


@JobsRouter.job("equivariant-check", ["koszul", "stack", "check"])
class EquivariantCheck(ConfiguredJob):
    weights: list[int] = positional_parameter()
    degrees: tuple[int, int] | None = keyword_parameter(key="range")
    invariant_only: bool = keyword_parameter(default=False)

    def execute(self) -> Report:
        weights = build_weights(self.weights).validate()
        window = window_of(self.configurations, self.degrees)
        n0 = self.configurations.n0
        strands = StrandReport.merge(
            [
                equivariant_strand_check(weights, k, l, self.invariant_only)
                for k in window
                for l in window
                if k >= n0 and l >= n0
            ],
            n0,
        )
        report = self.report(weights=self.weights, invariant_only=self.invariant_only, n0=n0)
        add_failures(report, strands)

        eigensheaves = report.add_table("eigensheaf identity", ["k", "Σ_χ dim S_{k-|χ|}", "dim T_k"])
        mismatch = None
        for k in window:
            total, straight = eigensheaf_dimensions(weights, k)
            eigensheaves.add(k, total, straight)
            if total != straight and mismatch is None:
                mismatch = k

        verdicts = ["PASS" if strands.passed else f"FAIL at {strands.first_failure.degree}"]
        verdicts.append("eigensheaf PASS" if mismatch is None else f"eigensheaf FAIL at k={mismatch}")
        report.verdict = ", ".join(verdicts)
        return report
