from __future__ import annotations

from pykoszul.algebra_objects.beilinson import (
    CohomologyTable,
    ResolutionCertificate,
    beilinson_E1,
    k_theory_check,
    left_resolution,
    right_resolution,
)
from pykoszul.algebra_objects.monomials import Character
from pykoszul.algebra_objects.strands import StrandReport
from pykoszul.jobs.core import ConfiguredJob
from pykoszul.jobs.inputs import ModuleInput, build_module, build_stack, degree_bound, window_of
from pykoszul.jobs.parameters import keyword_parameter, positional_parameter
from pykoszul.jobs.router import JobsRouter
from pykoszul.reports import Report


def add_cohomology_table(report: Report, title: str, table: CohomologyTable) -> None:
    rows = report.add_table(title, ["p", "q", "character", "dim"])
    for (p, q, residues, _), dimension in table.items():
        rows.add(p, q, Character(residues, table.weights.weights), dimension)


def strand_verdict(report: StrandReport, window: range) -> str:
    start = max(window.start, report.n0)
    if start >= window.stop:
        return f"UNCERTIFIED: window lies below n0={report.n0}"
    failure = report.first_failure
    if failure is None:
        return f"PASS: exact on degrees {start}..{window.stop - 1}"
    return f"FAIL at position {failure.position}, degree {failure.degree}"


@JobsRouter.job("beilinson", ["stack", "resolution", "read"])
class Beilinson(ConfiguredJob):
    weights: list[int] = positional_parameter()
    module: ModuleInput = positional_parameter()
    degrees: tuple[int, int] | None = keyword_parameter(key="range")

    def execute(self) -> Report:
        stack = build_stack(self.weights)
        module = build_module(stack.ring, self.module)
        window = window_of(self.configurations, self.degrees)

        table = beilinson_E1(stack, module, degree_bound(module, self.configurations))
        report = self.report(weights=self.weights, sigma=stack.sigma)
        add_cohomology_table(report, "E_1", table)

        k_theory = report.add_table("K-theory", ["k", "Σ E_1 χ(O(p-|χ|+k))", "χ(a(k))"])
        rows = k_theory_check(stack, module, window, table)
        for row in rows:
            k_theory.add(row.k, row.expansion, row.expected)
        failure = next((row for row in rows if row.residual), None)
        report.verdict = "K-theory PASS" if failure is None else f"K-theory FAIL at k={failure.k}"
        return report


def certificate_report(job: ConfiguredJob, certificate: ResolutionCertificate, window: range) -> Report:
    report = job.report(side=certificate.side, vanishing=certificate.vanishing, n0=certificate.n0)
    terms = report.add_table("terms", ["index", "rank", "generator degrees"])
    for index in certificate.complex.indices():
        terms.add(index, certificate.complex.rank(index), list(certificate.complex.term(index)))
    add_cohomology_table(report, "cohomology table", certificate.table)

    strands = report.add_table("strands", ["degree", "position", "dim", "image", "kernel"])
    for row in certificate.report.rows:
        if not row.exact:
            strands.add(row.degree, row.position, row.dimension, row.image, row.kernel)
    report.verdict = strand_verdict(certificate.report, window)
    return report


@JobsRouter.job("resolve-left", ["stack", "resolution", "construct"])
class ResolveLeft(ConfiguredJob):
    weights: list[int] = positional_parameter()
    module: ModuleInput = positional_parameter()
    degrees: tuple[int, int] | None = keyword_parameter(key="range")

    def execute(self) -> Report:
        stack = build_stack(self.weights)
        module = build_module(stack.ring, self.module)
        window = window_of(self.configurations, self.degrees)
        certificate = left_resolution(stack, module, window, degree_bound(module, self.configurations))
        return certificate_report(self, certificate, window)


@JobsRouter.job("resolve-right", ["stack", "resolution", "construct"])
class ResolveRight(ConfiguredJob):
    weights: list[int] = positional_parameter()
    module: ModuleInput = positional_parameter()
    degrees: tuple[int, int] | None = keyword_parameter(key="range")

    def execute(self) -> Report:
        stack = build_stack(self.weights)
        module = build_module(stack.ring, self.module)
        window = window_of(self.configurations, self.degrees)
        certificate = right_resolution(stack, module, window, degree_bound(module, self.configurations))
        return certificate_report(self, certificate, window)
