from __future__ import annotations

import logging

from pykoszul.algebra_objects.complexes import (
    HypothesisReport,
    convolution_morphism,
    hom_derived,
    hom_homology,
    homology_table,
    left_convolution,
    require_complex,
    right_convolution,
    totalization,
)
from pykoszul.algebra_objects.errors import ValidationError
from pykoszul.algebra_objects.free_modules import ChainMap, FreeComplex
from pykoszul.algebra_objects.graded import GradedAlgebra
from pykoszul.jobs.core import ConfiguredJob
from pykoszul.jobs.inputs import ComplexInput, MapInput, build_algebra, build_complex, build_map
from pykoszul.jobs.parameters import keyword_parameter, positional_parameter
from pykoszul.jobs.router import JobsRouter
from pykoszul.reports import Report

logger = logging.getLogger(__name__)


def build_sequence(
    algebra: GradedAlgebra, complexes: list[ComplexInput], maps: list[MapInput], name: str
) -> tuple[list[FreeComplex], list[ChainMap]]:
    if len(maps) != len(complexes) - 1:
        raise ValidationError(f"{len(complexes)} {name} need {len(complexes) - 1} maps")
    sequence = [require_complex(build_complex(algebra, item, f"{name}[{p}]")) for p, item in enumerate(complexes)]
    chain_maps = [
        build_map(sequence[p], sequence[p - 1], item, f"maps[{p - 1}]") for p, item in enumerate(maps, start=1)
    ]
    return sequence, chain_maps


def add_complex_table(report: Report, title: str, complex_: FreeComplex) -> None:
    table = report.add_table(title, ["index", "generator degrees"])
    for index in complex_.indices():
        table.add(index, list(complex_.term(index)))


def add_hypothesis_table(report: Report, hypothesis: HypothesisReport) -> None:
    table = report.add_table("Hom(a_p[r], a_q), p > q", ["p", "q", "r", "dim"])
    for (p, q, r), dimension in hypothesis.entries.items():
        if dimension:
            table.add(p, q, r, dimension)
    report.fields["hypothesis holds"] = hypothesis.holds


@JobsRouter.job("convolve", ["complexes", "construct"])
class Convolve(ConfiguredJob):
    weights: list[int] = positional_parameter()
    complexes: list[ComplexInput] = positional_parameter()
    maps: list[MapInput] = keyword_parameter(default_factory=list)
    relations: list[str] = keyword_parameter(default_factory=list)
    side: str = keyword_parameter(values_mapping={"right": "right", "left": "left"}, default="right")
    bracketing: str = keyword_parameter(values_mapping={"top": "top", "bottom": "bottom"}, default="top")
    r_max: int | None = keyword_parameter(nonnegative=True)
    hom_window: tuple[int, int] | None = keyword_parameter()
    targets: list[ComplexInput] = keyword_parameter(default_factory=list)
    target_maps: list[MapInput] = keyword_parameter(default_factory=list)
    components: list[MapInput] = keyword_parameter(default_factory=list)

    def execute(self) -> Report:
        algebra = build_algebra(self.weights, self.relations)
        sequence, maps = build_sequence(algebra, self.complexes, self.maps, "complexes")
        hom_window = self.hom_window if self.hom_window is not None else (0, 0)
        window = self.configurations.window

        if self.side == "left":
            if self.bracketing != "top":
                raise ValidationError("left convolutions have a single bracketing")
            trace = left_convolution(sequence, maps, hom_window, self.r_max)
        else:
            trace = right_convolution(sequence, maps, hom_window, self.bracketing, self.r_max)
        logger.info("convolution of %d terms: %d intermediate cones", len(sequence), len(trace.intermediates))

        report = self.report(side=trace.side, bracketing=trace.bracketing, terms=len(sequence))
        add_complex_table(report, "convolution", trace.result)
        add_hypothesis_table(report, trace.hypothesis)

        total = totalization(sequence, maps)
        # the left convolution is the totalization shifted down by m
        shift = -(len(sequence) - 1) if trace.side == "left" else 0
        expected = {(index + shift, degree): value for (index, degree), value in homology_table(total, window).items()}
        actual = homology_table(trace.result, window)
        mismatch = next(
            (key for key in sorted(set(expected) | set(actual)) if expected.get(key, 0) != actual.get(key, 0)), None
        )
        homology = report.add_table("homology", ["index", "degree", "dim"])
        for (index, degree), dimension in actual.items():
            if dimension:
                homology.add(index, degree, dimension)

        verdicts = ["matches totalization" if mismatch is None else f"differs from totalization at {mismatch}"]
        if self.components:
            targets, target_maps = build_sequence(algebra, self.targets, self.target_maps, "targets")
            components = [
                build_map(sequence[p], targets[p], item, f"components[{p}]") for p, item in enumerate(self.components)
            ]
            morphism = convolution_morphism(sequence, maps, targets, target_maps, components, hom_window, self.r_max)
            report.fields["induced morphism unique"] = morphism.hypothesis.holds
            verdicts.append(f"induced morphism on {len(list(morphism.chain_map.indices()))} indices")
        report.verdict = ", ".join(verdicts)
        return report


@JobsRouter.job("hom", ["complexes", "read"])
class Hom(ConfiguredJob):
    weights: list[int] = positional_parameter()
    source: ComplexInput = positional_parameter()
    target: ComplexInput = positional_parameter()
    r: int = positional_parameter()
    relations: list[str] = keyword_parameter(default_factory=list)
    degrees: tuple[int, int] | None = keyword_parameter(key="range")

    def execute(self) -> Report:
        algebra = build_algebra(self.weights, self.relations)
        source = require_complex(build_complex(algebra, self.source, "source"))
        target = require_complex(build_complex(algebra, self.target, "target"))
        window = self.degrees if self.degrees is not None else (0, 0)

        report = self.report(r=self.r, dimension=hom_derived(source, target, self.r, window))
        table = report.add_table("Hom(F, G[r]) by internal degree", ["t", "dim"])
        for t in range(window[0], window[1] + 1):
            table.add(t, hom_homology(source, target, -self.r, t))
        return report
