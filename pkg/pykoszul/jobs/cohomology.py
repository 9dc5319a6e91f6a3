from __future__ import annotations

from pykoszul.algebra_objects.errors import ValidationError
from pykoszul.algebra_objects.stacks import (
    EquivariantCohomology,
    EquivariantModule,
    ModuleCohomology,
    bott_eigen,
    euler_characteristic,
    line_cohomology,
    stabilizer_cover,
)
from pykoszul.jobs.core import ConfiguredJob
from pykoszul.jobs.inputs import ModuleInput, build_module, build_stack, degree_bound
from pykoszul.jobs.parameters import keyword_parameter, positional_parameter
from pykoszul.jobs.router import JobsRouter
from pykoszul.reports import Report


def _twists(k: int | None, degrees: tuple[int, int] | None) -> range:
    if k is not None and degrees is not None:
        raise ValidationError("give either k or range, not both")
    if k is not None:
        return range(k, k + 1)
    if degrees is None:
        raise ValidationError("k or range required")
    if degrees[0] > degrees[1]:
        raise ValidationError(f"range {degrees[0]}..{degrees[1]} is empty")
    return range(degrees[0], degrees[1] + 1)


@JobsRouter.job("cohomology", ["stack", "read"])
class Cohomology(ConfiguredJob):
    weights: list[int] = positional_parameter()
    k: int | None = keyword_parameter()
    degrees: tuple[int, int] | None = keyword_parameter(key="range")
    module: ModuleInput | None = keyword_parameter()
    by_character: bool = keyword_parameter(default=False)

    def execute(self) -> Report:
        stack = build_stack(self.weights)
        twists = _twists(self.k, self.degrees)
        columns = ["k", *(f"h^{q}" for q in range(stack.n + 1)), "χ"]
        report = self.report(weights=self.weights, sigma=stack.sigma)

        if self.module is None:
            if self.by_character:
                raise ValidationError("by_character needs a module")
            table = report.add_table("line bundle cohomology", columns)
            for k in twists:
                values = line_cohomology(stack, k)
                table.add(k, *values, euler_characteristic(values))
            return report

        module = build_module(stack.ring, self.module)
        bound = degree_bound(module, self.configurations)
        if self.by_character:
            equivariant = EquivariantCohomology(EquivariantModule.pullback(module, stack), bound)
            table = report.add_table("cohomology of the pullback by character", ["character", *columns])
            for k in twists:
                for character, values in sorted(equivariant.at(k).items()):
                    table.add(character, k, *values, euler_characteristic(values))
            return report

        cohomology = ModuleCohomology(module, bound)
        table = report.add_table("sheaf cohomology", columns)
        for k in twists:
            values = cohomology.at(k)
            table.add(k, *values, euler_characteristic(values))
        return report


@JobsRouter.job("bott", ["stack", "read"])
class Bott(ConfiguredJob):
    weights: list[int] = positional_parameter()
    p: int = positional_parameter(nonnegative=True)
    t: int | None = keyword_parameter()
    degrees: tuple[int, int] | None = keyword_parameter(key="range")

    def execute(self) -> Report:
        stack = build_stack(self.weights)
        twists = _twists(self.t, self.degrees)
        report = self.report(weights=self.weights, p=self.p)
        table = report.add_table(
            f"H^q(P^n, Ω^{self.p}(t)) by character", ["t", "character", *(f"h^{q}" for q in range(stack.n + 1))]
        )
        for t in twists:
            for character, values in sorted(bott_eigen(stack, self.p, t).items()):
                if any(values):
                    table.add(t, character, *values)
        return report


@JobsRouter.job("stabilizer-cover", ["stack", "read"])
class StabilizerCover(ConfiguredJob):
    weights: list[int] = positional_parameter()

    def execute(self) -> Report:
        stack = build_stack(self.weights)
        report = self.report(weights=self.weights)
        cover = stabilizer_cover(stack)
        table = report.add_table("fixed points", ["i", "stabilizer order", "j_0"])
        for index, j0 in cover.items():
            table.add(index, stack.weights.weights[index], j0)
        report.fields["max j_0"] = max(cover.values())
        return report
