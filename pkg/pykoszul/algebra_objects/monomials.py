from __future__ import annotations

import itertools
import math
from collections.abc import Iterator, Mapping
from dataclasses import dataclass
from fractions import Fraction
from functools import cache
from typing import Self

from pykoszul.algebra_objects.errors import InhomogeneousError, NotWellFormedError, ValidationError
from pykoszul.algebra_objects.linear import ZERO, Matrix


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.weights:
            raise ValidationError("weights required")
        if any(not isinstance(weight, int) or weight < 1 for weight in self.weights):
            raise ValidationError(f"weights must be positive integers, got {list(self.weights)}")

    @classmethod
    def ones(cls, variables: int) -> Self:
        return cls((1,) * variables)

    @property
    def sigma(self) -> int:
        return sum(self.weights)

    @property
    def n(self) -> int:
        return len(self.weights) - 1

    @property
    def variables(self) -> int:
        return len(self.weights)

    @property
    def group_order(self) -> int:
        return math.prod(self.weights)

    def offending_subset(self) -> tuple[int, ...] | None:
        """The first subset of ``n`` weights sharing a common factor, or the pair itself when ``n`` is one."""
        if self.n == 0:
            return self.weights
        size = self.n if self.n >= 2 else 2
        for subset in itertools.combinations(self.weights, size):
            if math.gcd(*subset) != 1:
                return subset
        return None

    @property
    def is_well_formed(self) -> bool:
        return self.offending_subset() is None

    def validate(self) -> Self:
        subset = self.offending_subset()
        if subset is not None:
            raise NotWellFormedError(self.weights, subset)
        return self

    def characters(self) -> tuple[Character, ...]:
        return tuple(
            Character(residues, self.weights)
            for residues in itertools.product(*(range(weight) for weight in self.weights))
        )

    def trivial_character(self) -> Character:
        return Character((0,) * self.variables, self.weights)

    def unit_character(self, index: int) -> Character:
        return Character(tuple(1 % weight if i == index else 0 for i, weight in enumerate(self.weights)), self.weights)

    def hilbert_coefficients(self, up_to: int) -> tuple[int, ...]:
        """Coefficients of t^0..t^up_to in the product of 1/(1 - t^a_i), by power-series arithmetic."""
        series = [1] + [0] * up_to
        for weight in self.weights:
            for degree in range(weight, up_to + 1):
                series[degree] += series[degree - weight]
        return tuple(series)


@dataclass(frozen=True, order=True)
class Monomial:
    exponents: tuple[int, ...]

    @classmethod
    def one(cls, variables: int) -> Self:
        return cls((0,) * variables)

    @classmethod
    def variable(cls, index: int, variables: int) -> Self:
        return cls(tuple(1 if i == index else 0 for i in range(variables)))

    def degree(self, weights: WeightVector) -> int:
        if len(self.exponents) != weights.variables:
            raise ValidationError(f"monomial has {len(self.exponents)} variables, weights have {weights.variables}")
        return sum(weight * exponent for weight, exponent in zip(weights.weights, self.exponents))

    def __mul__(self, other: Monomial) -> Monomial:
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def divides(self, other: Monomial) -> bool:
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def sort_key(self) -> tuple[int, ...]:
        return tuple(reversed(self.exponents))

    def __str__(self) -> str:
        factors = [
            f"x{i}" if exponent == 1 else f"x{i}^{exponent}" for i, exponent in enumerate(self.exponents) if exponent
        ]
        return "*".join(factors) or "1"


@dataclass(frozen=True)
class Character:
    residues: tuple[int, ...]
    moduli: tuple[int, ...]

    def __post_init__(self) -> None:
        if any(not 0 <= residue < modulus for residue, modulus in zip(self.residues, self.moduli)):
            raise ValidationError(f"residues {list(self.residues)} out of range for {list(self.moduli)}")

    @classmethod
    def of_exponents(cls, exponents: tuple[int, ...], moduli: tuple[int, ...]) -> Self:
        return cls(tuple(exponent % modulus for exponent, modulus in zip(exponents, moduli)), moduli)

    @property
    def norm(self) -> int:
        return sum(self.residues)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(i for i, residue in enumerate(self.residues) if residue)

    @property
    def is_trivial(self) -> bool:
        return not any(self.residues)

    def __neg__(self) -> Character:
        return Character.of_exponents(tuple(-residue for residue in self.residues), self.moduli)

    def __add__(self, other: Character) -> Character:
        return Character.of_exponents(tuple(a + b for a, b in zip(self.residues, other.residues)), self.moduli)

    def __sub__(self, other: Character) -> Character:
        return self + (-other)

    def __lt__(self, other: Character) -> bool:
        return self.residues < other.residues

    def __str__(self) -> str:
        return "(" + ",".join(str(residue) for residue in self.residues) + ")"


def character_of(weights: WeightVector, monomial: Monomial) -> Character:
    if len(monomial.exponents) != weights.variables:
        raise ValidationError("monomial and weights have different lengths")
    return Character.of_exponents(monomial.exponents, weights.weights)


@cache
def _monomial_basis(weights: tuple[int, ...], degree: int) -> tuple[Monomial, ...]:
    def generate(index: int, remaining: int) -> Iterator[tuple[int, ...]]:
        if index < 0:
            if remaining == 0:
                yield ()
            return
        weight = weights[index]
        for exponent in range(remaining // weight + 1):
            for rest in generate(index - 1, remaining - exponent * weight):
                yield (*rest, exponent)

    if degree < 0:
        return ()
    monomials = (Monomial(exponents) for exponents in generate(len(weights) - 1, degree))
    return tuple(sorted(monomials, key=Monomial.sort_key))


def monomial_basis(weights: WeightVector, degree: int) -> tuple[Monomial, ...]:
    return _monomial_basis(weights.weights, degree)


@cache
def _monomial_index(weights: tuple[int, ...], degree: int) -> Mapping[Monomial, int]:
    return {monomial: index for index, monomial in enumerate(_monomial_basis(weights, degree))}


def monomial_index(weights: WeightVector, degree: int) -> Mapping[Monomial, int]:
    return _monomial_index(weights.weights, degree)


@dataclass(frozen=True)
class Polynomial:
    variables: int
    terms: tuple[tuple[Monomial, Fraction], ...]

    @classmethod
    def from_dict(cls, variables: int, terms: Mapping[Monomial, Fraction | int]) -> Self:
        nonzero = ((monomial, Fraction(c)) for monomial, c in terms.items() if c)
        return cls(variables, tuple(sorted(nonzero, key=lambda t: t[0].sort_key())))

    @classmethod
    def zero(cls, variables: int) -> Self:
        return cls(variables, ())

    @classmethod
    def constant(cls, value: Fraction | int, variables: int) -> Self:
        return cls.from_dict(variables, {Monomial.one(variables): Fraction(value)})

    @classmethod
    def monomial(cls, monomial: Monomial, coefficient: Fraction | int = 1) -> Self:
        return cls.from_dict(len(monomial.exponents), {monomial: Fraction(coefficient)})

    @classmethod
    def variable(cls, index: int, variables: int) -> Self:
        return cls.monomial(Monomial.variable(index, variables))

    def as_dict(self) -> dict[Monomial, Fraction]:
        return dict(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: Polynomial) -> Polynomial:
        terms = self.as_dict()
        for monomial, coefficient in other.terms:
            terms[monomial] = terms.get(monomial, ZERO) + coefficient
        return Polynomial.from_dict(self.variables, terms)

    def __neg__(self) -> Polynomial:
        return self.scale(-1)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def scale(self, factor: Fraction | int) -> Polynomial:
        return Polynomial.from_dict(self.variables, {monomial: c * factor for monomial, c in self.terms})

    def __mul__(self, other: Polynomial) -> Polynomial:
        terms: dict[Monomial, Fraction] = {}
        for left, a in self.terms:
            for right, b in other.terms:
                product = left * right
                terms[product] = terms.get(product, ZERO) + a * b
        return Polynomial.from_dict(self.variables, terms)

    def degrees(self, weights: WeightVector) -> set[int]:
        return {monomial.degree(weights) for monomial, _ in self.terms}

    def is_homogeneous(self, weights: WeightVector) -> bool:
        return len(self.degrees(weights)) <= 1

    def degree(self, weights: WeightVector) -> int | None:
        """Weighted degree of a homogeneous polynomial, ``None`` for zero."""
        degrees = self.degrees(weights)
        if len(degrees) > 1:
            raise InhomogeneousError(f"polynomial {self} is not homogeneous for weights {list(weights.weights)}")
        return degrees.pop() if degrees else None

    def pullback(self, weights: WeightVector) -> Polynomial:
        """Image under x_i -> x_i^a_i."""
        return Polynomial.from_dict(
            self.variables,
            {
                Monomial(tuple(exponent * weight for exponent, weight in zip(monomial.exponents, weights.weights))): c
                for monomial, c in self.terms
            },
        )

    def descend(self, weights: WeightVector) -> Polynomial:
        """Inverse of ``pullback`` on polynomials all of whose exponents are divisible by the weights."""
        terms = {}
        for monomial, c in self.terms:
            if any(exponent % weight for exponent, weight in zip(monomial.exponents, weights.weights)):
                raise ValidationError(f"polynomial {self} is not invariant")
            terms[Monomial(tuple(e // a for e, a in zip(monomial.exponents, weights.weights)))] = c
        return Polynomial.from_dict(self.variables, terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for monomial, coefficient in reversed(self.terms):
            magnitude = abs(coefficient)
            sign = "-" if coefficient < 0 else "+"
            if monomial.exponents == (0,) * self.variables:
                body = str(magnitude)
            elif magnitude == 1:
                body = str(monomial)
            else:
                body = f"{magnitude}*{monomial}"
            parts.append(f"{sign} {body}")
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def mult_map(
    weights: WeightVector, multiplier: Polynomial, degree: int, multiplier_degree: int | None = None
) -> Matrix:
    """Matrix of multiplication by ``multiplier`` from the degree-``degree`` basis to the shifted basis."""
    if not multiplier.is_homogeneous(weights):
        raise InhomogeneousError("inhomogeneous multiplier")
    shift = multiplier.degree(weights)
    if shift is None:
        if multiplier_degree is None:
            raise ValidationError("degree of the zero multiplier must be given")
        shift = multiplier_degree
    source = monomial_basis(weights, degree)
    target_index = monomial_index(weights, degree + shift)
    values: dict[tuple[int, int], Fraction] = {}
    for column, monomial in enumerate(source):
        for factor, coefficient in multiplier.terms:
            row = target_index[monomial * factor]
            values[row, column] = values.get((row, column), ZERO) + coefficient
    return Matrix.from_sparse(len(target_index), len(source), values)
