from __future__ import annotations

from fractions import Fraction
from functools import cache
from tokenize import TokenError

import sympy
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations
from sympy.polys.polyerrors import BasePolynomialError

from pykoszul.algebra_objects.errors import ValidationError
from pykoszul.algebra_objects.monomials import Monomial, Polynomial

TRANSFORMATIONS = (*standard_transformations, convert_xor)


@cache
def _symbols(variables: int) -> tuple[sympy.Symbol, ...]:
    return tuple(sympy.Symbol(f"x{i}") for i in range(variables))


def parse_polynomial(text: str, variables: int) -> Polynomial:
    """Parses text like ``3*x0^2*x1 - 1/2*x2^3`` into an exact polynomial in ``variables`` variables."""
    symbols = _symbols(variables)
    local_names = {str(symbol): symbol for symbol in symbols}
    try:
        expression = parse_expr(str(text), local_dict=local_names, transformations=TRANSFORMATIONS, evaluate=True)
    except (SyntaxError, TokenError, TypeError, sympy.SympifyError) as e:
        raise ValidationError(f"cannot parse polynomial '{text}'") from e

    unknown = expression.free_symbols - set(symbols)
    if unknown:
        names = ", ".join(sorted(str(symbol) for symbol in unknown))
        raise ValidationError(f"polynomial '{text}' uses unknown variables: {names}")

    try:
        polynomial = sympy.Poly(expression, *symbols, domain=sympy.QQ)
    except BasePolynomialError as e:
        raise ValidationError(f"'{text}' is not a polynomial") from e

    return Polynomial.from_dict(
        variables,
        {
            Monomial(tuple(int(exponent) for exponent in exponents)): Fraction(int(c.p), int(c.q))
            for exponents, c in polynomial.terms()
            if c
        },
    )


def format_polynomial(polynomial: Polynomial) -> str:
    return str(polynomial)
