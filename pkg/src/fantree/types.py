from __future__ import annotations

from fractions import Fraction
from typing import Annotated

from annotated_types import Predicate
from typeguard import typechecked


def _is_positive(value) -> bool:
    return value > 0


TPositiveRational = Annotated[Fraction, Predicate(_is_positive)]
"""A coefficient xi or an upper bound on jumping numbers."""

TExponentPair = tuple[int, int]
"""
An exponent (i, j) of the monomial x^i y^j, equivalently a point of the weight lattice M.
The first coordinate always belongs to x (the branch R), the second to y (the branch L).
"""


@typechecked
def describe_rational(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
