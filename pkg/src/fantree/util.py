from __future__ import annotations

from fractions import Fraction

from .errors import DocumentError
from .types import describe_rational


def parse_rational(token: str | int | Fraction) -> Fraction:
    """
    Parse "p/q", "n", an int or a Fraction into a reduced Fraction.

    Floats are refused: every quantity here is exact.
    """
    if isinstance(token, bool):
        msg = f"Not a rational: {token!r}"
        raise DocumentError(msg)
    if isinstance(token, (int, Fraction)):
        return Fraction(token)
    if not isinstance(token, str):
        msg = f"Not a rational: {token!r}"
        raise DocumentError(msg)
    text = token.strip().replace(" ", "")
    if "." in text or "e" in text.lower():
        msg = f"Not a rational: {token!r}; write decimals as p/q"
        raise DocumentError(msg)
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        msg = f"Not a rational: {token!r}"
        raise DocumentError(msg) from None


def format_rational(value: Fraction | int) -> str:
    return describe_rational(value)


def ceil_fraction(value: Fraction) -> int:
    return -((-value.numerator) // value.denominator)
