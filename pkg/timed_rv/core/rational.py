"""
Exact rational constants with 64-bit range checking
"""

from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Union

from ..exceptions import RationalOverflowError

INT64_MAX = 2**63 - 1
INT64_MIN = -(2**63)

RationalLike = Union[Fraction, int, str]


def check_rational(value: Fraction) -> Fraction:
    """Raise if numerator or denominator leave the signed 64-bit range"""
    if not INT64_MIN <= value.numerator <= INT64_MAX or value.denominator > INT64_MAX:
        raise RationalOverflowError(f"rational {value} exceeds 64-bit range")
    return value


def parse_rational(value: RationalLike) -> Fraction:
    """Parse an int, a decimal string or an "a/b" string into an exact Fraction.

    Floats are rejected: their binary expansion is not the number the user wrote.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return check_rational(value)
    if isinstance(value, int):
        return check_rational(Fraction(value))
    if isinstance(value, str):
        text = value.strip()
        try:
            if "/" in text:
                result = Fraction(text)
            else:
                result = Fraction(Decimal(text))
        except (ValueError, ZeroDivisionError, OverflowError, InvalidOperation) as e:
            raise ValueError(f"not a rational: {value!r}") from e
        return check_rational(result)
    raise TypeError(f"cannot read {type(value).__name__} as a rational")


def format_rational(value: Fraction) -> str:
    """Render as "7" or "7/2"; the inverse of parse_rational"""
    return str(value)
