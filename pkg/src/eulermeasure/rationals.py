"""Coercion helpers for exact rationals.

Every quantity in this package is an exact ``fractions.Fraction``;
floating-point values are rejected rather than converted, since a float
that reaches the core would silently poison exactness.
"""

from fractions import Fraction

from .errors import InputError


def as_fraction(value) -> Fraction:
    """Coerce an int, Fraction or "p/q" string to a Fraction.

    Floats are refused on purpose: callers must supply exact input.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"cannot interpret {value!r} as a rational number")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ZeroDivisionError:
            raise InputError(f"division by zero in rational literal {value!r}") from None
        except ValueError:
            raise InputError(f"not a rational literal: {value!r}") from None
    if isinstance(value, float):
        raise InputError(
            f"refusing float {value!r}: this library is exact, pass int, Fraction or 'p/q'"
        )
    raise InputError(f"cannot interpret {value!r} as a rational number")


def fraction_str(value: Fraction) -> str:
    """Render a Fraction as "p/q" (or a bare integer when q == 1)."""
    return str(value)
