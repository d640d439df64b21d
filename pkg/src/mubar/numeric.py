"""Exact rational helpers and the sawtooth function.

Rationals are plain :class:`fractions.Fraction` objects. They are always
kept in lowest terms with a positive denominator, so ``==`` is structural.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Union

from .exceptions import InputError

ExactRational = Fraction
RationalLike = Union[int, Fraction, str]

__all__ = [
    "ExactRational",
    "as_rational",
    "format_rational",
    "fractional_part",
    "parse_rational",
    "sawtooth",
]


def as_rational(value: RationalLike) -> Fraction:
    if isinstance(value, bool):
        raise InputError(f"not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise InputError(f"not an exact rational: {value!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"n"`` or ``"n/d"``; a typographic minus sign is accepted."""
    cleaned = text.strip().replace("−", "-")
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"cannot parse rational {text!r}") from exc


def format_rational(r: Fraction | int) -> str:
    """Canonical text form: ``"n/d"`` in lowest terms, ``"n"`` when d = 1."""
    r = Fraction(r)
    if r.denominator == 1:
        return str(r.numerator)
    return f"{r.numerator}/{r.denominator}"


def fractional_part(r: RationalLike) -> Fraction:
    """Return ``r - floor(r)``, which lies in [0, 1)."""
    r = as_rational(r)
    return r - math.floor(r)


def sawtooth(r: RationalLike) -> Fraction:
    """The sawtooth ``((r))``: zero on integers, ``{r} - 1/2`` elsewhere."""
    r = as_rational(r)
    if r.denominator == 1:
        return Fraction(0)
    return fractional_part(r) - Fraction(1, 2)
