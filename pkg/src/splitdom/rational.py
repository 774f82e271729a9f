"""Rational number helpers.

Public values are :class:`fractions.Fraction`. The LP kernel runs on
``gmpy2.mpq`` when it is importable, since it is roughly ten times faster
and also keeps every value in lowest terms.
"""

from __future__ import annotations

import re
from fractions import Fraction

try:
    from gmpy2 import mpq as Q
except ImportError:  # pragma: no cover
    Q = Fraction

_RATIONAL_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+)\s*)?$")


def to_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise TypeError("floating point values are not accepted; use int or 'p/q'")
    return Fraction(int(value.numerator), int(value.denominator))


def parse_rational(text) -> Fraction:
    """Parse an integer or a ``"p/q"`` string. Decimal points are rejected."""
    if isinstance(text, bool):
        raise ValueError(f"not a rational: {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"not a rational: {text!r}")
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def format_rational(value) -> str:
    """Always ``"p/q"`` with ``q > 0`` in lowest terms, including ``"1/1"``."""
    f = to_fraction(value)
    return f"{f.numerator}/{f.denominator}"
