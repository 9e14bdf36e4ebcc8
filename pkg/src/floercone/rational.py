"""Exact rationals.  ``Rat`` is :class:`fractions.Fraction`, always in lowest terms."""

from __future__ import annotations

import re
from fractions import Fraction

Rat = Fraction

_RAT_RE = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_rat(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer literal.  Decimals are rejected."""
    m = _RAT_RE.match(str(text))
    if m is None:
        raise ValueError(f"not an exact rational (use p/q or an integer): {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator: {text!r}")
    return Fraction(num, den)


def fmt_rat(value: Fraction | int | None) -> str | None:
    if value is None:
        return None
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"
