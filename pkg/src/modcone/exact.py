"""Exact-arithmetic helpers shared by every module.

All numerics in this package are `fractions.Fraction`; floats never enter a
computation.  Decimal strings produced here are for display only.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction

_RATIONAL_RE = re.compile(r"^[+-]?\d+(/[1-9]\d*)?$")


def parse_fraction(text: str) -> Fraction:
    """Parse "p" or "p/q" into a Fraction; rejects anything else (floats included)."""
    if not isinstance(text, str) or not _RATIONAL_RE.match(text.strip()):
        raise ValueError(f"not an exact rational: {text!r}")
    return Fraction(text.strip())


def format_fraction(value: Fraction) -> str:
    """Render as "p" for integers, "p/q" otherwise."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def decimal_str(value: Fraction, places: int = 10) -> str:
    """Display-only decimal expansion, truncated to `places` digits.

    Terminating expansions are printed exactly; truncated ones get a
    trailing "..." so a reader never mistakes them for exact values.
    """
    value = Fraction(value)
    sign = "-" if value < 0 else ""
    num = abs(value.numerator)
    den = value.denominator
    whole, rem = divmod(num, den)
    if rem == 0:
        return f"{sign}{whole}"
    digits = []
    for _ in range(places):
        rem *= 10
        d, rem = divmod(rem, den)
        digits.append(str(d))
        if rem == 0:
            break
    tail = "" if rem == 0 else "..."
    return f"{sign}{whole}." + "".join(digits) + tail


def binomial(n: int, k: int) -> int:
    """C(n, k), zero outside 0 <= k <= n (convenient for alternating sums)."""
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def inv_factorial(k: int) -> Fraction:
    """1/k! with the convention 1/(negative)! = 0."""
    if k < 0:
        return Fraction(0)
    return Fraction(1, math.factorial(k))
