"""Exact-rational helpers shared by every module.

All probabilities, ratios, and matrix entries are `fractions.Fraction`.
Floats entering through an API or the CLI are read via their shortest
decimal repr, so a user-supplied 0.1 means exactly 1/10 and threshold
comparisons never drift on binary rounding.
"""

from __future__ import annotations

from fractions import Fraction


def as_fraction(x) -> Fraction:
    """Coerce ints, floats, strings like '1/10' or '0.1', and Fractions."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(repr(x))
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def frac_str(q: Fraction) -> str:
    """Render as 'num/den' ('3' when the denominator is 1)."""
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def frac_json(q: Fraction) -> dict:
    """JSON shape used for exact rationals: decimal strings for num/den."""
    return {"num": str(q.numerator), "den": str(q.denominator)}


def fmt12(x: float) -> str:
    """Floats in CSV output carry 12 significant digits."""
    return format(float(x), ".12g")
