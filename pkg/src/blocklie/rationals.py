"""Exact rational scalars and their wire format.

Every scalar in this package is a ``fractions.Fraction``: reduced,
positive denominator, arbitrary precision.  The wire format is the
compact string ``"p/q"``, shortened to ``"p"`` when the denominator
is one.
"""

from __future__ import annotations

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def format_rational(x: Fraction) -> str:
    """Render a Fraction as "p" or "p/q"."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(text: str | int) -> Fraction:
    """Parse "p" or "p/q" (JSON integers are accepted too)."""
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ValueError(f"rational must be a string or integer, got {text!r}")
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"malformed rational {text!r}") from exc
