"""Exact rational scalars.

Probabilities throughout the package are :class:`fractions.Fraction`
values: arbitrary-precision, always canonical (positive denominator,
reduced), with exact arithmetic and comparison.  This module adds the
text conventions used by the file formats and the CLI:

* parsing accepts ``"p/q"``, finite decimal strings (``"0.03750"``),
  and plain integers, all converted exactly;
* rendering is either the canonical fraction form (``str(Fraction)``,
  which round-trips) or a fixed-width decimal used only for display.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import ParseError

Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, a finite decimal, or an integer into an exact Fraction.

    Decimal strings convert via power-of-ten denominators, never through
    binary floating point, so ``"0.03750"`` is exactly ``3/80``.
    """
    if not isinstance(text, str):
        raise ParseError(f"rational literal must be a string, got {type(text).__name__}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise ParseError(f"zero denominator in rational literal {text!r}") from None
    except ValueError:
        raise ParseError(f"malformed rational literal {text!r}") from None


def format_rational(value: Fraction) -> str:
    """Canonical text form: ``"p/q"``, or ``"p"`` for integers. Round-trips."""
    return str(value)


def decimal_string(value: Fraction, places: int = 5) -> str:
    """Fixed-point decimal rendering, e.g. ``1/5 -> "0.20000"``.

    Rounds half away from zero using integer arithmetic.  Display only:
    nothing in the package compares or stores these strings as numbers.
    """
    if places < 0:
        raise ValueError("places must be >= 0")
    sign = "-" if value < 0 else ""
    scaled = abs(value) * 10**places
    whole, rem = divmod(scaled.numerator, scaled.denominator)
    if 2 * rem >= scaled.denominator:
        whole += 1
    if places == 0:
        return f"{sign}{whole}"
    digits = str(whole).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}"
