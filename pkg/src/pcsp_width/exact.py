from __future__ import annotations

from fractions import Fraction
from numbers import Rational


def as_fraction(x, name: str = "value") -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings; floats are rejected."""
    if isinstance(x, bool):
        raise TypeError(f"{name} must be rational, got bool")
    if isinstance(x, Rational):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"{name}: cannot parse {x!r} as a rational p/q") from exc
    raise TypeError(f"{name} must be an exact rational (int, Fraction or 'p/q'), got {type(x).__name__}")


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
