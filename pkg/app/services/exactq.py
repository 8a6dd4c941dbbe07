import math
import re
from enum import Enum
from fractions import Fraction

Rational = Fraction

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


class RoundingDirection(str, Enum):
    UP = "up"
    DOWN = "down"


def rational_from_string(text: str) -> Rational:
    """Parse "p/q" or "p". Decimal notation is rejected so that 1.97 has to be written 197/100."""
    match = _RATIONAL_PATTERN.match(text) if isinstance(text, str) else None
    if match is None:
        raise ValueError(f"Invalid rational: {text!r}")
    numerator = int(match.group(1))
    denominator = int(match.group(2)) if match.group(2) is not None else 1
    if denominator == 0:
        raise ValueError(f"Invalid rational: {text!r} has a zero denominator")
    return Fraction(numerator, denominator)


def rational_to_string(value: Rational) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rational_pow(value: Rational, exponent: int) -> Rational:
    if exponent < 0:
        raise ValueError(f"Exponent must be non-negative, got {exponent}")
    return Fraction(value) ** exponent


def round_dyadic(value: Rational, bits: int, direction: RoundingDirection | str) -> Rational:
    """Closest multiple of 2^-bits on the requested side of value; dyadic inputs are fixed points."""
    if bits < 1:
        raise ValueError(f"bits must be positive, got {bits}")
    direction = RoundingDirection(direction)
    scale = 1 << bits
    scaled = Fraction(value) * scale
    steps = math.ceil(scaled) if direction is RoundingDirection.UP else math.floor(scaled)
    return Fraction(steps, scale)
