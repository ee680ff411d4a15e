from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple, Union

RationalLike = Union[int, str, Fraction]


class RationalParseError(ValueError):
    """Raised when a value cannot be read as an exact rational."""


def to_fraction(value: RationalLike) -> Fraction:
    """Convert ints, fraction strings ("3/5") and decimal strings ("0.6") exactly.

    Floats are refused: their binary expansion is not the number the user typed.
    """
    if isinstance(value, bool):
        raise RationalParseError(f"Not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        raise RationalParseError(
            f"Float {value!r} rejected; pass an exact fraction string such as '3/5'"
        )
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as e:
            raise RationalParseError(f"Invalid rational '{value}': {e}") from e
    raise RationalParseError(f"Unsupported rational type: {type(value).__name__}")


def parse_rational_list(text: str, expected: int = 0) -> List[Fraction]:
    parts = [p for p in text.split(",") if p.strip()]
    if expected and len(parts) != expected:
        raise RationalParseError(f"Expected {expected} comma-separated values, got {len(parts)}")
    return [to_fraction(p) for p in parts]


def parse_int_list(text: str, expected: int = 0) -> List[int]:
    parts = [p.strip() for p in text.split(",") if p.strip()]
    if expected and len(parts) != expected:
        raise RationalParseError(f"Expected {expected} comma-separated integers, got {len(parts)}")
    try:
        return [int(p) for p in parts]
    except ValueError as e:
        raise RationalParseError(f"Invalid integer list '{text}'") from e


def rational_to_json(value: Fraction) -> Dict[str, Any]:
    return {"num": value.numerator, "den": value.denominator, "approx": float(value)}


def rational_from_json(data: Dict[str, Any]) -> Fraction:
    try:
        return Fraction(int(data["num"]), int(data["den"]))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise RationalParseError(f"Malformed rational object: {data!r}") from e


def format_rational(value: Fraction) -> str:
    """Human form: integers bare, otherwise 'p/q (decimal)'."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator} ({float(value):.4g})"


def format_point(point: Sequence[Fraction]) -> str:
    return "(" + ", ".join(str(v) for v in point) + ")"


def point_to_json(point: Tuple[Fraction, ...]) -> List[Dict[str, Any]]:
    return [rational_to_json(v) for v in point]
