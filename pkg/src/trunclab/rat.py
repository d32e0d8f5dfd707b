"""Exact rational parsing/formatting helpers ("p/q" notation, "/1" suppressed)."""

from fractions import Fraction

from .errors import TruncLabError

POS_INF = float("inf")
NEG_INF = float("-inf")


def parse_rational(token):
    """Parse "p", "-p" or "p/q" into a Fraction."""
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError) as exc:
        raise TruncLabError(f"bad rational {token!r}: {exc}") from exc


def parse_extended(token):
    """Like parse_rational but also accepts "inf" and "-inf"."""
    if token == "inf":
        return POS_INF
    if token == "-inf":
        return NEG_INF
    return parse_rational(token)


def format_rational(value):
    """Lowest-terms string; integers print without the denominator."""
    if value == POS_INF:
        return "inf"
    if value == NEG_INF:
        return "-inf"
    f = Fraction(value)
    if f.denominator == 1:
        return str(f.numerator)
    return f"{f.numerator}/{f.denominator}"


def is_finite(value):
    return value != POS_INF and value != NEG_INF


def sort_key(label):
    """Deterministic ordering key for opaque labels, stable across processes."""
    if isinstance(label, frozenset):
        inner = sorted((sort_key(x) for x in label))
        return ("frozenset", tuple(inner))
    if isinstance(label, tuple):
        return ("tuple", tuple(sort_key(x) for x in label))
    return (type(label).__name__, str(label))


def sorted_labels(labels):
    return sorted(labels, key=sort_key)


def format_label(label):
    if isinstance(label, frozenset):
        return "{" + ",".join(format_label(x) for x in sorted_labels(label)) + "}"
    return str(label)
