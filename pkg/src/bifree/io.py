"""JSON serialization for distribution data.

Rationals travel as JSON integers or strings ``"p/q"``; floats are rejected
outright so generic tooling can never corrupt a value.  Documents carry a
``format_version`` and a ``kind`` from {two_bands_pair, rank1_system,
moment_seq} for inputs, plus ``partial_r_table`` for emitted cumulant
tables.  Unknown fields are rejected and serialization is canonical
(sorted keys, two-space indent), so parse -> serialize -> parse is the
identity and equal data always produces byte-identical files.

Words over the variables are whitespace-separated letters: ``a<label>`` for
left, ``b<label>`` for right, e.g. ``"a1 b2 a1"``; the empty string is the
empty word.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .oracle import LEFT, RIGHT
from .partial_r import PartialRTable, TwoBandsTable
from .rank1 import Rank1System
from .transforms import normalize_moments

__all__ = [
    "FORMAT_VERSION",
    "ParseError",
    "rational_to_json",
    "rational_from_json",
    "word_to_str",
    "parse_word",
    "to_json",
    "from_json",
    "load_path",
    "save_path",
]

FORMAT_VERSION = "1"

_LETTER = re.compile(r"^([ab])(\d+)$")


class ParseError(ValueError):
    """Malformed distribution document."""


def rational_to_json(x: Fraction):
    return int(x) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def rational_from_json(v) -> Fraction:
    if isinstance(v, bool) or isinstance(v, float):
        raise ParseError(f"rationals must be integers or 'p/q' strings, got {v!r}")
    if isinstance(v, int):
        return Fraction(v)
    if isinstance(v, str):
        try:
            return Fraction(v)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad rational literal {v!r}") from exc
    raise ParseError(f"rationals must be integers or 'p/q' strings, got {v!r}")


def word_to_str(word) -> str:
    """Render a word of (side, label) letters; labels must be integers."""
    parts = []
    for side, label in word:
        parts.append(("a" if side == LEFT else "b") + str(label))
    return " ".join(parts)


def parse_word(text: str):
    """Parse ``"a1 b2 a1"`` into a tuple of (side, label) letters."""
    letters = []
    for token in text.split():
        match = _LETTER.match(token)
        if not match:
            raise ParseError(f"bad letter {token!r}: expected a<label> or b<label>")
        side = LEFT if match.group(1) == "a" else RIGHT
        letters.append((side, int(match.group(2))))
    return tuple(letters)


def _rational_rows(rows):
    return [[rational_to_json(v) for v in row] for row in rows]


def _document(obj) -> dict:
    if isinstance(obj, TwoBandsTable):
        return {
            "format_version": FORMAT_VERSION,
            "kind": "two_bands_pair",
            "values": _rational_rows(obj.values),
        }
    if isinstance(obj, PartialRTable):
        return {
            "format_version": FORMAT_VERSION,
            "kind": "partial_r_table",
            "values": _rational_rows(obj.values),
        }
    if isinstance(obj, Rank1System):
        lam = [
            [rational_to_json(obj.coefficient(i, j)) for j in obj.right_indices]
            for i in obj.left_indices
        ]
        two_bands = {
            word_to_str(tuple((LEFT, i) for i in il) + tuple((RIGHT, j) for j in jl)): (
                rational_to_json(v)
            )
            for (il, jl), v in obj.two_bands.items()
        }
        return {
            "format_version": FORMAT_VERSION,
            "kind": "rank1_system",
            "left_indices": list(obj.left_indices),
            "right_indices": list(obj.right_indices),
            "lambda": lam,
            "cap": obj.cap,
            "two_bands": two_bands,
        }
    if isinstance(obj, (tuple, list)):
        moments = normalize_moments(obj)
        return {
            "format_version": FORMAT_VERSION,
            "kind": "moment_seq",
            "moments": [rational_to_json(v) for v in moments],
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def to_json(obj) -> str:
    return json.dumps(_document(obj), sort_keys=True, indent=2) + "\n"


def _require_keys(doc: dict, keys: set):
    missing = keys - set(doc)
    extra = set(doc) - keys
    if missing:
        raise ParseError(f"missing fields: {sorted(missing)}")
    if extra:
        raise ParseError(f"unknown fields: {sorted(extra)}")


def _values_grid(doc):
    values = doc["values"]
    if not isinstance(values, list) or not values or not all(
        isinstance(row, list) and row for row in values
    ):
        raise ParseError("'values' must be a nonempty rectangular array")
    return [[rational_from_json(v) for v in row] for row in values]


def _int_list(doc, field):
    value = doc[field]
    if not isinstance(value, list) or not all(
        isinstance(v, int) and not isinstance(v, bool) for v in value
    ):
        raise ParseError(f"'{field}' must be a list of integers")
    return value


def from_json(text: str):
    """Parse a document into its domain object.

    Returns a TwoBandsTable, PartialRTable, Rank1System, or a tuple of
    moments according to the document kind.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise ParseError("document must be a JSON object")
    if doc.get("format_version") != FORMAT_VERSION:
        raise ParseError(f"unsupported format_version {doc.get('format_version')!r}")
    kind = doc.get("kind")

    if kind == "two_bands_pair":
        _require_keys(doc, {"format_version", "kind", "values"})
        return TwoBandsTable(_values_grid(doc))
    if kind == "partial_r_table":
        _require_keys(doc, {"format_version", "kind", "values"})
        return PartialRTable(_values_grid(doc))
    if kind == "moment_seq":
        _require_keys(doc, {"format_version", "kind", "moments"})
        moments = doc["moments"]
        if not isinstance(moments, list) or not moments:
            raise ParseError("'moments' must be a nonempty list")
        return normalize_moments(rational_from_json(v) for v in moments)
    if kind == "rank1_system":
        _require_keys(
            doc,
            {
                "format_version",
                "kind",
                "left_indices",
                "right_indices",
                "lambda",
                "cap",
                "two_bands",
            },
        )
        left = _int_list(doc, "left_indices")
        right = _int_list(doc, "right_indices")
        lam_rows = doc["lambda"]
        if (
            not isinstance(lam_rows, list)
            or len(lam_rows) != len(left)
            or any(not isinstance(r, list) or len(r) != len(right) for r in lam_rows)
        ):
            raise ParseError("'lambda' must be a |left| x |right| array")
        lam = {
            (i, j): rational_from_json(lam_rows[p][q])
            for p, i in enumerate(left)
            for q, j in enumerate(right)
        }
        cap = doc["cap"]
        if not isinstance(cap, int) or isinstance(cap, bool):
            raise ParseError("'cap' must be an integer")
        raw = doc["two_bands"]
        if not isinstance(raw, dict):
            raise ParseError("'two_bands' must be an object keyed by words")
        two_bands = {}
        for key, value in raw.items():
            letters = parse_word(key)
            il = tuple(label for side, label in letters if side == LEFT)
            jl = tuple(label for side, label in letters if side == RIGHT)
            if word_to_str(
                tuple((LEFT, i) for i in il) + tuple((RIGHT, j) for j in jl)
            ) != " ".join(key.split()):
                raise ParseError(f"two_bands key {key!r} is not a canonical IJ-word")
            two_bands[(il, jl)] = rational_from_json(value)
        try:
            return Rank1System(left, right, lam, two_bands, cap)
        except ValueError as exc:
            raise ParseError(f"invalid rank1 system: {exc}") from exc
    raise ParseError(f"unknown kind {kind!r}")


def load_path(path):
    with open(path, "r", encoding="utf-8") as handle:
        return from_json(handle.read())


def save_path(path, obj):
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(to_json(obj))
