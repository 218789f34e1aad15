"""Parsing of digit-set / matrix inputs and canonical JSON output."""
from __future__ import annotations

import dataclasses
import enum
import json
from fractions import Fraction
from pathlib import Path
from typing import Any

from .classify import ResidueVector
from .errors import DigitSetError, NonSpectralError
from .exact import IntMatrix2, RationalPoint
from .finite_field import FpMatrix2, FpPoly2
from .mask import DigitSet, minkowski_sum


class InputError(NonSpectralError):
    """Malformed user input (files, matrix strings)."""


def _pairs(obj: Any, where: str) -> list[tuple[int, int]]:
    if not isinstance(obj, list) or not obj:
        raise InputError(f"{where}: expected a nonempty JSON array of [x, y] integer pairs")
    out = []
    for i, item in enumerate(obj):
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in item)
        ):
            raise InputError(f"{where}: element {i} is {item!r}, expected an [x, y] integer pair")
        out.append((item[0], item[1]))
    return out


def parse_digits(text: str, source: str = "<digits>") -> DigitSet:
    """A JSON array of integer pairs, or ``{"factors": [array, array, ...]}``.

    The second form builds the Minkowski sum of the factors and keeps them,
    so zero sets of the sum stay decidable.
    """
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from exc
    try:
        if isinstance(obj, dict):
            factors = obj.get("factors")
            if not isinstance(factors, list) or not factors:
                raise InputError(f"{source}: object form needs a nonempty 'factors' list")
            sets = [DigitSet(tuple(_pairs(f, f"{source}: factor {k}"))) for k, f in enumerate(factors)]
            out = sets[0]
            for s in sets[1:]:
                out = minkowski_sum(out, s)
            return out
        return DigitSet(tuple(_pairs(obj, source)))
    except DigitSetError as exc:
        raise InputError(f"{source}: {exc}") from exc


def load_digits(path: str | Path) -> DigitSet:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read digit file {path}: {exc.strerror}") from exc
    return parse_digits(text, str(path))


def parse_matrix(text: str) -> IntMatrix2:
    """``"a,b;d,c"`` (row-major) or JSON ``[[a,b],[d,c]]``."""
    s = text.strip()
    try:
        if s.startswith("["):
            rows = json.loads(s)
        else:
            rows = [[int(x) for x in row.split(",")] for row in s.split(";")]
        if len(rows) != 2 or any(len(r) != 2 for r in rows):
            raise ValueError
        return IntMatrix2.from_rows(rows)
    except (ValueError, TypeError, json.JSONDecodeError) as exc:
        raise InputError(f"bad matrix {text!r}; expected 'a,b;d,c' or [[a,b],[d,c]]") from exc


def rational_str(x: Fraction | int) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(s: str) -> Fraction:
    return Fraction(s)


def point_from_json(obj) -> RationalPoint:
    return RationalPoint(Fraction(obj[0]), Fraction(obj[1]))


def to_jsonable(obj: Any) -> Any:
    """Exact, JSON-ready rendering: rationals become ``"num/den"`` strings."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, float):
        if obj == float("inf"):
            return "inf"
        return obj
    if isinstance(obj, Fraction):
        return rational_str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, RationalPoint):
        return [rational_str(obj.x), rational_str(obj.y)]
    if isinstance(obj, (IntMatrix2, FpMatrix2)):
        return [list(r) for r in obj.rows]
    if isinstance(obj, ResidueVector):
        return [obj.u, obj.v]
    if isinstance(obj, FpPoly2):
        return {"a0": obj.a0, "a1": obj.a1, "p": obj.p, "text": str(obj)}
    if isinstance(obj, DigitSet):
        return [list(d) for d in obj.digits]
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (frozenset, set)):
        return sorted((to_jsonable(v) for v in obj), key=lambda v: json.dumps(v, sort_keys=True))
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), sort_keys=True, indent=2)
