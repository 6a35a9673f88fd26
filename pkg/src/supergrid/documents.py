"""Instance documents: one JSON object per line with explicit field names.

    {"family": "O", "m": 5, "n": 3, "k": 3, "l": 1, "a": 1, "b": 1, "c": 1, "d": 1, "s": [2, 1], "t": [4, 1]}

Only the parameters of the family may appear; ``s``, ``t`` and ``path`` are
optional.  ``serialize`` writes the fields in a fixed order so that
``parse(serialize(doc)) == doc`` and equal documents serialize to equal bytes.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass

from .grid import GridError, GridPoint, ShapeSpec

FAMILY_FIELDS = {
    "R": ("m", "n"),
    "L": ("m", "n", "k", "l"),
    "C": ("m", "n", "k", "l", "c", "d"),
    "O": ("m", "n", "k", "l", "a", "b", "c", "d"),
}
_OPTIONAL = ("s", "t", "path")
_LABEL = re.compile(r"^\s*([RLCO])\(([\d,;\s]+)\)\s*$")


class DocumentError(GridError):
    """Malformed input; ``line`` and ``field`` locate the problem."""

    def __init__(self, message: str, line: int | None = None, field: str | None = None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__("malformed-input", (", ".join(where) + ": " if where else "") + message)
        self.line = line
        self.field = field
        self.detail = message


@dataclass(frozen=True)
class InstanceDocument:
    spec: ShapeSpec
    s: GridPoint | None = None
    t: GridPoint | None = None
    path: tuple[GridPoint, ...] | None = None

    def as_dict(self) -> dict:
        out: dict = {"family": self.spec.family}
        for name in FAMILY_FIELDS[self.spec.family]:
            out[name] = getattr(self.spec, name)
        if self.s is not None:
            out["s"] = [self.s.x, self.s.y]
        if self.t is not None:
            out["t"] = [self.t.x, self.t.y]
        if self.path is not None:
            out["path"] = [[p.x, p.y] for p in self.path]
        return out

    def describe(self) -> str:
        parts = [self.spec.label()]
        if self.s is not None:
            parts.append(f"s=({self.s.x},{self.s.y})")
        if self.t is not None:
            parts.append(f"t=({self.t.x},{self.t.y})")
        return " ".join(parts)


def _int(value, line, field) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"expected an integer, got {json.dumps(value)}", line, field)
    return value


def _point(value, line, field) -> GridPoint:
    if not isinstance(value, list) or len(value) != 2:
        raise DocumentError("expected [x, y]", line, field)
    return GridPoint(_int(value[0], line, field), _int(value[1], line, field))


def from_dict(obj, line: int | None = None) -> InstanceDocument:
    if not isinstance(obj, dict):
        raise DocumentError("expected a JSON object", line)
    family = obj.get("family")
    if family not in FAMILY_FIELDS:
        raise DocumentError(f"expected one of R, L, C, O, got {json.dumps(family)}", line, "family")
    names = FAMILY_FIELDS[family]
    for key in obj:
        if key != "family" and key not in names and key not in _OPTIONAL:
            raise DocumentError(f"unexpected for family {family}", line, key)
    values = {}
    for name in names:
        if name not in obj:
            raise DocumentError("missing", line, name)
        values[name] = _int(obj[name], line, name)
    try:
        spec = ShapeSpec(family, **values)
    except GridError as exc:
        raise DocumentError(f"parameters do not form a valid shape ({exc})", line) from None
    s = _point(obj["s"], line, "s") if "s" in obj else None
    t = _point(obj["t"], line, "t") if "t" in obj else None
    for name, p in (("s", s), ("t", t)):
        if p is not None and not spec.contains(p):
            raise DocumentError(f"{tuple(p)} is not a vertex of {spec.label()}", line, name)
    if s is not None and t is not None and s == t:
        raise DocumentError("s and t must differ", line, "t")
    path = None
    if "path" in obj:
        if not isinstance(obj["path"], list):
            raise DocumentError("expected a list of [x, y]", line, "path")
        path = tuple(_point(p, line, "path") for p in obj["path"])
    return InstanceDocument(spec, s, t, path)


def parse(text: str, line: int | None = None) -> InstanceDocument:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON ({exc.msg} at column {exc.colno})", line) from None
    return from_dict(obj, line)


def serialize(doc: InstanceDocument) -> str:
    return json.dumps(doc.as_dict())


def parse_label(label: str) -> ShapeSpec:
    """``R(4,3)``, ``L(4,3;1,1)``, ``C(4,5;2,1;2,2)`` or ``O(5,3;3,1;1,1,1,1)``."""
    match = _LABEL.match(label)
    if not match:
        raise DocumentError(f"cannot read shape label {label!r}", field="shape")
    family = match.group(1)
    nums = [int(v) for v in re.split(r"[,;]", match.group(2).replace(" ", "")) if v]
    names = FAMILY_FIELDS[family]
    if len(nums) != len(names):
        raise DocumentError(f"{family} takes {len(names)} parameters, got {len(nums)}", field="shape")
    try:
        return ShapeSpec(family, **dict(zip(names, nums)))
    except GridError as exc:
        raise DocumentError(f"parameters do not form a valid shape ({exc})", field="shape") from None


def parse_point(text: str, field: str) -> GridPoint:
    try:
        x, y = (int(v) for v in text.strip("()[] ").split(","))
    except ValueError:
        raise DocumentError(f"expected x,y, got {text!r}", field=field) from None
    return GridPoint(x, y)
