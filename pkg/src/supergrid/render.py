"""Deterministic text and SVG pictures of a shape with an optional path.

Text cells are fixed-width tokens separated by one space: ``.`` for a shape
cell off the path, blanks for the hole, ``S`` and ``T`` for the endpoints and
the 1-based visit number in lowercase base 36 for every other path vertex.  Paths
longer than ``MAX_NUMBERED`` vertices show the direction of the next step
instead of a number.
"""
from __future__ import annotations

from typing import Sequence

from .grid import GridError, Point, ShapeSpec, validate_path

MAX_NUMBERED = 1296
_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"
_ARROWS = {(1, 0): "→", (-1, 0): "←", (0, 1): "↓", (0, -1): "↑",
           (1, 1): "↘", (-1, -1): "↖", (-1, 1): "↙", (1, -1): "↗"}
CELL_PX = 24


def base36(v: int) -> str:
    if v < 0:
        raise ValueError("negative")
    out = ""
    while True:
        v, r = divmod(v, 36)
        out = _DIGITS[r] + out
        if v == 0:
            return out


def _check(spec: ShapeSpec, path: Sequence[Point] | None, s: Point | None, t: Point | None) -> list[Point]:
    for p in (s, t):
        if p is not None and not spec.contains(p):
            raise GridError("invalid-path", f"endpoint {tuple(p)} outside {spec.label()}")
    if not path:
        return []
    pts = [tuple(p) for p in path]
    check = validate_path(spec, pts, s, t)
    if not check:
        raise GridError("invalid-path", check.reason)
    return pts


def render_text(spec: ShapeSpec, path: Sequence[Point] | None = None,
                s: Point | None = None, t: Point | None = None) -> str:
    """ASCII grid of ``spec``; the result ends with a newline."""
    pts = _check(spec, path, s, t)
    labels: dict[Point, str] = {}
    if len(pts) > MAX_NUMBERED:
        for i, p in enumerate(pts[:-1]):
            q = pts[i + 1]
            labels[p] = _ARROWS[(q[0] - p[0], q[1] - p[1])]
        labels[pts[-1]] = "*"
    else:
        for i, p in enumerate(pts):
            labels[p] = base36(i + 1)
    for mark, p in (("S", s), ("T", t)):
        if p is not None:
            labels[tuple(p)] = mark
    width = max([1] + [len(v) for v in labels.values()])
    rows = []
    for y in range(1, spec.n + 1):
        row = []
        for x in range(1, spec.m + 1):
            if not spec.contains((x, y)):
                row.append(" " * width)
            else:
                row.append(labels.get((x, y), ".").rjust(width))
        rows.append(" ".join(row).rstrip())
    return "\n".join(rows) + "\n"


def render_svg(spec: ShapeSpec, path: Sequence[Point] | None = None,
               s: Point | None = None, t: Point | None = None) -> str:
    """A static SVG document: grey cells, the path as a polyline, S and T as labelled dots."""
    pts = _check(spec, path, s, t)
    w, h = spec.m * CELL_PX, spec.n * CELL_PX

    def centre(p: Point) -> tuple[int, int]:
        return (p[0] - 1) * CELL_PX + CELL_PX // 2, (p[1] - 1) * CELL_PX + CELL_PX // 2

    out = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">',
           f"<title>{spec.label()}</title>"]
    for y in range(1, spec.n + 1):
        for x in range(1, spec.m + 1):
            if spec.contains((x, y)):
                out.append(f'<rect x="{(x - 1) * CELL_PX + 1}" y="{(y - 1) * CELL_PX + 1}" '
                           f'width="{CELL_PX - 2}" height="{CELL_PX - 2}" fill="#e4e4e4"/>')
    if pts:
        coords = " ".join("{},{}".format(*centre(p)) for p in pts)
        out.append(f'<polyline points="{coords}" fill="none" stroke="#1f5fa8" stroke-width="3" '
                   'stroke-linejoin="round"/>')
    for mark, p in (("S", s), ("T", t)):
        if p is not None:
            cx, cy = centre(p)
            out.append(f'<circle cx="{cx}" cy="{cy}" r="{CELL_PX // 3}" fill="#c0392b"/>')
            out.append(f'<text x="{cx}" y="{cy + 4}" font-size="11" text-anchor="middle" '
                       f'fill="#ffffff" font-family="monospace">{mark}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
