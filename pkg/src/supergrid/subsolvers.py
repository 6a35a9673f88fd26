"""Contract-level solvers for rectangles, L-shapes and C-shapes.

These are the operations the O-shape algorithms consume.  Rectangles use
the explicit constructions of ``rect``; L and C pieces go through the
separation engine, which falls back to exact search on small pieces.  All
inputs and outputs use the catalog coordinates of the given spec.
"""
from __future__ import annotations

from dataclasses import dataclass

from .conditions import check_rlc_forbidden, f7_holds, rlc_conditions, rlc_has_cycle
from .engine import FALLBACK_MAX, region_hc, region_hp
from .exact import Demand, satisfied
from .grid import Edge, GridError, Point, PathSeq, Region, ShapeSpec, norm_edge
from .longest import longest_path
from .rect import SolveFailure, rect_f1, rect_hc, rect_hp
from .rect import rect3_hp_forced_boundary_edges as _rect3
from .rect import rect_hp_forced_first_edge as _forced_first

SIDES = ("left", "right", "top", "bottom")
_SIDE_CODE = {"left": "L", "right": "R", "top": "T", "bottom": "B"}


class SubsolverError(GridError):
    """A precondition of a contract failed; ``code`` names it (e.g. ``F1-violated``)."""


@dataclass(frozen=True)
class EdgeConstraint:
    """What a sub-path or sub-cycle must contain.

    ``must-contain-edge``: every edge in ``edges``;
    ``flat-face-on-boundary``: the whole ``boundary`` side as consecutive edges;
    ``concave-face-on-boundary``: at least one edge lying on ``boundary``.
    ``span`` optionally restricts the boundary to a coordinate range.
    """

    kind: str
    edges: tuple[Edge, ...] = ()
    boundary: str | None = None
    span: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("must-contain-edge", "flat-face-on-boundary", "concave-face-on-boundary"):
            raise SubsolverError("bad-constraint", self.kind)
        if self.kind == "must-contain-edge" and not self.edges:
            raise SubsolverError("bad-constraint", "no edges given")
        if self.kind != "must-contain-edge" and self.boundary not in SIDES:
            raise SubsolverError("bad-constraint", f"unknown boundary {self.boundary!r}")

    def demands(self, spec: ShapeSpec) -> tuple[Demand, ...]:
        region = spec.region()
        if self.kind == "must-contain-edge":
            out = []
            for u, v in self.edges:
                if u not in region or v not in region:
                    raise SubsolverError("edge-outside-shape", f"{u}-{v}")
                if u[0] == v[0] and abs(u[1] - v[1]) == 1:
                    out.append(Demand("x", u[0], min(u[1], v[1]), max(u[1], v[1])))
                elif u[1] == v[1] and abs(u[0] - v[0]) == 1:
                    out.append(Demand("y", u[1], min(u[0], v[0]), max(u[0], v[0])))
                else:
                    raise SubsolverError("bad-constraint", f"edge {u}-{v} is not axis-parallel")
            return tuple(out)
        axis, coord, lo, hi = _side_line(spec, self.boundary)
        if self.span is not None:
            lo, hi = max(lo, self.span[0]), min(hi, self.span[1])
        return (Demand(axis, coord, lo, hi, self.kind == "flat-face-on-boundary"),)


def _side_line(spec: ShapeSpec, side: str) -> tuple[str, int, int, int]:
    m, n = spec.m, spec.n
    return {"left": ("x", 1, 1, n), "right": ("x", m, 1, n), "top": ("y", 1, 1, m), "bottom": ("y", n, 1, m)}[side]


def _full_side(spec: ShapeSpec, side: str) -> bool:
    """Whether ``side`` is a straight boundary of the shape along its whole length."""
    axis, coord, lo, hi = _side_line(spec, side)
    pts = [(coord, v) for v in range(lo, hi + 1)] if axis == "x" else [(v, coord) for v in range(lo, hi + 1)]
    return all(spec.contains(p) for p in pts)


def _pathseq(points, closed: bool = False) -> PathSeq:
    return PathSeq.of(points, closed)


def _check_points(spec: ShapeSpec, s: Point, t: Point) -> None:
    if tuple(s) == tuple(t):
        raise SubsolverError("identical-points")
    for p in (s, t):
        if not spec.contains(p):
            raise SubsolverError("point-not-in-shape", str(tuple(p)))


# ---------------------------------------------------------------------------
# Rectangles
# ---------------------------------------------------------------------------

def rect_hamiltonian_cycle(m: int, n: int, concave_side: str) -> PathSeq:
    """Canonical cycle of R(m, n): flat faces on three sides, the concave face on ``concave_side``."""
    if concave_side not in SIDES:
        raise SubsolverError("bad-side", str(concave_side))
    if min(m, n) < 2:
        raise SubsolverError("degenerate", f"R({m},{n}) has no cycle")
    short = min(m, n)
    side_len = m if concave_side in ("top", "bottom") else n
    if short == 3 and side_len == 3 and max(m, n) > 3:
        raise SubsolverError("invalid-concave-side", "with a side of 3 the concave face must be on a longer side")
    try:
        return _pathseq(rect_hc((1, 1, m, n), _SIDE_CODE[concave_side]), closed=True)
    except SolveFailure as exc:
        raise SubsolverError("invalid-concave-side", str(exc)) from None


def rect_hamiltonian_st_path(m: int, n: int, s: Point, t: Point) -> PathSeq:
    """Hamiltonian (s, t)-path of R(m, n); fails exactly when F1 holds.

    The path is canonical (an edge on each of the four boundaries) whenever
    such a path exists.  A handful of small instances, such as R(2,2) with s
    and t on one short side, admit none, and a one-row rectangle has only
    the straight line.
    """
    spec = ShapeSpec.rect(m, n)
    _check_points(spec, s, t)
    s, t = tuple(s), tuple(t)
    box = (1, 1, m, n)
    if rect_f1(box, s, t):
        raise SubsolverError("F1-violated", f"R({m},{n}) {s} {t}")
    if min(m, n) >= 2:
        sides = (Demand("y", 1, 1, m), Demand("y", n, 1, m), Demand("x", 1, 1, n), Demand("x", m, 1, n))
        try:
            return _pathseq(rect_hp(box, s, t, sides))
        except SolveFailure:
            pass
    return _pathseq(rect_hp(box, s, t))


def rect_hp_forced_first_edge(m: int, n: int, s: Point, t: Point) -> PathSeq:
    """Path through (z, f) when F7 holds and through (w, z) otherwise; w, z, f = (1,1), (2,1), (3,1)."""
    if m < 3 or n < 2:
        raise SubsolverError("too-small", f"R({m},{n})")
    spec = ShapeSpec.rect(m, n)
    _check_points(spec, s, t)
    s, t = tuple(s), tuple(t)
    if rect_f1((1, 1, m, n), s, t):
        raise SubsolverError("F1-violated", f"R({m},{n}) {s} {t}")
    try:
        return _pathseq(_forced_first((1, 1, m, n), s, t, f7_holds(m, n, s, t)))
    except SolveFailure as exc:
        raise SubsolverError("contract-violation", str(exc)) from None


def rect3_hp_forced_boundary_edges(m: int, s: Point, t: Point) -> PathSeq:
    """Path of R(m, 3) containing ((m,1),(m,2)) and ((m,2),(m,3))."""
    if m < 3:
        raise SubsolverError("too-small", f"R({m},3)")
    spec = ShapeSpec.rect(m, 3)
    _check_points(spec, s, t)
    s, t = tuple(s), tuple(t)
    if s[0] == m or t[0] == m:
        raise SubsolverError("endpoint-on-last-column", f"{s} {t}")
    try:
        return _pathseq(_rect3((1, 1, m, 3), s, t))
    except SolveFailure as exc:
        raise SubsolverError("contract-violation", str(exc)) from None


# ---------------------------------------------------------------------------
# L- and C-shapes
# ---------------------------------------------------------------------------

def _lc_region(spec: ShapeSpec) -> Region:
    if spec.family not in ("L", "C"):
        raise GridError("wrong-shape-family", spec.label())
    return spec.region()


def lc_hamiltonian_cycle(spec: ShapeSpec, flat_side: str) -> PathSeq:
    """Hamiltonian cycle of an L or C shape whose restriction to ``flat_side`` is a flat face."""
    region = _lc_region(spec)
    if not rlc_has_cycle(region):
        raise SubsolverError("F8" if spec.family == "L" else "F9", f"{spec.label()} has no Hamiltonian cycle")
    if flat_side not in SIDES or not _full_side(spec, flat_side):
        raise SubsolverError("invalid-side", f"{flat_side} is not a full boundary of {spec.label()}")
    dem = EdgeConstraint("flat-face-on-boundary", boundary=flat_side).demands(spec)
    try:
        cyc = region_hc(region, dem)
    except SolveFailure as exc:
        raise SubsolverError("constraint-unsatisfiable", str(exc)) from None
    return _pathseq(cyc, closed=True)


def lc_hamiltonian_st_path(spec: ShapeSpec, s: Point, t: Point,
                           constraint: EdgeConstraint | None = None) -> PathSeq:
    """Hamiltonian (s, t)-path of an L or C shape, honouring ``constraint`` when given."""
    region = _lc_region(spec)
    _check_points(spec, s, t)
    s, t = tuple(s), tuple(t)
    cond = check_rlc_forbidden(spec, s, t)
    if cond is not None:
        raise SubsolverError("forbidden-condition", cond)
    dem = constraint.demands(spec) if constraint is not None else ()
    try:
        path = region_hp(region, s, t, dem)
    except SolveFailure as exc:
        kind = "constraint-unsatisfiable" if dem and len(region) <= FALLBACK_MAX else "contract-violation"
        raise SubsolverError(kind, str(exc)) from None
    if not satisfied(path, dem):
        raise SubsolverError("constraint-unsatisfiable", "engine output misses the constraint")
    return _pathseq(path)


# ---------------------------------------------------------------------------
# Longest paths
# ---------------------------------------------------------------------------

def rlc_longest_points(region: Region, s: Point, t: Point) -> list[Point]:
    """Longest (s, t)-path of an R/L/C region given in any placement (used for the bound subterms)."""
    s, t = tuple(s), tuple(t)
    if s == t:
        return [s]
    if not rlc_conditions(region, s, t):
        try:
            return region_hp(region, s, t)
        except SolveFailure:
            pass
    return longest_path(frozenset(region.cells()), s, t)


def rlc_longest_st_path(spec: ShapeSpec, s: Point, t: Point) -> PathSeq:
    """A longest simple (s, t)-path of an R, L or C shape."""
    if spec.family == "O":
        raise GridError("wrong-shape-family", spec.label())
    _check_points(spec, s, t)
    return _pathseq(rlc_longest_points(spec.region(), s, t))


def contains_edges(path: PathSeq | list, edges) -> bool:
    """Whether every edge of ``edges`` appears as consecutive positions of ``path``."""
    pts = list(path)
    have = {norm_edge(pts[i], pts[i + 1]) for i in range(len(pts) - 1)}
    if isinstance(path, PathSeq) and path.closed and len(pts) > 2:
        have.add(norm_edge(pts[-1], pts[0]))
    return all(norm_edge(u, v) in have for u, v in edges)
