"""Supergrid geometry: points, shape families, regions, symmetries and path combinators.

Coordinates are 1-indexed with (1, 1) at the upper-left corner; x grows to the
right (columns) and y grows downwards (rows).  Two points are adjacent when both
coordinate differences are at most one (king moves).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence


class GridError(ValueError):
    """Raised for invalid geometry input; ``code`` is a short machine-readable tag."""

    def __init__(self, code: str, message: str = ""):
        super().__init__(f"{code}: {message}" if message else code)
        self.code = code


class GridPoint(NamedTuple):
    x: int
    y: int

    def __repr__(self) -> str:
        return f"({self.x},{self.y})"


Point = tuple[int, int]
Edge = tuple[Point, Point]

# E, W, S, N, SE, NW, SW, NE; y grows downwards so "S" is +y.
NEIGHBOR_OFFSETS: tuple[Point, ...] = (
    (1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1), (-1, 1), (1, -1),
)


def adjacent(p: Point, q: Point) -> bool:
    return p != q and abs(p[0] - q[0]) <= 1 and abs(p[1] - q[1]) <= 1


def norm_edge(u: Point, v: Point) -> Edge:
    u, v = tuple(u), tuple(v)
    return (u, v) if u <= v else (v, u)


def parallel(e1: Edge, e2: Edge) -> bool:
    """Edges are parallel when their endpoints can be paired up adjacently (either pairing)."""
    (u1, v1), (u2, v2) = e1, e2
    return (adjacent(u1, u2) and adjacent(v1, v2)) or (adjacent(u1, v2) and adjacent(v1, u2))


# ---------------------------------------------------------------------------
# Shape specifications
# ---------------------------------------------------------------------------

FAMILIES = ("R", "L", "C", "O")


@dataclass(frozen=True)
class ShapeSpec:
    """One of the four catalog shapes with validated parameters.

    Unused parameters are zero.  L removes a k x l block at the upper-right
    corner, C removes it from the right side leaving c rows above and d rows
    below, O removes it from the interior with margins a, b, c, d.
    """

    family: str
    m: int
    n: int
    k: int = 0
    l: int = 0
    a: int = 0
    b: int = 0
    c: int = 0
    d: int = 0

    def __post_init__(self) -> None:
        f, m, n, k, l, a, b, c, d = self.params_full()
        if f not in FAMILIES:
            raise GridError("bad-family", f"unknown family {f!r}")
        if f == "R":
            ok = m >= 1 and n >= 1 and k == l == a == b == c == d == 0
        elif f == "L":
            ok = 1 <= k < m and 1 <= l < n and a == b == c == d == 0
        elif f == "C":
            ok = (m >= 2 and n >= 3 and k >= 1 and l >= 1 and c >= 1 and d >= 1
                  and n == c + d + l and k < m and a == b == 0)
        else:
            ok = (m >= 3 and n >= 3 and min(k, l, a, b, c, d) >= 1
                  and m == a + b + k and n == c + d + l)
        if not ok:
            raise GridError("invalid-spec", self.label())

    # constructors -------------------------------------------------------
    @classmethod
    def rect(cls, m: int, n: int) -> "ShapeSpec":
        return cls("R", m, n)

    @classmethod
    def lshape(cls, m: int, n: int, k: int, l: int) -> "ShapeSpec":
        return cls("L", m, n, k, l)

    @classmethod
    def cshape(cls, m: int, n: int, k: int, l: int, c: int, d: int) -> "ShapeSpec":
        return cls("C", m, n, k, l, c=c, d=d)

    @classmethod
    def oshape(cls, m: int, n: int, k: int, l: int, a: int, b: int, c: int, d: int) -> "ShapeSpec":
        return cls("O", m, n, k, l, a, b, c, d)

    # helpers ------------------------------------------------------------
    def params_full(self) -> tuple:
        return (self.family, self.m, self.n, self.k, self.l, self.a, self.b, self.c, self.d)

    def params(self) -> tuple[int, ...]:
        if self.family == "R":
            return (self.m, self.n)
        if self.family == "L":
            return (self.m, self.n, self.k, self.l)
        if self.family == "C":
            return (self.m, self.n, self.k, self.l, self.c, self.d)
        return (self.m, self.n, self.k, self.l, self.a, self.b, self.c, self.d)

    def label(self) -> str:
        p = self.params()
        if self.family == "R":
            return f"R({p[0]},{p[1]})"
        if self.family == "L":
            return f"L({p[0]},{p[1]};{p[2]},{p[3]})"
        if self.family == "C":
            return f"C({p[0]},{p[1]};{p[2]},{p[3]};{p[4]},{p[5]})"
        return "O({},{};{},{};{},{},{},{})".format(*p)

    __str__ = label

    @property
    def hole(self) -> tuple[int, int, int, int] | None:
        """Removed block as inclusive (x0, y0, x1, y1), or None for rectangles."""
        m, k, l = self.m, self.k, self.l
        if self.family == "R":
            return None
        if self.family == "L":
            return (m - k + 1, 1, m, l)
        if self.family == "C":
            return (m - k + 1, self.c + 1, m, self.c + l)
        return (self.a + 1, self.c + 1, self.a + k, self.c + l)

    def region(self) -> "Region":
        return Region(1, 1, self.m, self.n, self.hole)

    def contains(self, p: Point) -> bool:
        x, y = p
        if not (1 <= x <= self.m and 1 <= y <= self.n):
            return False
        h = self.hole
        return h is None or not (h[0] <= x <= h[2] and h[1] <= y <= h[3])

    def cells(self) -> list[GridPoint]:
        """All vertices in row-major order (row by row, left to right)."""
        return [GridPoint(x, y) for y in range(1, self.n + 1) for x in range(1, self.m + 1)
                if self.contains((x, y))]

    def vertex_count(self) -> int:
        return self.m * self.n - self.k * self.l


def contains_point(spec: ShapeSpec, p: Point) -> bool:
    return spec.contains(p)


def neighbors(spec: ShapeSpec, p: Point) -> set[GridPoint]:
    if not spec.contains(p):
        raise GridError("point-not-in-shape", f"{tuple(p)} not in {spec}")
    x, y = p
    return {GridPoint(x + dx, y + dy) for dx, dy in NEIGHBOR_OFFSETS if spec.contains((x + dx, y + dy))}


def vertex_count(spec: ShapeSpec) -> int:
    return spec.vertex_count()


# ---------------------------------------------------------------------------
# Symmetry transforms
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymmetryTransform:
    """Axis-aligned isometry of the box [1..m] x [1..n]: optional flips, then optional transpose."""

    flip_x: bool
    flip_y: bool
    transpose: bool
    m: int
    n: int

    @classmethod
    def identity(cls, m: int, n: int) -> "SymmetryTransform":
        return cls(False, False, False, m, n)

    @classmethod
    def all(cls, m: int, n: int) -> list["SymmetryTransform"]:
        return [cls(fx, fy, tr, m, n) for tr in (False, True) for fx in (False, True) for fy in (False, True)]

    @property
    def is_identity(self) -> bool:
        return not (self.flip_x or self.flip_y or self.transpose)

    @property
    def image_size(self) -> tuple[int, int]:
        return (self.n, self.m) if self.transpose else (self.m, self.n)

    @property
    def name(self) -> str:
        parts = [n for n, f in (("flip_x", self.flip_x), ("flip_y", self.flip_y), ("transpose", self.transpose)) if f]
        return "+".join(parts) or "identity"

    def apply(self, p: Point) -> GridPoint:
        x, y = p
        if self.flip_x:
            x = self.m + 1 - x
        if self.flip_y:
            y = self.n + 1 - y
        return GridPoint(y, x) if self.transpose else GridPoint(x, y)

    def inverse(self) -> "SymmetryTransform":
        if self.transpose:
            return SymmetryTransform(self.flip_y, self.flip_x, True, self.n, self.m)
        return self

    def compose(self, other: "SymmetryTransform") -> "SymmetryTransform":
        """The transform applying ``self`` first, then ``other``."""
        if other.m != self.image_size[0] or other.n != self.image_size[1]:
            raise GridError("domain-mismatch")
        for cand in SymmetryTransform.all(self.m, self.n):
            probe = [(1, 1), (2, 1), (1, 2)] if self.m > 1 and self.n > 1 else [(1, 1), (self.m, self.n)]
            if all(cand.apply(p) == other.apply(self.apply(p)) for p in probe + [(self.m, self.n)]):
                return cand
        raise GridError("compose-failed")

    def apply_path(self, path: Iterable[Point]) -> list[GridPoint]:
        return [self.apply(p) for p in path]

    def apply_spec(self, spec: ShapeSpec) -> ShapeSpec:
        """Map an O-shape or rectangle to its image; L/C only when the image stays in catalog form."""
        if (spec.m, spec.n) != (self.m, self.n):
            raise GridError("domain-mismatch")
        f = spec.family
        if f == "R":
            m, n = self.image_size
            return ShapeSpec.rect(m, n)
        if f == "O":
            m, n, k, l, a, b, c, d = spec.params()
            if self.flip_x:
                a, b = b, a
            if self.flip_y:
                c, d = d, c
            if self.transpose:
                m, n, k, l, a, b, c, d = n, m, l, k, c, d, a, b
            return ShapeSpec.oshape(m, n, k, l, a, b, c, d)
        reg = spec.region().transformed(self)
        out = reg.catalog_spec_exact()
        if out is None:
            raise GridError("not-catalog", f"{self.name} maps {spec} out of catalog orientation")
        return out


# ---------------------------------------------------------------------------
# Regions: a box minus at most one axis-aligned block, in absolute coordinates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Region:
    """Box [x0..x1] x [y0..y1] minus an optional block ``hole`` = (hx0, hy0, hx1, hy1).

    Regions are what the solvers pass around: pieces of a separation keep the
    coordinates of the parent shape, so paths never need re-translation.
    """

    x0: int
    y0: int
    x1: int
    y1: int
    hole: tuple[int, int, int, int] | None = None

    @staticmethod
    def make(x0: int, y0: int, x1: int, y1: int, hole: tuple[int, int, int, int] | None = None) -> "Region":
        """Clip ``hole`` to the box and shrink the box when the hole spans a full side."""
        if x0 > x1 or y0 > y1:
            raise GridError("empty-region")
        if hole is not None:
            hx0, hy0, hx1, hy1 = max(hole[0], x0), max(hole[1], y0), min(hole[2], x1), min(hole[3], y1)
            hole = None if hx0 > hx1 or hy0 > hy1 else (hx0, hy0, hx1, hy1)
        while hole is not None:
            hx0, hy0, hx1, hy1 = hole
            full_w = hx0 == x0 and hx1 == x1
            full_h = hy0 == y0 and hy1 == y1
            if full_w and full_h:
                raise GridError("empty-region")
            if full_w:
                if hy0 == y0:
                    y0 = hy1 + 1
                elif hy1 == y1:
                    y1 = hy0 - 1
                else:
                    raise GridError("disconnected-region")
                hole = None
            elif full_h:
                if hx0 == x0:
                    x0 = hx1 + 1
                elif hx1 == x1:
                    x1 = hx0 - 1
                else:
                    raise GridError("disconnected-region")
                hole = None
            else:
                break
        return Region(x0, y0, x1, y1, hole)

    # basic queries ------------------------------------------------------
    @property
    def width(self) -> int:
        return self.x1 - self.x0 + 1

    @property
    def height(self) -> int:
        return self.y1 - self.y0 + 1

    def __len__(self) -> int:
        n = self.width * self.height
        if self.hole:
            hx0, hy0, hx1, hy1 = self.hole
            n -= (hx1 - hx0 + 1) * (hy1 - hy0 + 1)
        return n

    size = property(__len__)

    def __contains__(self, p: object) -> bool:
        x, y = p  # type: ignore[misc]
        if not (self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1):
            return False
        h = self.hole
        return h is None or not (h[0] <= x <= h[2] and h[1] <= y <= h[3])

    def cells(self) -> Iterator[Point]:
        for y in range(self.y0, self.y1 + 1):
            for x in range(self.x0, self.x1 + 1):
                if (x, y) in self:
                    yield (x, y)

    def neighbors(self, p: Point) -> list[Point]:
        x, y = p
        return [(x + dx, y + dy) for dx, dy in NEIGHBOR_OFFSETS if (x + dx, y + dy) in self]

    def degree(self, p: Point) -> int:
        return len(self.neighbors(p))

    @property
    def holes(self) -> tuple[tuple[int, int, int, int], ...]:
        return () if self.hole is None else (self.hole,)

    @property
    def touches(self) -> tuple[bool, bool, bool, bool]:
        """Which box sides (left, right, top, bottom) the hole touches."""
        if self.hole is None:
            return (False, False, False, False)
        hx0, hy0, hx1, hy1 = self.hole
        return (hx0 == self.x0, hx1 == self.x1, hy0 == self.y0, hy1 == self.y1)

    @property
    def family(self) -> str:
        t = sum(self.touches)
        if self.hole is None:
            return "R"
        return {2: "L", 1: "C", 0: "O"}[t]

    def translate(self, dx: int, dy: int) -> "Region":
        h = self.hole
        if h is not None:
            h = (h[0] + dx, h[1] + dy, h[2] + dx, h[3] + dy)
        return Region(self.x0 + dx, self.y0 + dy, self.x1 + dx, self.y1 + dy, h)

    def transformed(self, T: SymmetryTransform) -> "Region":
        """Image of a region living in T's domain box (coordinates must already be in [1..m]x[1..n])."""
        c1, c2 = T.apply((self.x0, self.y0)), T.apply((self.x1, self.y1))
        box = (min(c1[0], c2[0]), min(c1[1], c2[1]), max(c1[0], c2[0]), max(c1[1], c2[1]))
        hole = None
        if self.hole:
            h1, h2 = T.apply(self.hole[:2]), T.apply(self.hole[2:])
            hole = (min(h1[0], h2[0]), min(h1[1], h2[1]), max(h1[0], h2[0]), max(h1[1], h2[1]))
        return Region(*box, hole)

    def local(self) -> tuple["Region", int, int]:
        """Translate so the box starts at (1, 1); returns the region and the offset removed."""
        dx, dy = self.x0 - 1, self.y0 - 1
        return self.translate(-dx, -dy), dx, dy

    def catalog_spec_exact(self) -> ShapeSpec | None:
        """The catalog spec when this region (anchored at (1,1)) already has catalog orientation."""
        if (self.x0, self.y0) != (1, 1):
            return None
        m, n = self.width, self.height
        if self.hole is None:
            return ShapeSpec.rect(m, n)
        hx0, hy0, hx1, hy1 = self.hole
        k, l = hx1 - hx0 + 1, hy1 - hy0 + 1
        left, right, top, bottom = self.touches
        try:
            if right and top and not left and not bottom:
                return ShapeSpec.lshape(m, n, k, l)
            if right and not (left or top or bottom):
                return ShapeSpec.cshape(m, n, k, l, hy0 - 1, n - hy1)
            if not any(self.touches):
                return ShapeSpec.oshape(m, n, k, l, hx0 - 1, m - hx1, hy0 - 1, n - hy1)
        except GridError:
            return None
        return None

    def catalog_views(self) -> list[tuple[ShapeSpec, SymmetryTransform, int, int]]:
        """Every (spec, T, dx, dy) such that T(p - offset) lies in catalog spec ``spec``."""
        return list(_catalog_views(self))

    def _catalog_views(self) -> list[tuple[ShapeSpec, SymmetryTransform, int, int]]:
        loc, dx, dy = self.local()
        out = []
        for T in SymmetryTransform.all(loc.width, loc.height):
            spec = loc.transformed(T).catalog_spec_exact()
            if spec is not None:
                out.append((spec, T, dx, dy))
        return out

    def catalog(self) -> tuple[ShapeSpec, SymmetryTransform, int, int]:
        """One canonical view, preferring the identity orientation."""
        views = self.catalog_views()
        if not views:
            raise GridError("non-catalog", repr(self))
        return views[0]

    def is_connected_without(self, removed: Iterable[Point] = ()) -> bool:
        return connected(self, set(removed))

    def __repr__(self) -> str:
        h = "" if self.hole is None else f" - [{self.hole[0]}..{self.hole[2]}]x[{self.hole[1]}..{self.hole[3]}]"
        return f"Region([{self.x0}..{self.x1}]x[{self.y0}..{self.y1}]{h})"


@lru_cache(maxsize=4096)
def _catalog_views(region: Region) -> tuple:
    return tuple(region._catalog_views())


def region_of(spec: ShapeSpec) -> Region:
    return spec.region()


@lru_cache(maxsize=256)
def _cell_set(region: Region) -> frozenset:
    return frozenset(region.cells())


def connected(cells, removed: set = frozenset()) -> bool:
    """Breadth-first connectivity test of ``cells`` (Region or set) after deleting ``removed``."""
    if isinstance(cells, Region):
        pool = _cell_set(cells)
        member = lambda p: p in pool and p not in removed  # noqa: E731
        start = next((p for p in cells.cells() if p not in removed), None)
        total = len(cells) - sum(1 for p in removed if p in pool)
    else:
        pool = set(map(tuple, cells)) - set(removed)
        member = pool.__contains__
        start = next(iter(pool), None)
        total = len(pool)
    if start is None:
        return True
    seen = {start}
    queue = deque([start])
    while queue:
        x, y = queue.popleft()
        for dx, dy in NEIGHBOR_OFFSETS:
            q = (x + dx, y + dy)
            if q not in seen and member(q):
                seen.add(q)
                queue.append(q)
    return len(seen) == total


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PathSeq:
    points: tuple[GridPoint, ...]
    closed: bool = False

    @classmethod
    def of(cls, points: Iterable[Point], closed: bool = False) -> "PathSeq":
        return cls(tuple(GridPoint(*p) for p in points), closed)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    @property
    def start(self) -> GridPoint:
        return self.points[0]

    @property
    def end(self) -> GridPoint:
        return self.points[-1]

    def edges(self) -> list[Edge]:
        pts = self.points
        out = [norm_edge(pts[i], pts[i + 1]) for i in range(len(pts) - 1)]
        if self.closed and len(pts) > 1:
            out.append(norm_edge(pts[-1], pts[0]))
        return out

    def has_edge(self, u: Point, v: Point) -> bool:
        return norm_edge(u, v) in set(self.edges())

    def as_list(self) -> list[list[int]]:
        return [[p.x, p.y] for p in self.points]


@dataclass(frozen=True)
class PathCheck:
    valid: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.valid


def check_points(member, points: Sequence[Point], s: Point | None, t: Point | None, closed: bool) -> PathCheck:
    if not points:
        return PathCheck(False, "empty path")
    seen = set()
    for i, p in enumerate(points):
        p = tuple(p)
        if not member(p):
            return PathCheck(False, f"out-of-shape {p}")
        if p in seen:
            return PathCheck(False, f"repeat {p}")
        seen.add(p)
        if i and not adjacent(tuple(points[i - 1]), p):
            return PathCheck(False, f"non-adjacent step {tuple(points[i - 1])}->{p}")
    if closed:
        if len(points) < 4:
            return PathCheck(False, "cycle shorter than 4")
        if not adjacent(tuple(points[-1]), tuple(points[0])):
            return PathCheck(False, "cycle not closed")
        return PathCheck(True)
    if s is not None and tuple(points[0]) != tuple(s):
        return PathCheck(False, f"wrong endpoint: starts at {tuple(points[0])}")
    if t is not None and tuple(points[-1]) != tuple(t):
        return PathCheck(False, f"wrong endpoint: ends at {tuple(points[-1])}")
    return PathCheck(True)


def validate_path(spec: ShapeSpec | Region, path: PathSeq | Sequence[Point], s: Point | None = None,
                  t: Point | None = None) -> PathCheck:
    """Check membership, distinctness, adjacency, endpoints (ignored for closed paths)."""
    closed = isinstance(path, PathSeq) and path.closed
    pts = path.points if isinstance(path, PathSeq) else list(path)
    member = spec.contains if isinstance(spec, ShapeSpec) else spec.__contains__
    return check_points(member, pts, s, t, closed)


# ---------------------------------------------------------------------------
# Separation and canonical orientation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Piece:
    """A separated part: catalog ``spec`` placed so that p = T^-1(q) + offset for spec point q."""

    spec: ShapeSpec
    offset: tuple[int, int]
    transform: SymmetryTransform
    region: Region = field(compare=False)

    def to_parent(self, q: Point) -> GridPoint:
        x, y = self.transform.inverse().apply(q)
        return GridPoint(x + self.offset[0], y + self.offset[1])

    def from_parent(self, p: Point) -> GridPoint:
        return self.transform.apply((p[0] - self.offset[0], p[1] - self.offset[1]))


def piece_of(region: Region) -> Piece:
    spec, T, dx, dy = region.catalog()
    return Piece(spec, (dx, dy), T, region)


def split_region(region: Region, axis: str, cut: int) -> tuple[Region, Region]:
    """Cut after column (vertical) or row (horizontal) ``cut``; both parts must be non-empty."""
    x0, y0, x1, y1 = region.x0, region.y0, region.x1, region.y1
    if axis == "vertical":
        if not x0 <= cut < x1:
            raise GridError("cut-out-of-range", str(cut))
        parts = ((x0, y0, cut, y1), (cut + 1, y0, x1, y1))
    elif axis == "horizontal":
        if not y0 <= cut < y1:
            raise GridError("cut-out-of-range", str(cut))
        parts = ((x0, y0, x1, cut), (x0, cut + 1, x1, y1))
    else:
        raise GridError("bad-axis", axis)
    try:
        return tuple(Region.make(*box, region.hole) for box in parts)  # type: ignore[return-value]
    except GridError as exc:
        raise GridError("cut-produces-non-catalog-shape", exc.code) from None


def _clip(h, x0, y0, x1, y1):
    c = (max(h[0], x0), max(h[1], y0), min(h[2], x1), min(h[3], y1))
    return c if c[0] <= c[2] and c[1] <= c[3] else None


def _covered(holes, axis: str, coord: int, lo: int, hi: int) -> bool:
    """Whether the holes cover the whole segment of a box edge line."""
    spans = []
    for h in holes:
        if axis == "row" and h[1] <= coord <= h[3]:
            spans.append((h[0], h[2]))
        elif axis == "col" and h[0] <= coord <= h[2]:
            spans.append((h[1], h[3]))
    hit = set()
    for a, b in spans:
        hit.update(range(max(a, lo), min(b, hi) + 1))
    return len(hit) == hi - lo + 1


def _merge_holes(holes: list) -> list:
    changed = True
    while changed:
        changed = False
        for i in range(len(holes)):
            for j in range(i + 1, len(holes)):
                a, b = holes[i], holes[j]
                if a[0] == b[0] and a[2] == b[2] and (a[3] + 1 == b[1] or b[3] + 1 == a[1]):
                    m = (a[0], min(a[1], b[1]), a[2], max(a[3], b[3]))
                elif a[1] == b[1] and a[3] == b[3] and (a[2] + 1 == b[0] or b[2] + 1 == a[0]):
                    m = (min(a[0], b[0]), a[1], max(a[2], b[2]), a[3])
                else:
                    continue
                holes = [h for k, h in enumerate(holes) if k not in (i, j)] + [m]
                changed = True
                break
            if changed:
                break
    return holes


@dataclass(frozen=True)
class Patchwork:
    """Box minus several disjoint blocks; the pieces the catalog cannot name.

    These arise inside reductions (a C whose arms end at different columns,
    an L with an extra ear) and are only ever cut further or searched exactly.
    """

    x0: int
    y0: int
    x1: int
    y1: int
    holes: tuple[tuple[int, int, int, int], ...]
    family = "X"

    @staticmethod
    def make(x0: int, y0: int, x1: int, y1: int, holes) -> "Region | Patchwork":
        holes = [h for h in (_clip(h, x0, y0, x1, y1) for h in holes) if h is not None]
        while True:
            if x0 > x1 or y0 > y1:
                raise GridError("empty-region")
            if _covered(holes, "row", y0, x0, x1):
                y0 += 1
            elif _covered(holes, "row", y1, x0, x1):
                y1 -= 1
            elif _covered(holes, "col", x0, y0, y1):
                x0 += 1
            elif _covered(holes, "col", x1, y0, y1):
                x1 -= 1
            else:
                break
            holes = [h for h in (_clip(h, x0, y0, x1, y1) for h in holes) if h is not None]
        holes = sorted(_merge_holes(holes))
        if len(holes) <= 1:
            return Region.make(x0, y0, x1, y1, holes[0] if holes else None)
        out = Patchwork(x0, y0, x1, y1, tuple(holes))
        if not connected(set(out.cells())):
            raise GridError("disconnected-region")
        return out

    @staticmethod
    def from_cells(cells) -> "Region | Patchwork":
        """Box of ``cells`` minus a greedy row-major cover of the missing cells by blocks."""
        cells = set(cells)
        x0 = min(p[0] for p in cells)
        x1 = max(p[0] for p in cells)
        y0 = min(p[1] for p in cells)
        y1 = max(p[1] for p in cells)
        done: set = set()
        holes = []
        for y in range(y0, y1 + 1):
            for x in range(x0, x1 + 1):
                if (x, y) in cells or (x, y) in done:
                    continue
                xe = x
                while xe + 1 <= x1 and (xe + 1, y) not in cells and (xe + 1, y) not in done:
                    xe += 1
                ye = y
                while ye + 1 <= y1 and all((u, ye + 1) not in cells and (u, ye + 1) not in done
                                           for u in range(x, xe + 1)):
                    ye += 1
                holes.append((x, y, xe, ye))
                done.update((u, v) for u in range(x, xe + 1) for v in range(y, ye + 1))
        return Patchwork.make(x0, y0, x1, y1, holes)

    @property
    def width(self) -> int:
        return self.x1 - self.x0 + 1

    @property
    def height(self) -> int:
        return self.y1 - self.y0 + 1

    def __len__(self) -> int:
        return self.width * self.height - sum((h[2] - h[0] + 1) * (h[3] - h[1] + 1) for h in self.holes)

    def __contains__(self, p: object) -> bool:
        x, y = p  # type: ignore[misc]
        if not (self.x0 <= x <= self.x1 and self.y0 <= y <= self.y1):
            return False
        return not any(h[0] <= x <= h[2] and h[1] <= y <= h[3] for h in self.holes)

    def cells(self) -> Iterator[Point]:
        for y in range(self.y0, self.y1 + 1):
            for x in range(self.x0, self.x1 + 1):
                if (x, y) in self:
                    yield (x, y)

    def neighbors(self, p: Point) -> list[Point]:
        x, y = p
        return [(x + dx, y + dy) for dx, dy in NEIGHBOR_OFFSETS if (x + dx, y + dy) in self]

    def translate(self, dx: int, dy: int) -> "Patchwork":
        holes = tuple((h[0] + dx, h[1] + dy, h[2] + dx, h[3] + dy) for h in self.holes)
        return Patchwork(self.x0 + dx, self.y0 + dy, self.x1 + dx, self.y1 + dy, holes)

    def local(self) -> tuple["Patchwork", int, int]:
        dx, dy = self.x0 - 1, self.y0 - 1
        return self.translate(-dx, -dy), dx, dy

    def __repr__(self) -> str:
        hs = " ".join(f"- [{h[0]}..{h[2]}]x[{h[1]}..{h[3]}]" for h in self.holes)
        return f"Patchwork([{self.x0}..{self.x1}]x[{self.y0}..{self.y1}] {hs})"


def split_shape(shape: "Region | Patchwork", axis: str, cut: int):
    """``split_region`` for regions and patchworks alike; parts come back normalized."""
    if isinstance(shape, Region):
        return split_region(shape, axis, cut)
    x0, y0, x1, y1 = shape.x0, shape.y0, shape.x1, shape.y1
    if axis == "vertical":
        if not x0 <= cut < x1:
            raise GridError("cut-out-of-range", str(cut))
        parts = ((x0, y0, cut, y1), (cut + 1, y0, x1, y1))
    else:
        if not y0 <= cut < y1:
            raise GridError("cut-out-of-range", str(cut))
        parts = ((x0, y0, x1, cut), (x0, cut + 1, x1, y1))
    return tuple(Patchwork.make(*box, shape.holes) for box in parts)


def separate(spec: ShapeSpec, axis: str, cut: int) -> tuple[Piece, Piece]:
    """Separate ``spec`` along a line; each part is returned as a catalog spec plus placement."""
    r1, r2 = split_region(spec.region(), axis, cut)
    out = []
    for r in (r1, r2):
        views = r.catalog_views()
        if not views:
            raise GridError("cut-produces-non-catalog-shape", repr(r))
        spec_i, T, dx, dy = views[0]
        out.append(Piece(spec_i, (dx, dy), T, r))
    return out[0], out[1]


def o_family(spec: ShapeSpec) -> int:
    """Canonical family index 1, 2, 3 of an O-shape, or 0 when not canonical."""
    a, b, c, d = spec.a, spec.b, spec.c, spec.d
    if a == b == c == d == 1:
        return 1
    if a >= 2 and c == 1:
        return 2
    if min(a, b, c, d) >= 2:
        return 3
    return 0


def canonical_frames(spec: ShapeSpec) -> list[SymmetryTransform]:
    """All transforms mapping an O-shape into one of the canonical families."""
    return [T for T in SymmetryTransform.all(spec.m, spec.n) if o_family(T.apply_spec(spec))]


def canonicalize(spec: ShapeSpec, s: Point, t: Point) -> tuple[ShapeSpec, GridPoint, GridPoint, SymmetryTransform]:
    """Map an O-shape instance to a canonical family with s'_x <= t'_x (s and t keep their roles
    unless swapping is needed for the ordering, in which case the returned s' is the image of t)."""
    if spec.family != "O":
        raise GridError("wrong-shape-family", spec.label())
    frames = canonical_frames(spec)
    for T in frames:
        s2, t2 = T.apply(s), T.apply(t)
        if s2.x <= t2.x:
            return T.apply_spec(spec), s2, t2, T
    T = frames[0]
    return T.apply_spec(spec), T.apply(t), T.apply(s), T


# ---------------------------------------------------------------------------
# Combinators on point lists (internal) and PathSeq (public)
# ---------------------------------------------------------------------------

def _edge_index(points: Sequence[Point], e: Edge, closed: bool) -> int:
    """Index i with {points[i], points[i+1 mod n]} == e, or -1."""
    u, v = tuple(e[0]), tuple(e[1])
    n = len(points)
    for i in range(n if closed else n - 1):
        a, b = tuple(points[i]), tuple(points[(i + 1) % n])
        if (a == u and b == v) or (a == v and b == u):
            return i
    return -1


def splice_cycle(path: list, i: int, cycle: list, j: int, closed_path: bool = False) -> list:
    """Merge ``cycle`` into ``path`` replacing path edge (i, i+1) and cycle edge (j, j+1).

    The two edges must be parallel; the pairing is chosen automatically.
    """
    n, L = len(path), len(cycle)
    a, b = path[i], path[(i + 1) % n]
    c, d = cycle[j], cycle[(j + 1) % L]
    if adjacent(a, c) and adjacent(b, d):
        # a -> c -> c-1 -> ... -> d -> b
        seg = [cycle[(j - r) % L] for r in range(L)]
    elif adjacent(a, d) and adjacent(b, c):
        seg = [cycle[(j + 1 + r) % L] for r in range(L)]
    else:
        raise GridError("edges-not-parallel", f"{(a, b)} vs {(c, d)}")
    if closed_path and i == n - 1:
        return path + seg
    return path[: i + 1] + seg + path[i + 1:]


def concat_paths(p1: PathSeq, p2: PathSeq) -> PathSeq:
    if set(p1.points) & set(p2.points):
        raise GridError("not-disjoint")
    if not adjacent(p1.end, p2.start):
        raise GridError("ends-not-adjacent")
    return PathSeq(p1.points + p2.points)


def _require_disjoint(*paths: PathSeq) -> None:
    seen: set = set()
    for p in paths:
        pts = set(p.points)
        if seen & pts:
            raise GridError("not-disjoint")
        seen |= pts


def combine_cycle_cycle(c1: PathSeq, c2: PathSeq, e1: Edge, e2: Edge) -> PathSeq:
    _require_disjoint(c1, c2)
    if not parallel(e1, e2):
        raise GridError("edges-not-parallel")
    i, j = _edge_index(c1.points, e1, True), _edge_index(c2.points, e2, True)
    if i < 0 or j < 0:
        raise GridError("edge-not-in-cycle")
    pts = splice_cycle(list(c1.points), i, list(c2.points), j, closed_path=True)
    return PathSeq(tuple(pts), closed=True)


def combine_cycle_path(c: PathSeq, p: PathSeq, e1: Edge, e2: Edge) -> PathSeq:
    _require_disjoint(c, p)
    if not parallel(e1, e2):
        raise GridError("edges-not-parallel")
    j, i = _edge_index(c.points, e1, True), _edge_index(p.points, e2, False)
    if i < 0 or j < 0:
        raise GridError("edge-not-in-cycle")
    return PathSeq(tuple(splice_cycle(list(p.points), i, list(c.points), j)))


def absorb_vertex(cp: PathSeq, x: Point, edge: Edge) -> PathSeq:
    x = GridPoint(*x)
    if x in cp.points:
        raise GridError("already-contained")
    u, v = edge
    if not (adjacent(x, u) and adjacent(x, v)):
        raise GridError("not-adjoining")
    i = _edge_index(cp.points, edge, cp.closed)
    if i < 0:
        raise GridError("edge-not-in-path")
    pts = list(cp.points)
    if cp.closed and i == len(pts) - 1:
        pts.append(x)
    else:
        pts.insert(i + 1, x)
    return PathSeq(tuple(pts), cp.closed)


def close_path_with_cycle(c: PathSeq, p: PathSeq, edge: Edge) -> PathSeq:
    _require_disjoint(c, p)
    u1, v1 = map(tuple, edge)
    j = _edge_index(c.points, edge, True)
    if j < 0:
        raise GridError("edge-not-in-cycle")
    s, t = tuple(p.start), tuple(p.end)
    if adjacent(u1, s) and adjacent(v1, t):
        seq = list(p.points)
    elif adjacent(u1, t) and adjacent(v1, s):
        seq = list(reversed(p.points))
    else:
        raise GridError("not-adjoining", "edge endpoints must adjoin the path ends")
    pts = list(c.points)
    a, b = pts[j], pts[(j + 1) % len(pts)]
    # walk the cycle from b around to a, then through the path from a's side back to b
    L = len(pts)
    ring = [pts[(j + 1 + r) % L] for r in range(L)]  # b ... a
    if adjacent(tuple(a), tuple(seq[0])) and adjacent(tuple(b), tuple(seq[-1])):
        return PathSeq(tuple(ring + seq), closed=True)
    seq.reverse()
    return PathSeq(tuple(ring + seq), closed=True)
