"""Explicit Hamiltonian cycles and paths of rectangles.

Cycles are "combs": walk down the left column, along the bottom row and up
the right column, then snake through the inner columns.  Three sides are flat
(fully traversed boundary paths) and the fourth is concave.

Paths use peel-and-split.  Bands of even width that contain neither endpoint
are peeled off each side as comb cycles and later spliced back through
parallel edges; what remains is a core whose extent is essentially the
bounding box of s and t.  A small core is solved exactly.  A large one is cut
between s and t, with the crossing edge placed near the middle of both
coordinates, and each half is solved recursively.  Every level shrinks the
core geometrically, so the total work stays linear in the area.
"""
from __future__ import annotations

from itertools import product

from .exact import BudgetExceeded, Demand, exact_hp as _exact_hp, satisfied
from .grid import Point, Region

Box = tuple[int, int, int, int]  # x0, y0, x1, y1 inclusive

EXACT_MAX = 20


class SolveFailure(RuntimeError):
    """A construction could not meet its contract (the message says which one)."""


def exact_hp(region, s, t, demands=()):
    try:
        return _exact_hp(region, s, t, demands)
    except BudgetExceeded as exc:
        raise SolveFailure(str(exc)) from None


def box_size(box: Box) -> tuple[int, int]:
    return box[2] - box[0] + 1, box[3] - box[1] + 1


def in_box(box: Box, p: Point) -> bool:
    return box[0] <= p[0] <= box[2] and box[1] <= p[1] <= box[3]


def rect_f1(box: Box, s: Point, t: Point) -> bool:
    """Cut-vertex / vertex-cut test for a rectangle, in closed form."""
    x0, y0, x1, y1 = box
    W, H = box_size(box)
    if W == 1 or H == 1:
        if W * H <= 2:
            return False
        ends = {(x0, y0), (x1, y1)}
        return {tuple(s), tuple(t)} != ends
    if W == 2 and H >= 3:
        return s[1] == t[1] and y0 < s[1] < y1
    if H == 2 and W >= 3:
        return s[0] == t[0] and x0 < s[0] < x1
    return False


# ---------------------------------------------------------------------------
# Cycles
# ---------------------------------------------------------------------------

def _u_comb(L: int, D: int) -> list[Point]:
    """Comb cycle of [1..L] x [1..D] (L even) with the top row concave."""
    cyc = [(1, y) for y in range(1, D + 1)]
    cyc += [(x, D) for x in range(2, L + 1)]
    cyc += [(L, y) for y in range(D - 1, 0, -1)]
    for i, x in enumerate(range(L - 1, 1, -1)):
        ys = range(1, D) if i % 2 == 0 else range(D - 1, 0, -1)
        cyc += [(x, y) for y in ys]
    return cyc


def _place(points, box: Box, concave: str) -> list[Point]:
    """Map canonical coordinates (concave side on top) into ``box`` with the concave side given."""
    x0, y0, x1, y1 = box
    if concave == "T":
        return [(x0 + x - 1, y0 + y - 1) for x, y in points]
    if concave == "B":
        return [(x0 + x - 1, y1 - y + 1) for x, y in points]
    if concave == "L":
        return [(x0 + y - 1, y0 + x - 1) for x, y in points]
    if concave == "R":
        return [(x1 - y + 1, y0 + x - 1) for x, y in points]
    raise ValueError(concave)


def _concave_dims(box: Box, concave: str) -> tuple[int, int]:
    W, H = box_size(box)
    return (W, H) if concave in "TB" else (H, W)


def comb_cycle(box: Box, concave: str) -> list[Point]:
    """Comb cycle; needs an even number of cells along the concave side and depth >= 2."""
    L, D = _concave_dims(box, concave)
    if L % 2 or L < 2 or D < 2:
        raise SolveFailure(f"comb needs even concave side: {box} {concave}")
    return _place(_u_comb(L, D), box, concave)


def rect_hc(box: Box, concave: str = "T") -> list[Point]:
    """Hamiltonian cycle with flat faces on the three sides other than ``concave``.

    The concave side always keeps at least one boundary edge.  With an odd
    concave side the inner part is a Hamiltonian path between two corners of
    the inner rectangle; a concave side of length 3 needs depth at most 3.
    """
    L, D = _concave_dims(box, concave)
    if L < 2 or D < 2:
        raise SolveFailure(f"degenerate rectangle {box}")
    if L % 2 == 0:
        return comb_cycle(box, concave)
    if L == 3 and D > 3:
        raise SolveFailure(f"concave side of length 3 needs depth <= 3: {box} {concave}")
    cyc = [(1, y) for y in range(1, D + 1)] + [(x, D) for x in range(2, L + 1)]
    cyc += [(L, y) for y in range(D - 1, 0, -1)]
    if L == 3:
        inner = [(2, y) for y in range(1, D)]
    else:
        inner = rect_hp((2, 1, L - 1, D - 1), (L - 1, 1), (2, 1))
    return _place(cyc + inner, box, concave)


# ---------------------------------------------------------------------------
# Splicing helpers
# ---------------------------------------------------------------------------

def splice_on_line(path: list, cycle: list, axis: str, path_coord: int, cycle_coord: int,
                   lo: int, hi: int, closed: bool = False) -> list:
    """Merge ``cycle`` into ``path`` through parallel edges lying on two adjacent lines.

    Looks for a path edge on the line ``axis = path_coord`` (within [lo, hi]) whose
    translate onto ``cycle_coord`` is a cycle edge.
    """
    pos = {p: i for i, p in enumerate(cycle)}
    L = len(cycle)
    n = len(path)
    k = 0 if axis == "x" else 1
    off = cycle_coord - path_coord
    rng = range(n if closed else n - 1)
    for i in rng:
        u, v = path[i], path[(i + 1) % n]
        if u[k] != path_coord or v[k] != path_coord:
            continue
        o = 1 - k
        if not (lo <= u[o] <= hi and lo <= v[o] <= hi):
            continue
        cu = (u[0] + off, u[1]) if k == 0 else (u[0], u[1] + off)
        cv = (v[0] + off, v[1]) if k == 0 else (v[0], v[1] + off)
        j = pos.get(cu)
        if j is None or cv not in pos:
            continue
        if cycle[(j + 1) % L] == cv:
            seg = [cycle[(j - r) % L] for r in range(L)]  # cu ... cv going backwards
        elif cycle[(j - 1) % L] == cv:
            seg = [cycle[(j + r) % L] for r in range(L)]
        else:
            continue
        if closed and i == n - 1:
            return path + seg
        return path[: i + 1] + seg + path[i + 1:]
    raise SolveFailure(f"no parallel edge pair on line {axis}={path_coord}/{cycle_coord}")


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------

def _line_path(box: Box, s: Point, t: Point) -> list[Point]:
    x0, y0, x1, y1 = box
    if x0 == x1:
        step = 1 if t[1] >= s[1] else -1
        return [(x0, y) for y in range(s[1], t[1] + step, step)]
    step = 1 if t[0] >= s[0] else -1
    return [(x, y0) for x in range(s[0], t[0] + step, step)]


def _peel_options(margin: int) -> list[int]:
    e = margin - margin % 2
    return [p for p in (e, e - 2) if p >= 0] if e >= 2 else [0]


def _peel_configs(box: Box, s: Point, t: Point):
    x0, y0, x1, y1 = box
    ml = min(s[0], t[0]) - x0
    mr = x1 - max(s[0], t[0])
    mt = min(s[1], t[1]) - y0
    mb = y1 - max(s[1], t[1])
    cfgs = []
    for pl, pr, pt, pb in product(_peel_options(ml), _peel_options(mr), _peel_options(mt), _peel_options(mb)):
        core = (x0 + pl, y0 + pt, x1 - pr, y1 - pb)
        cw, ch = box_size(core)
        if cw < 2 or ch < 2:
            continue
        if rect_f1(core, s, t):
            continue
        cfgs.append((-(pl + pr + pt + pb), (pl, pr, pt, pb), core))
    cfgs.sort()
    return [(p, c) for _, p, c in cfgs]


def rect_hp(box: Box, s: Point, t: Point, demands=()) -> list[Point]:
    """Hamiltonian (s, t)-path of the rectangle ``box`` meeting ``demands``."""
    s, t = tuple(s), tuple(t)
    W, H = box_size(box)
    if not (in_box(box, s) and in_box(box, t)):
        raise SolveFailure(f"endpoint outside {box}")
    if s == t:
        if W * H == 1:
            return [s]
        raise SolveFailure("identical endpoints")
    if rect_f1(box, s, t):
        raise SolveFailure(f"F1 on rectangle {box} {s} {t}")
    if W == 1 or H == 1:
        path = _line_path(box, s, t)
        if not satisfied(path, demands):
            raise SolveFailure("line path misses a demand")
        return path
    if W * H <= EXACT_MAX:
        path = exact_hp(Region(*box), s, t, tuple(demands))
        if path is None:
            raise SolveFailure(f"no Hamiltonian path meets demands on {box} {s} {t} {demands}")
        return path
    last = None
    for peel, core in _peel_configs(box, s, t)[:6]:
        try:
            path = _peel_solve(box, s, t, demands, peel, core)
        except SolveFailure as exc:
            last = exc
            continue
        if satisfied(path, demands):
            return path
        last = SolveFailure(f"demands unmet on {box}")
    raise last or SolveFailure(f"no peel configuration for {box} {s} {t}")


def _peel_solve(box: Box, s: Point, t: Point, demands, peel, core: Box) -> list[Point]:
    x0, y0, x1, y1 = box
    pl, pr, pt, pb = peel
    cx0, cy0, cx1, cy1 = core
    core_dem = [c for c in (d.clip(Region(*core)) for d in demands) if c is not None]
    if pt:
        core_dem.append(Demand("y", cy0, cx0, cx1))
    if pb:
        core_dem.append(Demand("y", cy1, cx0, cx1))
    if not (pt or pb):
        if pl:
            core_dem.append(Demand("x", cx0, cy0, cy1))
        if pr:
            core_dem.append(Demand("x", cx1, cy0, cy1))
    if peel == (0, 0, 0, 0):
        return _core_solve(core, s, t, core_dem)
    path = rect_hp(core, s, t, core_dem)
    if pt:
        blk = _block_cycle((cx0, y0, cx1, cy0 - 1), "B", demands)
        path = splice_on_line(path, blk, "y", cy0, cy0 - 1, cx0, cx1)
    if pb:
        blk = _block_cycle((cx0, cy1 + 1, cx1, y1), "T", demands)
        path = splice_on_line(path, blk, "y", cy1, cy1 + 1, cx0, cx1)
    if pl:
        blk = _block_cycle((x0, y0, cx0 - 1, y1), "R", demands)
        path = splice_on_line(path, blk, "x", cx0, cx0 - 1, y0, y1)
    if pr:
        blk = _block_cycle((cx1 + 1, y0, x1, y1), "L", demands)
        path = splice_on_line(path, blk, "x", cx1, cx1 + 1, y0, y1)
    return path


def _block_cycle(box: Box, facing: str, demands) -> list[Point]:
    """Comb cycle of a peeled band, flat toward the core, oriented to honor demands inside it."""
    local = [c for c in (d.clip(Region(*box)) for d in demands) if c is not None]
    best, best_hits = None, -1
    for concave in "LRTB":
        if concave == facing or _concave_dims(box, concave)[0] % 2:
            continue
        cyc = comb_cycle(box, concave)
        hits = sum(satisfied(cyc, (d,), closed=True) for d in local)
        if hits > best_hits:
            best, best_hits = cyc, hits
        if hits == len(local):
            break
    return best


def _core_solve(core: Box, s: Point, t: Point, demands) -> list[Point]:
    W, H = box_size(core)
    if W * H <= EXACT_MAX:
        path = exact_hp(Region(*core), s, t, tuple(demands))
        if path is None:
            raise SolveFailure(f"core {core} {s} {t} {demands}")
        return path
    if abs(s[0] - t[0]) >= abs(s[1] - t[1]):
        return _split(core, s, t, demands)
    tr = lambda p: (p[1], p[0])  # noqa: E731
    tdem = [Demand("y" if d.axis == "x" else "x", d.coord, d.lo, d.hi, d.flat) for d in demands]
    path = _split((core[1], core[0], core[3], core[2]), tr(s), tr(t), tdem)
    return [tr(p) for p in path]


def _split(core: Box, s: Point, t: Point, demands) -> list[Point]:
    """Vertical cut between s and t (|dx| >= |dy| assumed), crossing near the midpoint."""
    if s[0] > t[0]:
        return _split(core, t, s, demands)[::-1]
    cx0, cy0, cx1, cy1 = core
    mid_x = (s[0] + t[0]) // 2
    mid_y = (s[1] + t[1]) // 2
    cuts = sorted(range(s[0], t[0]), key=lambda c: (abs(c - mid_x), c))
    rows = sorted(range(cy0, cy1 + 1), key=lambda y: (abs(y - mid_y), y))
    last = None
    for c in cuts[:4]:
        left, right = (cx0, cy0, c, cy1), (c + 1, cy0, cx1, cy1)
        straddle = [d for d in demands if d.axis == "y" and d.lo <= c < d.hi
                    and d.clip(Region(*left)) is None and d.clip(Region(*right)) is None]
        if len(straddle) > 1:
            continue
        rest = [d for d in demands if d not in straddle]
        dl, dr = _assign_demands(rest, left, right)
        if straddle:
            pairs = [((c, straddle[0].coord), (c + 1, straddle[0].coord))]
        else:
            pairs = [((c, py), (c + 1, py + dq)) for py in rows[:4] for dq in (0, -1, 1)]
        for p, q in pairs:
            if p == s or q == t or not cy0 <= q[1] <= cy1:
                continue
            if rect_f1(left, s, p) or rect_f1(right, q, t):
                continue
            try:
                return rect_hp(left, s, p, dl) + rect_hp(right, q, t, dr)
            except SolveFailure as exc:
                last = exc
    raise last or SolveFailure(f"no split for {core} {s} {t}")


def _assign_demands(demands, left: Box, right: Box):
    dl, dr = [], []
    for d in demands:
        a, b = d.clip(Region(*left)), d.clip(Region(*right))
        if a is None and b is None:
            raise SolveFailure(f"demand {d} straddles the cut")
        if b is None or (a is not None and (a.hi - a.lo) >= (b.hi - b.lo)):
            dl.append(a)
        else:
            dr.append(b)
    return dl, dr


# ---------------------------------------------------------------------------
# Paths with forced edges
# ---------------------------------------------------------------------------

def rect_hp_forced_first_edge(box: Box, s: Point, t: Point, zf: bool) -> list[Point]:
    """Path containing (z, f) = ((x0+1, y0), (x0+2, y0)) when ``zf``, else (w, z) = ((x0, y0), (x0+1, y0))."""
    x0, y0 = box[0], box[1]
    dem = Demand("y", y0, x0 + 1, x0 + 2) if zf else Demand("y", y0, x0, x0 + 1)
    return rect_hp(box, s, t, (dem,))


def rect3_hp_forced_boundary_edges(box: Box, s: Point, t: Point) -> list[Point]:
    """Path of a 3-row rectangle containing both vertical edges of its last column."""
    x1, y0 = box[2], box[1]
    dem = (Demand("x", x1, y0, y0 + 1), Demand("x", x1, y0 + 1, y0 + 2))
    return rect_hp(box, s, t, dem)
