"""Hamiltonian paths and cycles of R/L/C pieces by recursive separation.

A region is cut along a line into two catalog pieces and the answer is
assembled from answers on the pieces:

* split   s and t fall on different sides: HP(A, s, p) => HP(B, q, t) with p ~ q
          across the cut;
* absorb  both endpoints on one side: HP(A, s, t) with an edge facing B, merged
          with a Hamiltonian cycle of B that has a flat face toward A;
* cycle   HC(A) and HC(B) merged through parallel edges, or HP(A, p1, p2) and
          HP(B, q2, q1) closed up across the cut.

Sub-pieces that are rectangles go to the explicit constructions in ``rect``;
pieces of at most ``EXACT_MAX`` vertices go to exact search.  Every plan is
checked against the forbidden-condition tests before it is tried, so the
search rarely backtracks.
"""
from __future__ import annotations

from functools import lru_cache

from .conditions import rlc_conditions, rlc_has_cycle
from .exact import BudgetExceeded, Demand, exact_hc, exact_hp, satisfied
from .grid import GridError, Patchwork, Point, Region, adjacent, split_shape
from .rect import EXACT_MAX, SolveFailure, rect_hc, rect_hp, splice_on_line

FALLBACK_MAX = 30


def _is_rect(region) -> bool:
    return isinstance(region, Region) and region.hole is None


def _may_cycle(region) -> bool:
    """Cycle existence where it is decidable, optimism for patchworks."""
    if isinstance(region, Patchwork):
        return len(region) >= 4
    return rlc_has_cycle(region)


def _box(region: Region):
    return (region.x0, region.y0, region.x1, region.y1)


def _exact_path(region, s, t, demands, budget=2_000_000):
    try:
        return exact_hp(region, s, t, demands, budget=budget)
    except BudgetExceeded:
        return None


def _exact_cycle(region, demands, budget=2_000_000):
    try:
        return exact_hc(region, demands, budget=budget)
    except BudgetExceeded:
        return None


# ---------------------------------------------------------------------------
# Cuts
# ---------------------------------------------------------------------------

def _cut_lines(region: Region, pts=()) -> list[tuple[str, int]]:
    """Candidate separation lines.

    The hole's sides come first, then lines next to the given points, then
    lines that peel an even band off a straight side clear of points and hole.
    """
    out = []
    for hx0, hy0, hx1, hy1 in region.holes:
        out += [("vertical", hx0 - 1), ("vertical", hx1), ("horizontal", hy0 - 1), ("horizontal", hy1)]
    for p in pts:
        out += [("vertical", p[0]), ("vertical", p[0] - 1), ("horizontal", p[1]), ("horizontal", p[1] - 1)]
    out += _peel_lines(region, pts)
    seen, lines = set(), []
    for ax, c in out:
        lo, hi = (region.x0, region.x1) if ax == "vertical" else (region.y0, region.y1)
        if lo <= c < hi and (ax, c) not in seen:
            seen.add((ax, c))
            lines.append((ax, c))
    return lines


def _peel_lines(region: Region, pts) -> list[tuple[str, int]]:
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    if not pts:
        for hx0, hy0, hx1, hy1 in region.holes:
            xs += [hx0, hx1]
            ys += [hy0, hy1]
    if not xs:
        xs = ys = None
    out = []
    for ax, lo, hi, vals in (("vertical", region.x0, region.x1, xs), ("horizontal", region.y0, region.y1, ys)):
        near = (min(vals) - lo) if vals else (hi - lo + 1) // 2
        far = (hi - max(vals)) if vals else (hi - lo + 1) // 2
        for w in _even_widths(near):
            out.append((ax, lo + w - 1))
        for w in _even_widths(far):
            out.append((ax, hi - w))
    return out


def _even_widths(room: int) -> list[int]:
    e = room - room % 2
    return [w for w in (e, e - 2) if w >= 2]


def _pieces(region: Region, axis: str, c: int):
    try:
        return split_shape(region, axis, c)
    except GridError:
        return None


def _shared_runs(A: Region, B: Region, axis: str, c: int) -> list[tuple[int, int]]:
    """Maximal runs [lo, hi] of positions along the cut where both sides have a cell."""
    if axis == "vertical":
        lo_, hi_ = max(A.y0, B.y0), min(A.y1, B.y1)
        ok = [y for y in range(lo_, hi_ + 1) if (c, y) in A and (c + 1, y) in B]
    else:
        lo_, hi_ = max(A.x0, B.x0), min(A.x1, B.x1)
        ok = [x for x in range(lo_, hi_ + 1) if (x, c) in A and (x, c + 1) in B]
    runs = []
    for v in ok:
        if runs and runs[-1][1] == v - 1:
            runs[-1][1] = v
        else:
            runs.append([v, v])
    return [tuple(r) for r in runs]


def _line(axis: str) -> str:
    """Demand axis of the grid lines parallel to a cut."""
    return "x" if axis == "vertical" else "y"


def _pt(axis: str, c: int, v: int) -> Point:
    return (c, v) if axis == "vertical" else (v, c)


def _assign(demands, A: Region, B: Region):
    """Distribute demands between two pieces; None when one straddles the cut unresolvably."""
    dA, dB, straddle = [], [], []
    for d in demands:
        a, b = d.clip(A), d.clip(B)
        if a is not None and b is not None and d.flat:
            return None
        if a is None and b is None:
            if d.flat:
                return None
            straddle.append(d)
        elif b is None or (a is not None and a.hi - a.lo >= b.hi - b.lo):
            dA.append(a)
        else:
            dB.append(b)
    return dA, dB, straddle


def _crossing_hits(d: Demand, p: Point, q: Point) -> bool:
    return d.hit(p, q) or d.hit(q, p)


def _ok(region: Region, s: Point, t: Point) -> bool:
    if s == t:
        return len(region) == 1
    if len(region) == 1:
        return False
    if region.family in ("O", "X"):
        return True
    return not rlc_conditions(region, s, t)


# ---------------------------------------------------------------------------
# Public entry points
# ---------------------------------------------------------------------------

def region_hp(region: Region, s: Point, t: Point, demands=(), trace: list | None = None) -> list[Point]:
    """Hamiltonian (s, t)-path of an R/L/C (or O) region meeting ``demands``."""
    s, t = tuple(s), tuple(t)
    res = _hp(region, s, t, tuple(demands))
    if res is None:
        raise SolveFailure(f"no construction for HP{region} {s}->{t} {list(demands)}")
    if trace is not None:
        trace.append(f"HP {region} {s}->{t}")
    return list(res)


def region_hc(region: Region, demands=(), trace: list | None = None) -> list[Point]:
    """Hamiltonian cycle of a region meeting ``demands`` (flat demands ask for flat faces)."""
    res = _hc(region, tuple(demands))
    if res is None:
        raise SolveFailure(f"no construction for HC{region} {list(demands)}")
    if trace is not None:
        trace.append(f"HC {region}")
    return list(res)


# ---------------------------------------------------------------------------
# Paths
# ---------------------------------------------------------------------------

@lru_cache(maxsize=100_000)
def _hp(region: Region, s: Point, t: Point, demands: tuple):
    if s not in region or t not in region:
        return None
    if s == t:
        return (s,) if len(region) == 1 else None
    if _is_rect(region):
        try:
            return tuple(rect_hp(_box(region), s, t, demands))
        except SolveFailure:
            return None
    if len(region) <= EXACT_MAX:
        res = _exact_path(region, s, t, demands)
        return None if res is None else tuple(res)
    for ax, c in _cut_lines(region, (s, t)):
        parts = _pieces(region, ax, c)
        if parts is None:
            continue
        res = _plan_path(region, s, t, demands, ax, c, *parts)
        if res is not None and satisfied(res, demands):
            return tuple(res)
    if len(region) <= FALLBACK_MAX:
        res = _exact_path(region, s, t, demands, budget=20_000_000)
        return None if res is None else tuple(res)
    return None


def _plan_path(region, s, t, demands, ax, c, A, B):
    asg = _assign(demands, A, B)
    if asg is None:
        return None
    dA, dB, straddle = asg
    if s in B and t in A:
        res = _plan_path(region, t, s, demands, ax, c, A, B)
        return None if res is None else res[::-1]
    if s in A and t in B:
        return _split(A, B, s, t, dA, dB, straddle, ax, c)
    if straddle:
        return None
    runs = _shared_runs(A, B, ax, c)
    if s in B:
        return _absorb(B, A, s, t, dB, dA, ax, c + 1, c, runs)
    return _absorb(A, B, s, t, dA, dB, ax, c, c + 1, runs)


def _cross_pairs(A: Region, B: Region, axis: str, c: int) -> list[tuple[Point, Point]]:
    """Every adjacent pair (p, q), p in A on the cut line and q in B just across, by position."""
    if axis == "vertical":
        lo, hi = max(A.y0, B.y0) - 1, min(A.y1, B.y1) + 1
    else:
        lo, hi = max(A.x0, B.x0) - 1, min(A.x1, B.x1) + 1
    out = []
    for v in range(lo, hi + 1):
        p = _pt(axis, c, v)
        if p not in A:
            continue
        for dv in (0, -1, 1):
            q = _pt(axis, c + 1, v + dv)
            if q in B:
                out.append((p, q))
    return out


def _split(A, B, s, t, dA, dB, straddle, ax, c):
    if len(straddle) > 1:
        return None
    pairs = _cross_pairs(A, B, ax, c)
    if straddle:
        pairs = [pq for pq in pairs if _crossing_hits(straddle[0], *pq)]
    if not pairs:
        return None
    k = 1 if ax == "vertical" else 0
    vs = [p[k] for p, _ in pairs]
    keys = [(min(vs) + max(vs)) // 2, s[k], t[k], min(vs), max(vs)]
    rank = {}
    for i, (p, q) in enumerate(pairs):
        d = min(abs(p[k] - v) for v in keys)
        rank[(p, q)] = (d, abs(q[k] - p[k]), i)
    pairs.sort(key=rank.__getitem__)
    for p, q in pairs[:24]:
        if not (_ok(A, s, p) and _ok(B, q, t)):
            continue
        pa = _hp(A, s, p, tuple(dA))
        if pa is None:
            continue
        pb = _hp(B, q, t, tuple(dB))
        if pb is None:
            continue
        return list(pa) + list(pb)
    return None


def _absorb(A, B, s, t, dA, dB, ax, c_a, c_b, runs):
    """Both endpoints in A: HP(A) with an edge facing B, plus a cycle or a tiny detour through B."""
    if not runs or not _ok(A, s, t):
        return None
    line = _line(ax)
    if len(B) <= 2:
        return _absorb_tiny(A, B, s, t, dA, ax, c_a)
    if not _may_cycle(B):
        return None
    for lo, hi in sorted(runs, key=lambda r: r[0] - r[1]):
        if hi - lo < 1:
            continue
        pa = _hp(A, s, t, tuple(dA) + (Demand(line, c_a, lo, hi),))
        if pa is None:
            continue
        cb = _hc(B, tuple(dB) + (Demand(line, c_b, lo, hi, True),))
        if cb is None:
            continue
        try:
            return splice_on_line(list(pa), list(cb), line, c_a, c_b, lo, hi)
        except SolveFailure:
            continue
    return None


def _absorb_tiny(A, B, s, t, dA, ax, c_a):
    """Absorb one or two vertices of B between the ends of a path edge on the facing line."""
    cells = list(B.cells())
    if len(cells) == 2 and not adjacent(*cells):
        return None
    k = 1 if ax == "vertical" else 0
    lo = min(p[k] for p in cells) - 1
    hi = max(p[k] for p in cells) + 1
    pa = _hp(A, s, t, tuple(dA) + (Demand(_line(ax), c_a, lo, hi),))
    if pa is None:
        return None
    pa = list(pa)
    for i in range(len(pa) - 1):
        u, v = pa[i], pa[i + 1]
        if len(cells) == 1:
            if adjacent(u, cells[0]) and adjacent(v, cells[0]):
                return pa[: i + 1] + cells + pa[i + 1:]
        else:
            for x, y in (cells, cells[::-1]):
                if adjacent(u, x) and adjacent(v, y):
                    return pa[: i + 1] + [x, y] + pa[i + 1:]
    return None


# ---------------------------------------------------------------------------
# Cycles
# ---------------------------------------------------------------------------

@lru_cache(maxsize=100_000)
def _hc(region: Region, demands: tuple):
    if len(region) < 4 or not _may_cycle(region):
        return None
    if _is_rect(region):
        for concave in "TBLR":
            try:
                cyc = rect_hc(_box(region), concave)
            except SolveFailure:
                continue
            if satisfied(cyc, demands, closed=True):
                return tuple(cyc)
        if len(region) > FALLBACK_MAX:
            return None
    if len(region) <= EXACT_MAX:
        res = _exact_cycle(region, demands)
        return None if res is None else tuple(res)
    for ax, c in _cut_lines(region):
        parts = _pieces(region, ax, c)
        if parts is None:
            continue
        res = _plan_cycle(demands, ax, c, *parts)
        if res is not None and satisfied(res, demands, closed=True):
            return tuple(res)
    if len(region) <= FALLBACK_MAX:
        res = _exact_cycle(region, demands, budget=20_000_000)
        return None if res is None else tuple(res)
    return None


def _plan_cycle(demands, ax, c, A, B):
    asg = _assign(demands, A, B)
    if asg is None:
        return None
    dA, dB, straddle = asg
    if straddle:
        return None
    runs = [r for r in _shared_runs(A, B, ax, c) if r[1] > r[0]]
    line = _line(ax)
    for lo, hi in sorted(runs, key=lambda r: r[0] - r[1]):
        # two cycles, flat face of one toward the other
        if len(A) >= 4 and len(B) >= 4 and _may_cycle(A) and _may_cycle(B):
            for first in (0, 1):
                ca = _hc(A, tuple(dA) + (Demand(line, c, lo, hi, first == 0),))
                cb = _hc(B, tuple(dB) + (Demand(line, c + 1, lo, hi, first == 1),))
                if ca is None or cb is None:
                    continue
                try:
                    return splice_on_line(list(ca), list(cb), line, c, c + 1, lo, hi, closed=True)
                except SolveFailure:
                    continue
    # path through A, back through B
    pairs = _cross_pairs(A, B, ax, c)
    ends = sorted(set(range(min(4, len(pairs)))) | set(range(max(0, len(pairs) - 4), len(pairs))))
    combos = [(pairs[i], pairs[j]) for i in ends for j in ends if i < j]
    combos.sort(key=lambda pq: -abs(pairs.index(pq[1]) - pairs.index(pq[0])))
    tried = 0
    for (p1, q1), (p2, q2) in combos:
        if p1 == p2 or q1 == q2 or tried >= 12:
            continue
        tried += 1
        if not (_ok(A, p1, p2) and _ok(B, q2, q1)):
            continue
        pa = _hp(A, p1, p2, tuple(dA))
        pb = _hp(B, q2, q1, tuple(dB)) if pa is not None else None
        if pb is not None:
            return list(pa) + list(pb)
    return None


def hp_across(region, s: Point, t: Point, axis: str, cut: int, demands=()) -> list[Point] | None:
    """Hamiltonian (s, t)-path assembled from the separation at one prescribed line, or None."""
    parts = _pieces(region, axis, cut)
    if parts is None:
        return None
    demands = tuple(demands)
    res = _plan_path(region, tuple(s), tuple(t), demands, axis, cut, *parts)
    if res is None or not satisfied(res, demands):
        return None
    return list(res)


def clear_caches() -> None:
    """Drop memoized sub-solutions (used by benchmarks to time cold runs)."""
    _hp.cache_clear()
    _hc.cache_clear()
