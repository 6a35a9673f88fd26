"""Exact search for small pieces: Hamiltonian paths and cycles under edge demands, longest paths.

This is the fallback the constructive solvers lean on below a vertex
threshold.  Demands are enforced as a post-filter: the search keeps
enumerating Hamiltonian paths until one contains an edge from every demanded
group, or the space (or the step budget) is exhausted.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from numba import njit

from .grid import NEIGHBOR_OFFSETS, Point, Region

DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class Demand:
    """Require an edge lying on a grid line inside a coordinate range.

    axis "x": a vertical line x = coord, the edge's rows within [lo, hi];
    axis "y": a horizontal line y = coord, the edge's columns within [lo, hi].
    With ``flat`` every edge of that segment is required instead of one.
    """

    axis: str
    coord: int
    lo: int
    hi: int
    flat: bool = False

    def hit(self, u: Point, v: Point) -> bool:
        if self.axis == "x":
            return u[0] == v[0] == self.coord and self.lo <= u[1] <= self.hi and self.lo <= v[1] <= self.hi
        return u[1] == v[1] == self.coord and self.lo <= u[0] <= self.hi and self.lo <= v[0] <= self.hi

    def segment_edges(self) -> list[tuple[Point, Point]]:
        if self.axis == "x":
            return [((self.coord, y), (self.coord, y + 1)) for y in range(self.lo, self.hi)]
        return [((x, self.coord), (x + 1, self.coord)) for x in range(self.lo, self.hi)]

    def shifted(self, dx: int, dy: int) -> "Demand":
        if self.axis == "x":
            return Demand("x", self.coord + dx, self.lo + dy, self.hi + dy, self.flat)
        return Demand("y", self.coord + dy, self.lo + dx, self.hi + dx, self.flat)

    def clip(self, region: Region) -> "Demand | None":
        """Restrict to the part of the segment inside ``region``'s box, or None when too short."""
        if self.axis == "x":
            if not region.x0 <= self.coord <= region.x1:
                return None
            lo, hi = max(self.lo, region.y0), min(self.hi, region.y1)
        else:
            if not region.y0 <= self.coord <= region.y1:
                return None
            lo, hi = max(self.lo, region.x0), min(self.hi, region.x1)
        if hi - lo < 1:
            return None
        return Demand(self.axis, self.coord, lo, hi, self.flat)


def satisfied(points: list, demands, closed: bool = False) -> bool:
    """Whether a point sequence meets every demand."""
    if not demands:
        return True
    n = len(points)
    pending = []
    for d in demands:
        if d.flat:
            pending.append((d, {frozenset(e) for e in d.segment_edges()}))
        else:
            pending.append((d, None))
    found = [False] * len(pending)
    flat_left = [set(req) if req is not None else None for _, req in pending]
    rng = range(n if closed else n - 1)
    for i in rng:
        u, v = points[i], points[(i + 1) % n]
        for j, (d, req) in enumerate(pending):
            if req is None:
                if not found[j] and d.hit(u, v):
                    found[j] = True
            else:
                flat_left[j].discard(frozenset((tuple(u), tuple(v))))
    for j, (d, req) in enumerate(pending):
        if req is None and not found[j]:
            return False
        if req is not None and flat_left[j]:
            return False
    return True


# ---------------------------------------------------------------------------
# numba kernels
# ---------------------------------------------------------------------------

@njit(cache=True)
def _reach(adj, start, allowed):
    seen = np.int64(1) << np.int64(start)
    frontier = seen
    while frontier:
        nxt = np.int64(0)
        f = frontier
        while f:
            low = f & -f
            v = 0
            while (np.int64(1) << np.int64(v)) != low:
                v += 1
            nxt |= adj[v]
            f ^= low
        nxt &= allowed & ~seen
        seen |= nxt
        frontier = nxt
    return seen


@njit(cache=True)
def _demand_alive(acc, need, gu, gv, gid, visited, v, s, cycle):
    """Whether every unmet demand group still has an edge the path could use."""
    missing = need & ~acc
    if not missing:
        return True
    ok = np.int64(0)
    for e in range(gu.shape[0]):
        g = np.int64(1) << np.int64(gid[e])
        if not (missing & g) or (ok & g):
            continue
        a = gu[e]
        b = gv[e]
        fa = not (visited & (np.int64(1) << np.int64(a))) or a == v or (cycle and a == s)
        fb = not (visited & (np.int64(1) << np.int64(b))) or b == v or (cycle and b == s)
        if fa and fb:
            ok |= g
    return (ok & missing) == missing


@njit(cache=True)
def _hp_search(adj, table, s, t, groups, need, gu, gv, gid, cycle, budget):
    """Enumerate Hamiltonian paths from s (to t, or back next to s when ``cycle``) until the
    group requirement is met.  Returns (status, path): 1 found, 0 exhausted, -1 budget."""
    n = adj.shape[0]
    full = (np.int64(1) << np.int64(n)) - 1
    path = np.zeros(n, dtype=np.int64)
    slot = np.zeros(n, dtype=np.int64)
    acc = np.zeros(n, dtype=np.int64)
    sbit = np.int64(1) << np.int64(s)
    tbit = np.int64(0) if cycle else (np.int64(1) << np.int64(t))
    depth = 0
    path[0] = s
    visited = sbit
    acc[0] = 0
    steps = 0
    while depth >= 0:
        steps += 1
        if budget > 0 and steps > budget:
            return -1, path
        v = path[depth]
        if depth == n - 1:
            got = acc[depth]
            ok = True
            if cycle:
                if not (adj[v] & sbit):
                    ok = False
                else:
                    got |= groups[v, s]
            elif v != t:
                ok = False
            if ok and (got & need) == need:
                return 1, path
            visited &= ~(np.int64(1) << np.int64(v))
            depth -= 1
            continue
        if slot[depth] == 0 and depth > 0:
            rest = full & ~visited
            reach = _reach(adj, v, rest | (np.int64(1) << np.int64(v)))
            if (reach & rest) != rest:
                visited &= ~(np.int64(1) << np.int64(v))
                depth -= 1
                continue
            if cycle and n > 2 and not (_reach(adj, s, rest | sbit) & rest):
                visited &= ~(np.int64(1) << np.int64(v))
                depth -= 1
                continue
            if not _demand_alive(acc[depth], need, gu, gv, gid, visited, v, s, cycle):
                visited &= ~(np.int64(1) << np.int64(v))
                depth -= 1
                continue
        advanced = False
        while slot[depth] < 8:
            w = table[v, slot[depth]]
            slot[depth] += 1
            if w < 0:
                continue
            bit = np.int64(1) << np.int64(w)
            if visited & bit:
                continue
            if (bit & tbit) and depth + 2 < n:
                continue
            depth += 1
            path[depth] = w
            slot[depth] = 0
            acc[depth] = acc[depth - 1] | groups[v, w]
            visited |= bit
            advanced = True
            break
        if not advanced:
            if depth == 0:
                break
            visited &= ~(np.int64(1) << np.int64(v))
            depth -= 1
    return 0, path


@njit(cache=True)
def _longest_search(adj, table, s, t, budget):
    n = adj.shape[0]
    full = (np.int64(1) << np.int64(n)) - 1
    path = np.zeros(n, dtype=np.int64)
    slot = np.zeros(n, dtype=np.int64)
    best_path = np.zeros(n, dtype=np.int64)
    best = 0
    depth = 0
    path[0] = s
    visited = np.int64(1) << np.int64(s)
    tbit = np.int64(1) << np.int64(t)
    steps = 0
    while depth >= 0:
        steps += 1
        if budget > 0 and steps > budget:
            return -1, best_path
        v = path[depth]
        if v == t:
            if depth + 1 > best:
                best = depth + 1
                best_path[:] = path
                if best == n:
                    return best, best_path
            visited &= ~tbit
            depth -= 1
            continue
        if slot[depth] == 0:
            reach = _reach(adj, v, (full & ~visited) | (np.int64(1) << np.int64(v)))
            cnt = 0
            r = reach
            while r:
                r &= r - 1
                cnt += 1
            if not (reach & tbit) or depth + cnt <= best:
                visited &= ~(np.int64(1) << np.int64(v))
                depth -= 1
                continue
        advanced = False
        while slot[depth] < 8:
            w = table[v, slot[depth]]
            slot[depth] += 1
            if w < 0:
                continue
            bit = np.int64(1) << np.int64(w)
            if visited & bit:
                continue
            depth += 1
            path[depth] = w
            slot[depth] = 0
            visited |= bit
            advanced = True
            break
        if not advanced:
            visited &= ~(np.int64(1) << np.int64(v))
            depth -= 1
    return best, best_path


# ---------------------------------------------------------------------------
# Python front end (local coordinates, memoized)
# ---------------------------------------------------------------------------

def _tables(cells):
    idx = {p: i for i, p in enumerate(cells)}
    n = len(cells)
    adj = np.zeros(n, dtype=np.int64)
    table = -np.ones((n, 8), dtype=np.int64)
    for (x, y), i in idx.items():
        for k, (dx, dy) in enumerate(NEIGHBOR_OFFSETS):
            j = idx.get((x + dx, y + dy))
            if j is not None:
                adj[i] |= np.int64(1) << np.int64(j)
                table[i, k] = j
    return idx, adj, table


def _groups(cells, idx, demands):
    n = len(cells)
    groups = np.zeros((n, n), dtype=np.int64)
    eu, ev, eg = [], [], []
    bit = 0
    for d in demands:
        edges = d.segment_edges() if d.flat else None
        if edges is None:
            for u in cells:
                for v in cells:
                    if u < v and d.hit(u, v) and abs(u[0] - v[0]) <= 1 and abs(u[1] - v[1]) <= 1:
                        groups[idx[u], idx[v]] |= np.int64(1) << np.int64(bit)
                        groups[idx[v], idx[u]] |= np.int64(1) << np.int64(bit)
                        eu.append(idx[u])
                        ev.append(idx[v])
                        eg.append(bit)
            bit += 1
        else:
            for u, v in edges:
                if u in idx and v in idx:
                    groups[idx[u], idx[v]] |= np.int64(1) << np.int64(bit)
                    groups[idx[v], idx[u]] |= np.int64(1) << np.int64(bit)
                    eu.append(idx[u])
                    ev.append(idx[v])
                    eg.append(bit)
                bit += 1
    need = (np.int64(1) << np.int64(bit)) - 1 if bit else np.int64(0)
    arr = lambda xs: np.array(xs, dtype=np.int64)  # noqa: E731
    return groups, need, (arr(eu), arr(ev), arr(eg))


class BudgetExceeded(RuntimeError):
    pass


@lru_cache(maxsize=200_000)
def _hp_local(region: Region, s, t, demands: tuple, cycle: bool, budget: int):
    cells = list(region.cells())
    if cycle and len(cells) < 4:
        return None
    idx, adj, table = _tables(cells)
    groups, need, (gu, gv, gid) = _groups(cells, idx, demands)
    if cycle:
        status, arr = _hp_search(adj, table, 0, -1, groups, need, gu, gv, gid, True, budget)
    else:
        if len(cells) == 1:
            return (cells[0],) if s == t and not demands else None
        status, arr = _hp_search(adj, table, idx[s], idx[t], groups, need, gu, gv, gid, False, budget)
    if status < 0:
        raise BudgetExceeded(f"exact search budget exhausted on {region}")
    if status == 0:
        return None
    return tuple(cells[int(i)] for i in arr)


def _localize(region: Region, demands):
    loc, dx, dy = region.local()
    return loc, dx, dy, tuple(d.shifted(-dx, -dy) for d in demands)


def exact_hp(region: Region, s: Point, t: Point, demands=(), budget: int = DEFAULT_BUDGET) -> list | None:
    """A Hamiltonian (s, t)-path of ``region`` meeting ``demands``, or None."""
    loc, dx, dy, dem = _localize(region, demands)
    res = _hp_local(loc, (s[0] - dx, s[1] - dy), (t[0] - dx, t[1] - dy), dem, False, budget)
    return None if res is None else [(x + dx, y + dy) for x, y in res]


def exact_hc(region: Region, demands=(), budget: int = DEFAULT_BUDGET) -> list | None:
    """A Hamiltonian cycle of ``region`` meeting ``demands``, or None."""
    loc, dx, dy, dem = _localize(region, demands)
    res = _hp_local(loc, None, None, dem, True, budget)
    return None if res is None else [(x + dx, y + dy) for x, y in res]


@lru_cache(maxsize=200_000)
def _longest_local(region: Region, s, t, budget: int):
    cells = list(region.cells())
    idx, adj, table = _tables(cells)
    best, arr = _longest_search(adj, table, idx[s], idx[t], budget)
    if best < 0:
        raise BudgetExceeded(f"exact longest-path budget exhausted on {region}")
    return tuple(cells[int(i)] for i in arr[:best])


def exact_longest(region: Region, s: Point, t: Point, budget: int = 20 * DEFAULT_BUDGET) -> list:
    """A longest simple (s, t)-path of a small region."""
    loc, dx, dy = region.local()
    res = _longest_local(loc, (s[0] - dx, s[1] - dy), (t[0] - dx, t[1] - dy), budget)
    return [(x + dx, y + dy) for x, y in res]


@lru_cache(maxsize=200_000)
def _longest_cells(cells: tuple, s, t, budget: int):
    idx, adj, table = _tables(list(cells))
    best, arr = _longest_search(adj, table, idx[s], idx[t], budget)
    if best < 0:
        raise BudgetExceeded(f"exact longest-path budget exhausted on {len(cells)} cells")
    return tuple(cells[int(i)] for i in arr[:best])


def exact_longest_cells(cells, s: Point, t: Point, budget: int = 20 * DEFAULT_BUDGET) -> list:
    """A longest simple (s, t)-path inside an arbitrary set of at most 62 cells."""
    cells = sorted(cells)
    if len(cells) > 62:
        raise ValueError("too many cells for exact search")
    x0 = min(p[0] for p in cells) - 1
    y0 = min(p[1] for p in cells) - 1
    loc = tuple((x - x0, y - y0) for x, y in cells)
    res = _longest_cells(loc, (s[0] - x0, s[1] - y0), (t[0] - x0, t[1] - y0), budget)
    return [(x + x0, y + y0) for x, y in res]
