"""Exact ground truth for small instances.

Two independent searches are provided: a bitmask dynamic program over
(visited set, end vertex) and a depth-first search with reachability pruning.
Both run under numba; neither shares code with the constructive solvers.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterator

import numpy as np
from numba import njit

from .grid import NEIGHBOR_OFFSETS, GridError, GridPoint, PathSeq, Point, Region, ShapeSpec

DP_CAP = 24


def oracle_cap() -> int:
    """Vertex cap of the depth-first oracle (environment override SOLVER_ORACLE_CAP)."""
    try:
        return int(os.environ.get("SOLVER_ORACLE_CAP", "22"))
    except ValueError:
        return 22


class OracleError(GridError):
    pass


def _cells_of(shape: ShapeSpec | Region) -> list[Point]:
    region = shape.region() if isinstance(shape, ShapeSpec) else shape
    return list(region.cells())


def adjacency_masks(cells: list[Point]) -> tuple[dict[Point, int], np.ndarray, np.ndarray]:
    """Index map, neighbor bitmasks, and ordered neighbor table (E,W,S,N,SE,NW,SW,NE; -1 padded)."""
    idx = {tuple(p): i for i, p in enumerate(cells)}
    masks = np.zeros(len(cells), dtype=np.int64)
    table = -np.ones((len(cells), 8), dtype=np.int64)
    for (x, y), i in idx.items():
        for slot, (dx, dy) in enumerate(NEIGHBOR_OFFSETS):
            j = idx.get((x + dx, y + dy))
            if j is not None:
                masks[i] |= np.int64(1) << np.int64(j)
                table[i, slot] = j
    return idx, masks, table


# ---------------------------------------------------------------------------
# Bitmask dynamic program
# ---------------------------------------------------------------------------

@njit(cache=True)
def _dp_longest_from(adj, s):
    n = adj.shape[0]
    full = np.int64(1) << np.int64(n)
    ends = np.zeros(full, dtype=np.int32)
    ends[np.int64(1) << np.int64(s)] = np.int32(1) << np.int32(s)
    best = np.zeros(n, dtype=np.int32)
    for mask in range(full):
        e = ends[mask]
        if e == 0:
            continue
        cnt = 0
        mm = mask
        while mm:
            mm &= mm - 1
            cnt += 1
        ee = e
        while ee:
            low = ee & -ee
            v = 0
            while (np.int32(1) << np.int32(v)) != low:
                v += 1
            if best[v] < cnt:
                best[v] = cnt
            ee ^= low
        for v in range(n):
            bit = np.int64(1) << np.int64(v)
            if mask & bit:
                continue
            if adj[v] & e:
                ends[mask | bit] |= np.int32(1) << np.int32(v)
    return best


def dp_longest_lengths(shape: ShapeSpec | Region, s: Point) -> dict[GridPoint, int]:
    """Longest simple (s, t)-path vertex counts for every t (0 when unreachable; 1 for t = s)."""
    cells = _cells_of(shape)
    if len(cells) > DP_CAP:
        raise OracleError("too-large", f"{len(cells)} > {DP_CAP}")
    idx, masks, _ = adjacency_masks(cells)
    if tuple(s) not in idx:
        raise OracleError("point-not-in-shape", str(tuple(s)))
    best = _dp_longest_from(masks.astype(np.int64), idx[tuple(s)])
    return {GridPoint(*p): int(best[i]) for p, i in idx.items()}


def brute_hamiltonian_exists(shape: ShapeSpec | Region, s: Point, t: Point) -> bool:
    """Hamiltonian (s, t)-path existence by the bitmask program (at most 24 vertices)."""
    cells = _cells_of(shape)
    if tuple(s) == tuple(t):
        raise OracleError("identical-points")
    return dp_longest_lengths(shape, s)[GridPoint(*t)] == len(cells)


# ---------------------------------------------------------------------------
# Depth-first search with reachability pruning
# ---------------------------------------------------------------------------

@njit(cache=True)
def _flood(adj, start, allowed):
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
def _popcount(x):
    c = 0
    while x:
        x &= x - 1
        c += 1
    return c


@njit(cache=True)
def _dfs_longest(adj, table, s, t, budget):
    n = adj.shape[0]
    full = (np.int64(1) << np.int64(n)) - 1
    path = np.zeros(n, dtype=np.int64)
    slot = np.zeros(n, dtype=np.int64)
    best_path = np.zeros(n, dtype=np.int64)
    best = 0
    depth = 0
    path[0] = s
    slot[0] = 0
    visited = np.int64(1) << np.int64(s)
    steps = 0
    tbit = np.int64(1) << np.int64(t)
    while depth >= 0:
        steps += 1
        if budget > 0 and steps > budget:
            return -1, best_path, best
        v = path[depth]
        if v == t:
            if depth + 1 > best:
                best = depth + 1
                for i in range(depth + 1):
                    best_path[i] = path[i]
                if best == n:
                    return best, best_path, best
            visited &= ~(np.int64(1) << np.int64(v))
            depth -= 1
            continue
        if slot[depth] == 0:
            # bound: everything still reachable from v, plus the prefix
            reach = _flood(adj, v, (full & ~visited) | (np.int64(1) << np.int64(v)))
            if not (reach & tbit) or depth + _popcount(reach) <= best:
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
    return best, best_path, best


def brute_longest_path(shape: ShapeSpec | Region, s: Point, t: Point, budget: int = 0,
                       cap: int | None = None) -> tuple[int, PathSeq]:
    """Exact longest simple (s, t)-path by pruned depth-first search.

    Returns (vertex count, witness); the witness is the first maximum met in
    the fixed neighbor order.  ``budget`` bounds the number of search steps
    (0 = unlimited); exhausting it raises instead of returning a guess.
    """
    cells = _cells_of(shape)
    cap = oracle_cap() if cap is None else cap
    if len(cells) > min(cap, 62):
        raise OracleError("too-large", f"{len(cells)} vertices exceeds cap {cap}")
    if tuple(s) == tuple(t):
        raise OracleError("identical-points")
    idx, masks, table = adjacency_masks(cells)
    for p in (s, t):
        if tuple(p) not in idx:
            raise OracleError("point-not-in-shape", str(tuple(p)))
    status, bp, best = _dfs_longest(masks, table, idx[tuple(s)], idx[tuple(t)], int(budget))
    if status < 0:
        raise OracleError("budget-exhausted", f"after {budget} steps")
    if best == 0:
        raise OracleError("unreachable")
    return best, PathSeq.of(cells[int(i)] for i in bp[:best])


# ---------------------------------------------------------------------------
# Instance enumeration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class InstanceFilter:
    max_vertices: int = 16
    max_m: int = 24
    max_n: int = 24
    families: tuple[str, ...] = ("O",)

    def __post_init__(self) -> None:
        if self.max_vertices < 4:
            raise GridError("invalid-filter", "max_vertices must be at least 4")


def enumerate_specs(flt: InstanceFilter) -> Iterator[ShapeSpec]:
    mv, M, N = flt.max_vertices, flt.max_m, flt.max_n
    for fam in ("R", "L", "C", "O"):
        if fam not in flt.families:
            continue
        if fam == "R":
            for m in range(1, M + 1):
                for n in range(1, N + 1):
                    if 2 <= m * n <= mv:
                        yield ShapeSpec.rect(m, n)
        elif fam == "L":
            for m in range(2, M + 1):
                for n in range(2, N + 1):
                    for k in range(1, m):
                        for l in range(1, n):
                            if m * n - k * l <= mv:
                                yield ShapeSpec.lshape(m, n, k, l)
        elif fam == "C":
            for m in range(2, M + 1):
                for n in range(3, N + 1):
                    for k in range(1, m):
                        for l in range(1, n - 1):
                            for c in range(1, n - l):
                                if m * n - k * l <= mv:
                                    yield ShapeSpec.cshape(m, n, k, l, c, n - l - c)
        else:
            for m in range(3, M + 1):
                for n in range(3, N + 1):
                    for k in range(1, m - 1):
                        for l in range(1, n - 1):
                            if m * n - k * l > mv:
                                continue
                            for a in range(1, m - k):
                                for c in range(1, n - l):
                                    yield ShapeSpec.oshape(m, n, k, l, a, m - a - k, c, n - c - l)


def enumerate_instances(flt: InstanceFilter) -> Iterator[tuple[ShapeSpec, GridPoint, GridPoint]]:
    """Every spec in range, then every unordered endpoint pair with s < t lexicographically."""
    for spec in enumerate_specs(flt):
        cells = sorted(spec.cells())
        for i, s in enumerate(cells):
            for t in cells[i + 1:]:
                yield spec, s, t
