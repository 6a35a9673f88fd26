"""Longest (s, t)-paths in R/L/C pieces by structural reduction.

A simple (s, t)-path can only use the blocks on the s-t route of the
block-cut tree, so the problem splits at every cut vertex on that route.
Inside a 2-connected block one of three things happens:

* the block is a catalog piece with no forbidden condition, so a Hamiltonian
  path exists and the separation engine builds it (patchworks, boxes minus
  several blocks, are simply offered to the engine first);
* {u, v} separates the block, so the path lives in one side plus u and v;
* otherwise one endpoint is stepped off (u, then the best neighbour of u).

Small leftovers go to exact search.  Every step is exact, so the result is a
longest path whenever the reduction terminates; when it cannot, a
``SolveFailure`` names the piece that stayed out of reach.
"""
from __future__ import annotations

import networkx as nx

from .conditions import rlc_conditions
from .engine import region_hp
from .exact import BudgetExceeded, exact_longest_cells
from .grid import GridError, Patchwork, Point, Region
from .rect import EXACT_MAX, SolveFailure

_HALF_OFFSETS = ((1, 0), (0, 1), (1, 1), (1, -1))
STEP_DEPTH = 3


def recognize(cells) -> Region | Patchwork | None:
    """The region or patchwork whose cells are exactly ``cells`` (None when disconnected)."""
    try:
        return Patchwork.from_cells(cells)
    except GridError:
        return None


def _graph(cells) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(cells)
    for x, y in cells:
        for dx, dy in _HALF_OFFSETS:
            q = (x + dx, y + dy)
            if q in cells:
                g.add_edge((x, y), q)
    return g


def _block_route(g: nx.Graph, s: Point, t: Point) -> list[tuple[frozenset, Point, Point]]:
    """Blocks met by every (s, t)-path, in order, each with its entry and exit vertex."""
    cuts = set(nx.articulation_points(g))
    if not cuts:
        return [(frozenset(g.nodes), s, t)]
    blocks = [frozenset(b) for b in nx.biconnected_components(g)]
    tree = nx.Graph()
    home = {}
    for i, b in enumerate(blocks):
        tree.add_node(("B", i))
        for v in b & cuts:
            tree.add_edge(("B", i), ("C", v))
        for p in (s, t):
            if p in b and p not in cuts:
                home[p] = ("B", i)
    ends = [("C", p) if p in cuts else home[p] for p in (s, t)]
    route = nx.shortest_path(tree, *ends)
    out = []
    for j, node in enumerate(route):
        if node[0] != "B":
            continue
        entry = route[j - 1][1] if j > 0 else s
        exit_ = route[j + 1][1] if j + 1 < len(route) else t
        out.append((blocks[node[1]], entry, exit_))
    return out


class LongestSolver:
    """Memoizing reducer; one instance per top-level query keeps the memo bounded."""

    def __init__(self, exact_max: int = EXACT_MAX, step_depth: int = STEP_DEPTH):
        self.exact_max = exact_max
        self.step_depth = step_depth
        self.memo: dict = {}

    def solve(self, cells, s: Point, t: Point) -> list[Point]:
        return self._path(frozenset(cells), tuple(s), tuple(t), 0)

    def _path(self, cells: frozenset, s: Point, t: Point, depth: int) -> list[Point]:
        if s == t:
            return [s]
        key = (cells, s, t)
        if key not in self.memo:
            self.memo[key] = self._compute(cells, s, t, depth)
        return self.memo[key]

    def _hamiltonian(self, cells, s, t):
        region = recognize(cells)
        if region is None or region.family == "O":
            return None
        if isinstance(region, Region) and rlc_conditions(region, s, t):
            return None
        try:
            return region_hp(region, s, t)
        except SolveFailure:
            return None

    def _compute(self, cells, s, t, depth):
        res = self._hamiltonian(cells, s, t)
        if res is not None:
            return res
        if len(cells) <= self.exact_max:
            try:
                return exact_longest_cells(cells, s, t)
            except BudgetExceeded:
                pass
        g = _graph(cells)
        comp = nx.node_connected_component(g, s)
        if t not in comp:
            raise SolveFailure(f"{s} and {t} are not connected")
        if len(comp) < len(cells):
            return self._path(frozenset(comp), s, t, depth)
        route = _block_route(g, s, t)
        if len(route) > 1 or len(route[0][0]) < len(cells):
            out: list[Point] = []
            for block, u, v in route:
                seg = self._path(block, u, v, depth)
                out += seg if not out else seg[1:]
            return out
        return self._inside_block(g, cells, s, t, depth)

    def _inside_block(self, g, cells, s, t, depth):
        if len(cells) == 2:
            return [s, t]
        rest = g.subgraph(cells - {s, t})
        sides = list(nx.connected_components(rest))
        if len(sides) > 1:
            best = None
            for side in sides:
                cand = self._path(frozenset(side) | {s, t}, s, t, depth)
                if best is None or len(cand) > len(best):
                    best = cand
            return best
        if depth >= self.step_depth:
            raise SolveFailure(f"longest path out of reach on a {len(cells)}-cell block, {s}->{t}")
        failure = None
        for end, other in ((s, t), (t, s)):
            try:
                best = self._step(g, cells, end, other, depth)
            except SolveFailure as exc:
                failure = exc
                continue
            return best if end == s else best[::-1]
        raise failure

    def _step(self, g, cells, end, other, depth):
        """end followed by the best path from one of its neighbours."""
        smaller = cells - {end}
        best = None
        for nxt in sorted(g.neighbors(end)):
            cand = [end, other] if nxt == other else [end] + self._path(smaller, nxt, other, depth + 1)
            if best is None or len(cand) > len(best):
                best = cand
        return best


def longest_path(cells, s: Point, t: Point, exact_max: int = EXACT_MAX) -> list[Point]:
    """A longest simple (s, t)-path in the king-move graph on ``cells``."""
    return LongestSolver(exact_max).solve(cells, s, t)
