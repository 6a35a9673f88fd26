"""O-shapes: Hamiltonian cycle, Hamiltonian (s, t)-path, the bound Û and longest (s, t)-paths.

Every construction runs in a canonical view of the instance (a ``Frame``
from ``conditions``) and is mapped back at the end.  The case analysis is
kept as data.  A ``CaseRecord`` names its case, carries a guard on the
canonical view and produces plans:

* ``Cut``     separate at a prescribed line; the engine decides between a
              split (s and t on different sides) and an absorb (a Hamiltonian
              cycle of the far side merged through parallel edges);
* ``Chain``   explicit pieces solved in order, piece i ending at p and piece
              i + 1 starting at q with p ~ q; each joint lists its (p, q)
              options in the order the case prescribes;
* ``Absorb``  a Hamiltonian path of one piece with a Hamiltonian cycle of the
              rest merged in.

Plans are tried in order and the first valid result wins.  When no record
produces a path, the whole region goes to the separation engine and then to
exact search below ``FALLBACK_LIMIT`` vertices; both steps are logged as
discrepancies and show up in the trace.  Beyond that the solver raises
``ContractViolation`` naming the case that failed.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .conditions import Frame, Verdict, check_o_forbidden, classify_longest_case, frames, rlc_conditions
from .engine import hp_across, region_hc, region_hp
from .exact import BudgetExceeded, Demand, exact_hc, exact_hp, exact_longest_cells
from .grid import (GridError, GridPoint, Patchwork, PathSeq, Point, Region, ShapeSpec, adjacent,
                   o_family, validate_path)
from .longest import LongestSolver
from .rect import SolveFailure, splice_on_line

log = logging.getLogger(__name__)

FALLBACK_LIMIT = 24


class ContractViolation(GridError):
    """A construction that the case analysis guarantees did not come out; always a bug."""

    def __init__(self, case: str, message: str = ""):
        super().__init__("contract-violation", f"[{case}] {message}")
        self.case = case


@dataclass(frozen=True)
class TraceRecord:
    """One sub-solve: the piece (canonical coordinates), its endpoints, and its role in the case."""

    shape: str
    endpoints: tuple
    role: str

    def as_dict(self) -> dict:
        return {"shape": self.shape, "endpoints": [list(p) for p in self.endpoints], "role": self.role}


@dataclass(frozen=True)
class SolveResult:
    verdict: Verdict
    path: PathSeq | None
    bound: int
    subproblem_trace: tuple[TraceRecord, ...] = ()

    def as_dict(self) -> dict:
        return {
            "verdict": self.verdict.as_dict(),
            "bound": self.bound,
            "length": None if self.path is None else len(self.path),
            "path": None if self.path is None else self.path.as_list(),
            "trace": [r.as_dict() for r in self.subproblem_trace],
        }


# ---------------------------------------------------------------------------
# Pieces
# ---------------------------------------------------------------------------

def _describe(shape) -> str:
    if isinstance(shape, Region):
        views = shape.catalog_views()
        box = f"[{shape.x0}..{shape.x1}]x[{shape.y0}..{shape.y1}]"
        return f"{views[0][0].label()} at {box}" if views else repr(shape)
    return repr(shape)


def _sub(G: Region, x0: int, y0: int, x1: int, y1: int, *cutouts) -> Region | Patchwork | None:
    """The part of G inside a box, minus extra blocks; None when empty or disconnected."""
    holes = [G.hole] if G.hole else []
    holes += [h for h in cutouts if h[0] <= h[2] and h[1] <= h[3]]
    try:
        return Patchwork.make(max(x0, G.x0), max(y0, G.y0), min(x1, G.x1), min(y1, G.y1), holes)
    except GridError:
        return None


def _cols(G: Region, lo: int, hi: int):
    return _sub(G, lo, G.y0, hi, G.y1)


def _rows(G: Region, lo: int, hi: int):
    return _sub(G, G.x0, lo, G.x1, hi)


def _longest(shape, a: Point, b: Point) -> list[Point]:
    """Longest (a, b)-path inside a piece (exact; Hamiltonian shortcut when no condition fires)."""
    a, b = tuple(a), tuple(b)
    if a == b:
        return [a]
    if isinstance(shape, Region) and shape.family != "O" and not rlc_conditions(shape, a, b):
        try:
            return region_hp(shape, a, b)
        except SolveFailure:
            pass
    return LongestSolver().solve(frozenset(shape.cells()), a, b)


def _lhat(shape, a: Point, b: Point, memo: dict) -> int:
    """Length of a longest (a, b)-path in a piece, computed without building it when possible."""
    a, b = tuple(a), tuple(b)
    if shape is None or a not in shape or b not in shape:
        return -1
    if a == b:
        return 1
    key = (shape, a, b)
    if key not in memo:
        if isinstance(shape, Region) and shape.family != "O" and not rlc_conditions(shape, a, b):
            memo[key] = len(shape)
        else:
            memo[key] = len(_longest(shape, a, b))
    return memo[key]


# ---------------------------------------------------------------------------
# Plans
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Cut:
    axis: str
    coord: int


@dataclass(frozen=True)
class Chain:
    """Pieces visited in order from ``start`` to ``end``; ``joints[i]`` lists (p, q) options."""

    pieces: tuple
    joints: tuple
    start: Point
    end: Point
    modes: tuple = ()


@dataclass(frozen=True)
class Absorb:
    core: object
    rest: object


@dataclass(frozen=True)
class CaseRecord:
    name: str
    guard: Callable[[Frame], bool]
    plans: Callable[[Frame, Region], list]


def _solve_piece(shape, a: Point, b: Point, mode: str) -> list[Point] | None:
    if shape is None or a not in shape or b not in shape:
        return None
    if a == b:
        return [a] if (mode == "long" or len(shape) == 1) else None
    try:
        return _longest(shape, a, b) if mode == "long" else region_hp(shape, a, b)
    except SolveFailure:
        return None


def _run_chain(plan: Chain, trace: list, case: str) -> list[Point] | None:
    modes = plan.modes or ("hp",) * len(plan.pieces)
    for combo in itertools.product(*plan.joints):
        starts = [plan.start] + [q for _, q in combo]
        stops = [p for p, _ in combo] + [plan.end]
        if any(not adjacent(p, q) for p, q in combo):
            continue
        if any(piece is None or a not in piece or b not in piece
               for piece, a, b in zip(plan.pieces, starts, stops)):
            continue
        out: list[Point] = []
        parts = []
        for piece, a, b, mode in zip(plan.pieces, starts, stops, modes):
            seg = _solve_piece(piece, tuple(a), tuple(b), mode)
            if seg is None:
                break
            parts.append((piece, a, b, mode))
            out += seg
        else:
            for i, (piece, a, b, mode) in enumerate(parts):
                role = f"{case}: P{i + 1} {'longest' if mode == 'long' else 'HP'}"
                trace.append(TraceRecord(_describe(piece), (tuple(a), tuple(b)), role))
            return out
    return None


def _facing_runs(core, rest) -> Iterator[tuple[str, int, int, int, int]]:
    """Straight runs where a side line of ``core`` faces ``rest`` one step away, longest first."""
    found = []
    for axis, c_core, c_rest, lo, hi in (
        ("x", core.x1, core.x1 + 1, core.y0, core.y1),
        ("x", core.x0, core.x0 - 1, core.y0, core.y1),
        ("y", core.y1, core.y1 + 1, core.x0, core.x1),
        ("y", core.y0, core.y0 - 1, core.x0, core.x1),
    ):
        run = None
        for v in range(lo, hi + 2):
            a = (c_core, v) if axis == "x" else (v, c_core)
            b = (c_rest, v) if axis == "x" else (v, c_rest)
            if v <= hi and a in core and b in rest:
                run = [v, v] if run is None else [run[0], v]
                continue
            if run is not None and run[1] > run[0]:
                found.append((axis, c_core, c_rest, run[0], run[1]))
            run = None
    found.sort(key=lambda r: r[3] - r[4])
    return iter(found)


def _run_absorb(plan: Absorb, s: Point, t: Point, trace: list, case: str) -> list[Point] | None:
    core, rest = plan.core, plan.rest
    if core is None or rest is None or s not in core or t not in core:
        return None
    for axis, c_core, c_rest, lo, hi in _facing_runs(core, rest):
        try:
            pa = region_hp(core, s, t, (Demand(axis, c_core, lo, hi),))
            cb = region_hc(rest, (Demand(axis, c_rest, lo, hi, True),))
            out = splice_on_line(pa, cb, axis, c_core, c_rest, lo, hi)
        except SolveFailure:
            continue
        trace.append(TraceRecord(_describe(core), (s, t), f"{case}: P1 HP"))
        trace.append(TraceRecord(_describe(rest), (), f"{case}: HC absorbed"))
        return out
    return None


def _run(plan, G: Region, s: Point, t: Point, trace: list, case: str) -> list[Point] | None:
    if isinstance(plan, Cut):
        res = hp_across(G, s, t, plan.axis, plan.coord)
        if res is not None:
            trace.append(TraceRecord(_describe(G), (s, t), f"{case}: separation {plan.axis} at {plan.coord}"))
        return res
    if isinstance(plan, Chain):
        res = _run_chain(plan, trace, case)
        if res is not None and tuple(plan.start) != tuple(s):
            res = res[::-1]
        return res
    return _run_absorb(plan, s, t, trace, case)


# ---------------------------------------------------------------------------
# Hamiltonian cycle
# ---------------------------------------------------------------------------

def o_hamiltonian_cycle(spec: ShapeSpec) -> PathSeq:
    """Hamiltonian cycle: HP of the left margin R(a, n) followed by HP of the C-shaped rest."""
    if spec.family != "O":
        raise GridError("wrong-shape-family", spec.label())
    G = spec.region()
    m, n, k, l, a, b, c, d = spec.params()
    plan = Chain((_cols(G, 1, a), _cols(G, a + 1, m)), ((((a, n), (a + 1, n)),),), (a, 1), (a + 1, 1))
    trace: list = []
    cyc = _run_chain(plan, trace, "HC")
    if cyc is None:
        log.warning("cycle construction fell back to the engine on %s", spec.label())
        try:
            cyc = region_hc(G)
        except SolveFailure:
            cyc = exact_hc(G) if len(G) <= FALLBACK_LIMIT else None
    if cyc is None:
        raise ContractViolation("HC", f"no Hamiltonian cycle built for {spec.label()}")
    out = PathSeq.of(cyc, closed=True)
    check = validate_path(spec, out)
    if not check or len(out) != spec.vertex_count():
        raise ContractViolation("HC", check.reason or "cycle does not cover the shape")
    return out


# ---------------------------------------------------------------------------
# Hamiltonian (s, t)-path: the case table
# ---------------------------------------------------------------------------

def _group(fr: Frame) -> int:
    """Endpoint group of a canonical view: 4 both left of the hole, 5 only s, 6 neither."""
    a = fr.spec.a
    if fr.s.x <= a and fr.t.x <= a:
        return 4
    if fr.s.x <= a:
        return 5
    return 6


def _bottom_joint(m1: int, n: int, s: Point):
    """p = (m1, n), or (m1, n - 1) when s sits there; q = (m1 + 1, n)."""
    opts = [((m1, n), (m1 + 1, n)), ((m1, n - 1), (m1 + 1, n))]
    return tuple(o for o in opts if o[0] != tuple(s)) or tuple(opts)


def _top_joint(m1: int, s: Point):
    """p = (m1, 1), or (m1, 2) when s sits there; q = (m1 + 1, 1)."""
    opts = [((m1, 1), (m1 + 1, 1)), ((m1, 2), (m1 + 1, 1))]
    return tuple(o for o in opts if o[0] != tuple(s)) or tuple(opts)


def _two(G, m1: int, s, t, joint) -> Chain:
    return Chain((_cols(G, 1, m1), _cols(G, m1 + 1, G.x1)), (joint,), s, t)


def _ring_chains(G: Region, s, t, m1: int) -> list:
    """Both endpoints in columns <= m1: split that block around them and go round through the rest.

    The endpoint blocks are cut at a row (or an L-step inside a row when the
    endpoints share it); the route leaves the lower block at the bottom, runs
    through the right part from bottom to top, and re-enters at the top.
    """
    n = G.y1
    right = _cols(G, m1 + 1, G.x1)
    plans = []
    for lo_pt, hi_pt in ((s, t), (t, s)):
        if lo_pt[1] < hi_pt[1]:
            continue
        rows = {hi_pt[1], hi_pt[1] + 1} if lo_pt[1] > hi_pt[1] else {hi_pt[1]}
        for n1 in sorted(rows):
            if lo_pt[1] > hi_pt[1]:
                if not n1 < lo_pt[1]:
                    continue
                upper = _sub(G, 1, 1, m1, n1)
                lower = _sub(G, 1, n1 + 1, m1, n)
            else:
                # same row: the row is shared between the two blocks
                x_lo = lo_pt[0]
                upper = _sub(G, 1, 1, m1, n1, (x_lo, n1, x_lo, n1))
                lower = _sub(G, 1, n1, m1, n, (1, n1, x_lo - 1, n1), (x_lo + 1, n1, m1, n1))
            down = ((m1, n), (m1 + 1, n)), ((m1, n - 1), (m1 + 1, n))
            up = ((m1 + 1, 1), (m1, 1)), ((m1 + 1, 1), (m1, 2)), ((m1 + 1, 2), (m1, 1))
            plans.append(Chain((lower, right, upper), (down, up), lo_pt, hi_pt))
        # the mirror image: leave at the top, come back at the bottom
        rows = {lo_pt[1] - 1, lo_pt[1] - 2} if lo_pt[1] > hi_pt[1] else set()
        for n1 in sorted(rows, reverse=True):
            if not hi_pt[1] <= n1 or n1 < 1:
                continue
            upper = _sub(G, 1, 1, m1, n1)
            lower = _sub(G, 1, n1 + 1, m1, n)
            up = ((m1, 1), (m1 + 1, 1)), ((m1, 2), (m1 + 1, 1))
            down = ((m1 + 1, n), (m1, n)), ((m1 + 1, n), (m1, n - 1)), ((m1 + 1, n - 1), (m1, n))
            plans.append(Chain((upper, right, lower), (up, down), hi_pt, lo_pt))
    return plans


def _corner_chains(G: Region, s, t, m1: int) -> list:
    """One endpoint X at a corner of the column m1 (top or bottom): the rest of R1, then R2, then X."""
    n = G.y1
    plans = []
    for x, y in ((t, s), (s, t)):
        if tuple(x) == (m1, 1):
            joints = (_bottom_joint(m1, n, y), (((m1 + 1, 1), x),))
        elif tuple(x) == (m1, n):
            joints = (tuple(o for o in (((m1, 1), (m1 + 1, 1)), ((m1, 2), (m1 + 1, 1))) if o[0] != tuple(y)),
                      (((m1 + 1, n), x),))
        else:
            continue
        rest = _sub(G, 1, 1, m1, n, (x[0], x[1], x[0], x[1]))
        plans.append(Chain((rest, _cols(G, m1 + 1, G.x1), _sub(G, x[0], x[1], x[0], x[1])), joints, y, x))
    return plans


def _column_chains(G: Region, s, t, a: int) -> list:
    """Group-4 plan for a >= 3 with an endpoint on column a: R1 + lower column part, R2, upper column part."""
    n = G.y1
    plans = []
    for e, o in ((t, s), (s, t)):
        if e[0] != a:
            continue
        if o[0] == a and o[1] < e[1]:
            continue
        # e at the bottom of the column segment above it
        ra = _sub(G, 1, 1, a, n, (a, 1, a, e[1]))
        plans.append(Chain((ra, _cols(G, a + 1, G.x1), _sub(G, a, 1, a, e[1])),
                           (_bottom_joint(a, n, o), (((a + 1, 1), (a, 1)),)), o, e))
    for e, o in ((t, s), (s, t)):
        if e[0] != a:
            continue
        if o[0] == a and o[1] > e[1]:
            continue
        ra = _sub(G, 1, 1, a, n, (a, e[1], a, n))
        plans.append(Chain((ra, _cols(G, a + 1, G.x1), _sub(G, a, e[1], a, n)),
                           (_top_joint(a, o), (((a + 1, n), (a, n)),)), o, e))
    return plans


def _case_table_p_q(fr: Frame):
    """The four-way choice of p and q at m1 = a when all margins are at least two."""
    m, n, k, l, a, b, c, d = fr.spec.params()
    s, t = tuple(fr.s), tuple(fr.t)
    m1 = a
    if s != (m1, n) and t != (m1 + 1, n):
        return ((m1, n), (m1 + 1, n))
    if s == (m1, n) and t == (m1 + 1, n):
        return ((m1, 1), (m1 + 1, 1))
    if s != (m1, n) and t == (m1 + 1, n):
        return ((m1, n), (m1 + 1, n - 1))
    return ((m1, n - 1), (m1 + 1, n))


def _p(fr: Frame):
    return fr.spec.params()


def _l4_fam1(fr, G):
    return _ring_chains(G, fr.s, fr.t, fr.spec.a)


def _l4_a2_corner(fr, G):
    return _corner_chains(G, fr.s, fr.t, 2) + _ring_chains(G, fr.s, fr.t, 2)


def _l4_a2(fr, G):
    return _ring_chains(G, fr.s, fr.t, 2)


def _l4_absorb(fr, G):
    m, n, k, l, a, b, c, d = _p(fr)
    s, t = fr.s, fr.t
    plans: list = [Cut("vertical", a - 1)]
    plans += [Cut("horizontal", s.y - 1), Cut("horizontal", s.y)]
    if a - 1 == 2 and s.y == t.y and 2 <= s.y <= n - 1:
        n1 = s.y if s.y != n - 1 else s.y - 1
        core = _sub(G, 1, 1, 2, n1) if s.y <= n1 else _sub(G, 1, n1 + 1, 2, n)
        plans.append(Absorb(core, _sub(G, 1, 1, m, n, (1, 1, 2, n1) if s.y <= n1 else (1, n1 + 1, 2, n))))
    return plans


def _l4_column(fr, G):
    return _column_chains(G, fr.s, fr.t, fr.spec.a)


def _l5_bottom(m1_of):
    def plans(fr, G):
        m1 = m1_of(fr)
        return [_two(G, m1, fr.s, fr.t, _bottom_joint(m1, fr.spec.n, fr.s)), Cut("vertical", m1)]
    return plans


def _l5_top(fr, G):
    a = fr.spec.a
    return [_two(G, a, fr.s, fr.t, _top_joint(a, fr.s)), Cut("vertical", a)]


def _l5_strip(fr, G):
    """R2 = the row above the hole, R1 = everything else."""
    m, n, k, l, a, b, c, d = _p(fr)
    strip = (a + 1, 1, a + k, c)
    return [Chain((_sub(G, 1, 1, m, n, strip), _sub(G, *strip)), (_top_joint(a, fr.s),), fr.s, fr.t),
            Cut("vertical", a)]


def _l5_upper_block(n1_of):
    """R1 = columns <= a joined with the lower part, R2 = the block right of a above row n1."""
    def plans(fr, G):
        m, n, k, l, a, b, c, d = _p(fr)
        n1 = n1_of(fr)
        block = (a + 1, 1, m, n1)
        return [Chain((_sub(G, 1, 1, m, n, block), _sub(G, *block)), (_top_joint(a, fr.s),), fr.s, fr.t),
                Cut("vertical", a)]
    return plans


def _l5_cut_at_t(fr, G):
    return [Cut("vertical", fr.t.x), Cut("vertical", fr.spec.a)]


def _l5_beyond(fr, G):
    """t right of the hole with one row above and below it: the top strip is shared between both halves."""
    m, n, k, l, a, b, c, d = _p(fr)
    plans = _l5_top(fr, G)
    # left margin plus the first x - a cells above the hole, then everything else from the bottom row
    for x in range(a + 1, a + k):
        first = _sub(G, 1, 1, x, n, (a + 1, 2, x, n))
        second = _sub(G, a + 1, 1, m, n, (a + 1, 1, x, 1))
        plans.append(Chain((first, second), (_bottom_joint(a, n, fr.s),), fr.s, fr.t))
    return plans + [_two(G, a + k, fr.s, fr.t, _bottom_joint(a + k, n, fr.s)),
                             _two(G, a + k, fr.s, fr.t, _top_joint(a + k, fr.s)),
                             Cut("vertical", a + k), Cut("horizontal", c), Cut("horizontal", c + l)]


def _l5_table(fr, G):
    a = fr.spec.a
    return [_two(G, a, fr.s, fr.t, (_case_table_p_q(fr),)), Cut("vertical", a)]


def _mirrored_six_three(f: Frame) -> bool:
    m, n, k, l, a, b, c, d = f.spec.params()
    if o_family(f.spec) or a != 1 or c != 1 or b < 2 or f.s.x != 1:
        return False
    return d == 1 or (f.s.y <= c + l and f.t.y <= c + l)


def _l6_column(fr, G):
    return _ring_chains(G, fr.s, fr.t, 1)


def _l6_mixed(fr, G):
    plans: list = []
    for m1 in dict.fromkeys((1, fr.t.x - 1)):
        if m1 >= 1:
            plans += [_two(G, m1, fr.s, fr.t, _bottom_joint(m1, fr.spec.n, fr.s)),
                      _two(G, m1, fr.s, fr.t, _top_joint(m1, fr.s)), Cut("vertical", m1)]
    return plans


def _l6_top(fr, G):
    m1 = fr.s.x
    return [_two(G, m1, fr.s, fr.t, _bottom_joint(m1, fr.spec.n, fr.s)), Cut("vertical", m1)]


HP_RECORDS: tuple[CaseRecord, ...] = (
    # both endpoints left of the hole
    CaseRecord("HP 4.1", lambda f: _group(f) == 4 and o_family(f.spec) == 1, _l4_fam1),
    CaseRecord("HP 4.2.1.1", lambda f: _group(f) == 4 and o_family(f.spec) in (2, 3) and f.spec.a == 2
               and ({tuple(f.s), tuple(f.t)} & {(2, 1), (2, f.spec.n)}), _l4_a2_corner),
    CaseRecord("HP 4.2.1.2", lambda f: _group(f) == 4 and o_family(f.spec) in (2, 3) and f.spec.a == 2, _l4_a2),
    CaseRecord("HP 4.2.2.1", lambda f: _group(f) == 4 and o_family(f.spec) in (2, 3) and f.spec.a >= 3
               and f.t.x <= f.spec.a - 1, _l4_absorb),
    CaseRecord("HP 4.2.2.2", lambda f: _group(f) == 4 and o_family(f.spec) in (2, 3) and f.spec.a >= 3
               and f.t.x == f.spec.a, _l4_column),
    # s left of the hole, t beyond
    CaseRecord("HP 5.1.1.1", lambda f: _group(f) == 5 and o_family(f.spec) == 2 and f.t.y == 1
               and f.t.x == f.spec.a + 1, _l5_bottom(lambda f: f.spec.a)),
    CaseRecord("HP 5.1.1.2", lambda f: _group(f) == 5 and o_family(f.spec) == 2 and f.t.y == 1
               and f.t.x == f.spec.a + 2 and f.spec.k >= 2, _l5_bottom(lambda f: f.spec.a + 1)),
    CaseRecord("HP 5.1.1.3.1", lambda f: _group(f) == 5 and o_family(f.spec) == 2 and f.spec.b >= 2
               and f.spec.d >= 2 and tuple(f.t) == (f.spec.a + f.spec.k, 1), _l5_strip),
    CaseRecord("HP 5.1.1.3.2", lambda f: _group(f) == 5 and o_family(f.spec) == 2 and f.spec.b >= 2
               and f.spec.d >= 2 and tuple(f.t) == (f.spec.a + f.spec.k - 1, 1), _l5_cut_at_t),
    CaseRecord("HP 5.1.2.1.1", lambda f: _group(f) == 5 and o_family(f.spec) == 2 and f.spec.b == 1
               and tuple(f.t) == (f.spec.m, 1) and f.spec.k <= 2,
               _l5_bottom(lambda f: f.spec.a + f.spec.k - 1)),
    CaseRecord("HP 5.1.2.1.2", lambda f: _group(f) == 5 and o_family(f.spec) == 2 and f.spec.b == 1
               and tuple(f.t) == (f.spec.m, 1) and f.spec.k >= 3 and f.spec.l <= 2,
               _l5_upper_block(lambda f: 2)),
    CaseRecord("HP 5.1.2.2", lambda f: _group(f) == 5 and o_family(f.spec) == 2 and f.spec.b == 1
               and tuple(f.t) == (f.spec.m, f.spec.c + f.spec.l), _l5_upper_block(lambda f: f.spec.c + f.spec.l)),
    CaseRecord("HP 5.1.2.3", lambda f: _group(f) == 5 and o_family(f.spec) == 2 and f.spec.b == 1
               and f.spec.l >= 2 and tuple(f.t) == (f.spec.m, f.spec.c + f.spec.l - 1),
               _l5_upper_block(lambda f: f.t.y)),
    CaseRecord("HP 5.1.3", lambda f: _group(f) == 5 and o_family(f.spec) == 2 and f.spec.d >= 2
               and ((f.spec.b >= 2 and (f.t.y >= 2 or f.t.x > f.spec.a + f.spec.k))
                    or (f.spec.b == 1 and f.t.y >= f.spec.c + f.spec.l + 1)), _l5_top),
    # not named by the case analysis: c = d = 1, b >= 2 and t right of the hole
    CaseRecord("HP 5.1.3*", lambda f: _group(f) == 5 and o_family(f.spec) == 2 and f.spec.d == 1
               and f.spec.b >= 2 and f.t.x > f.spec.a + f.spec.k, _l5_beyond),
    CaseRecord("HP 5.2", lambda f: _group(f) == 5 and o_family(f.spec) in (1, 3), _l5_table),
    # both endpoints right of the left margin
    CaseRecord("HP 6.2", lambda f: _group(f) == 6 and o_family(f.spec) == 2 and f.s.y == f.t.y == 1
               and f.t.x <= f.spec.a + f.spec.k, _l6_top),
    # b = c = 1 with an endpoint on column m, seen from the right: the mirror has a = 1, b >= 2
    CaseRecord("HP 6.3", lambda f: _mirrored_six_three(f) and f.t.x == 1, _l6_column),
    CaseRecord("HP 6.3", lambda f: _mirrored_six_three(f) and f.t.x > 1, _l6_mixed),
)


def _hp_frames(spec: ShapeSpec, s: Point, t: Point) -> list[Frame]:
    views = [fr for fr in frames(spec, s, t) if fr.s.x <= fr.t.x]
    return sorted(views, key=lambda fr: (not o_family(fr.spec), _group(fr)))


def _hp_by_records(spec: ShapeSpec, s: Point, t: Point, trace: list) -> tuple[list | None, str]:
    tried = []
    for fr in _hp_frames(spec, s, t):
        G = fr.spec.region()
        for rec in HP_RECORDS:
            if not rec.guard(fr):
                continue
            tried.append(rec.name)
            for plan in rec.plans(fr, G):
                res = _run(plan, G, tuple(fr.s), tuple(fr.t), trace, rec.name)
                if res is not None and len(res) == len(G) and validate_path(G, res, fr.s, fr.t):
                    return fr.to_original(res), rec.name
                trace.clear()
    return None, ",".join(dict.fromkeys(tried)) or "no record"


def _hp_fallback(spec: ShapeSpec, s: Point, t: Point, trace: list, case: str) -> list | None:
    G = spec.region()
    log.warning("HP records exhausted (%s) on %s %s %s; using the generic engine", case, spec.label(), s, t)
    try:
        res = region_hp(G, tuple(s), tuple(t))
        trace.append(TraceRecord(_describe(G), (tuple(s), tuple(t)), f"fallback: engine after {case}"))
        return res
    except SolveFailure:
        pass
    if len(G) <= FALLBACK_LIMIT:
        try:
            res = exact_hp(G, tuple(s), tuple(t))
        except BudgetExceeded:
            res = None
        if res is not None:
            trace.append(TraceRecord(_describe(G), (tuple(s), tuple(t)), f"fallback: exact after {case}"))
            return res
    return None


def _hp_with_trace(spec: ShapeSpec, s: Point, t: Point) -> tuple[PathSeq | None, list]:
    if spec.family != "O":
        raise GridError("wrong-shape-family", spec.label())
    s, t = GridPoint(*s), GridPoint(*t)
    if check_o_forbidden(spec, s, t) is not None:
        return None, []
    trace: list = []
    res, case = _hp_by_records(spec, s, t, trace)
    if res is None:
        res = _hp_fallback(spec, s, t, trace, case)
    if res is None:
        raise ContractViolation(case, f"no Hamiltonian path built for {spec.label()} {tuple(s)} {tuple(t)}")
    out = PathSeq.of(res)
    check = validate_path(spec, out, s, t)
    if not check or len(out) != spec.vertex_count():
        raise ContractViolation(case, check.reason or "path does not cover the shape")
    return out, trace


def o_hamiltonian_st_path(spec: ShapeSpec, s: Point, t: Point) -> PathSeq | None:
    """Hamiltonian (s, t)-path, or None exactly when F1 or one of F10--F13 holds."""
    return _hp_with_trace(spec, s, t)[0]


def o_hamiltonian_result(spec: ShapeSpec, s: Point, t: Point) -> SolveResult:
    """Hamiltonian (s, t)-path with verdict and trace; ``path`` is None when a condition forbids it."""
    s, t = GridPoint(*s), GridPoint(*t)
    verdict = classify_longest_case(spec, s, t)
    path, trace = _hp_with_trace(spec, s, t)
    bound = len(path) if path is not None else _best(_terms(verdict, {}))
    return SolveResult(verdict, path, bound, tuple(trace))


# ---------------------------------------------------------------------------
# Upper bound and longest paths
# ---------------------------------------------------------------------------

@dataclass
class _Plan:
    """A construction for one term of Û together with that term's value."""

    case: str
    value: int
    plans: list = field(default_factory=list)


def _crossings(R1, R2, axis: str, c: int) -> list[tuple[Point, Point]]:
    out = []
    if R1 is None or R2 is None:
        return out
    lo, hi = (min(R1.y0, R2.y0), max(R1.y1, R2.y1)) if axis == "vertical" else (min(R1.x0, R2.x0), max(R1.x1, R2.x1))
    for v in range(lo, hi + 1):
        p = (c, v) if axis == "vertical" else (v, c)
        if p not in R1:
            continue
        for dv in (0, -1, 1):
            q = (c + 1, v + dv) if axis == "vertical" else (v + dv, c + 1)
            if q in R2:
                out.append((p, q))
    return out


def _two_piece(case: str, R1, R2, axis: str, c: int, s, t, named: list, memo: dict) -> list[_Plan]:
    """max over crossing pairs (p, q) of L̂(R1, s, p) + L̂(R2, q, t); the named pairs come first on ties."""
    pairs = list(named) + [pq for pq in _crossings(R1, R2, axis, c) if pq not in named]
    terms = []
    for i, (p, q) in enumerate(pairs):
        if not adjacent(p, q):
            continue
        x, y = _lhat(R1, s, p, memo), _lhat(R2, q, t, memo)
        if x < 0 or y < 0:
            continue
        tag = f"{case}" if i < len(named) else f"{case} (crossing {p}-{q})"
        terms.append(_Plan(tag, x + y, [Chain((R1, R2), (((p, q),),), s, t, ("long", "long"))]))
    return terms


def _terms(verdict: Verdict, memo: dict) -> list[_Plan]:
    """Every term of Û for the verdict's case, each with the plans that realize it."""
    fr = verdict.frame
    m, n, k, l, a, b, c, d = fr.spec.params()
    G = fr.spec.region()
    size = len(G)
    s, t = tuple(fr.s), tuple(fr.t)
    (sx, _), (tx, ty) = s, t
    w = verdict.witnesses
    cls = verdict.cls
    if cls == "O0":
        return [_Plan("O0", size)]
    if cls in ("O1", "O2"):
        value = size - tx + sx + 1 if cls == "O1" else size - ty - m + sx + 2
        m1 = sx
        R1, R2 = _cols(G, 1, m1), _cols(G, m1 + 1, m)
        chain = Chain((R1, R2), ((((m1, n), (m1 + 1, n)),),), s, t, ("long", "long"))
        alt = _two_piece("LP 1", R1, R2, "vertical", m1, s, t, [], memo)
        return [_Plan("LP 1", value, [chain] + [p for q in alt for p in q.plans])]
    if cls == "O3":
        R1, R2 = _cols(G, 1, tx), _cols(G, sx, m)
        out = []
        for R in (R1, R2):
            v = _lhat(R, s, t, memo)
            if v > 0:
                out.append(_Plan("LP 2", v, [Chain((R,), (), s, t, ("long",))]))
        return out
    if cls == "F11":
        u, v = w["u"], w["v"]
        strip_v = (a + 1, 1, a + k - 1, c)
        strip_u = (a + 2, 1, a + k, c)
        right = _Plan("LP 3.1", size - v.x + tx + 1, [
            Chain((_sub(G, 1, 1, m, n, strip_v), _sub(G, *strip_v)), (_top_joint(a, s),), s, t, ("hp", "long")),
        ])
        left = _Plan("LP 3.2", size - tx + u.x + 1, [])
        mirror = (((a + k + 1, 1), (a + k, 1)), ((a + k + 1, 2), (a + k, 1)))
        if sx <= a:
            r1 = _sub(G, 1, 1, a + 1, n, (a + 1, 2, a + 1, n))
            r3 = _sub(G, a + 1, 1, m, n, (a + 1, 1, a + k, c + l))
            left.plans.append(Chain((r1, r3, _sub(G, *strip_u)), (_bottom_joint(a, n, s), mirror), s, t,
                                    ("hp", "hp", "long")))
        left.plans.append(Chain((_sub(G, 1, 1, m, n, strip_u), _sub(G, *strip_u)), (mirror,), s, t, ("hp", "long")))
        return [right, left] if right.value >= left.value else [left, right]
    if cls in ("F13_2_1", "F13_2_2", "F13_2_3"):
        u = GridPoint(a + 1, 1)
        m1 = a + 1
        four_one = Chain((_cols(G, 1, m1), _cols(G, m1 + 1, m)), ((((m1, n), (m1 + 1, n)),),), s, t,
                         ("long", "long"))
        block = (a + 1, 1, m, c + l - 1)
        four_two = Chain((_sub(G, 1, 1, m, n, block), _sub(G, *block)), (_top_joint(a, s),), s, t, ("hp", "long"))
        if cls == "F13_2_1":
            first = size - tx + u.x + 1
            second = size - (c + l - 1) - m + tx + 1
        else:
            first = size - m + u.x - ty + 2
            second = size - (c + l) + ty + 1
        terms = [_Plan("LP 4.1", first, [four_one]), _Plan("LP 4.2", second, [four_two])]
        return terms if first >= second else terms[::-1]
    if cls.startswith("F12") or cls in ("F13_1_1", "F13_3"):
        m1 = a + 1 if sx <= a else sx
        R1, R2 = _cols(G, 1, m1), _cols(G, m1 + 1, m)
        named = [((m1, 1), (m1 + 1, 1)), ((m1, n), (m1 + 1, n))]
        return _two_piece("LP 5", R1, R2, "vertical", m1, s, t, named, memo)
    if cls in ("O4a", "O4b"):
        n1 = c + 1
        R1, R2 = _rows(G, 1, n1), _rows(G, n1 + 1, n)
        named = [((1, n1), (1, n1 + 1)), ((m, n1), (m, n1 + 1))]
        return _two_piece("LP 5", R1, R2, "horizontal", n1, s, t, named, memo)
    raise GridError("unclassified", cls)


def _best(terms: list[_Plan]) -> int:
    return max(tm.value for tm in terms)


def upper_bound(spec: ShapeSpec, s: Point, t: Point) -> tuple[int, Verdict]:
    """Û for the instance together with the verdict whose formula produced it."""
    verdict = classify_longest_case(spec, s, t)
    return _best(_terms(verdict, {})), verdict


def _longest_fallback(spec: ShapeSpec, s, t, trace: list, case: str) -> list | None:
    log.warning("longest-path records exhausted (%s) on %s %s %s; using the exact reducer",
                case, spec.label(), s, t)
    cells = frozenset(spec.region().cells())
    try:
        res = LongestSolver().solve(cells, s, t)
        trace.append(TraceRecord(spec.label(), (tuple(s), tuple(t)), f"fallback: reducer after {case}"))
        return res
    except SolveFailure:
        pass
    if len(cells) <= FALLBACK_LIMIT:
        try:
            res = exact_longest_cells(cells, tuple(s), tuple(t))
        except BudgetExceeded:
            return None
        trace.append(TraceRecord(spec.label(), (tuple(s), tuple(t)), f"fallback: exact after {case}"))
        return res
    return None


def o_longest_st_path(spec: ShapeSpec, s: Point, t: Point) -> SolveResult:
    """A longest (s, t)-path; its length equals Û, which the result also reports."""
    s, t = GridPoint(*s), GridPoint(*t)
    verdict = classify_longest_case(spec, s, t)
    if verdict.cls == "O0":
        path, trace = _hp_with_trace(spec, s, t)
        return SolveResult(verdict, path, len(path), tuple(trace))
    terms = _terms(verdict, {})
    bound = _best(terms)
    fr = verdict.frame
    G = fr.spec.region()
    trace: list = []
    res = None
    case = verdict.cls
    for term in terms:
        if term.value != bound:
            continue
        case = term.case
        for plan in term.plans:
            out = _run(plan, G, tuple(fr.s), tuple(fr.t), trace, term.case)
            if out is not None and len(out) == bound and validate_path(G, out, fr.s, fr.t):
                res = fr.to_original(out)
                break
            trace.clear()
        if res is not None:
            break
    if res is None:
        res = _longest_fallback(spec, s, t, trace, case)
        if res is not None and len(res) != bound:
            raise ContractViolation(case, f"longest path has {len(res)} vertices but the bound is {bound}")
    if res is None:
        raise ContractViolation(case, f"no longest path built for {spec.label()} {tuple(s)} {tuple(t)}")
    path = PathSeq.of(res)
    check = validate_path(spec, path, s, t)
    if not check:
        raise ContractViolation(case, check.reason)
    return SolveResult(verdict, path, bound, tuple(trace))
