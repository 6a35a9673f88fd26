"""Forbidden-condition predicates and the longest-path case classification.

Conditions on R/L/C shapes are evaluated in every isometric view that puts the
shape in catalog orientation, with both endpoint role assignments; O-shape
conditions likewise scan every canonical frame.  Connectivity questions are
answered by breadth-first search on a compressed copy of the shape, which keeps
large instances cheap.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable

from .grid import (GridError, GridPoint, Point, Region, ShapeSpec, SymmetryTransform, adjacent,
                   connected, o_family)

# ---------------------------------------------------------------------------
# Connectivity on compressed regions
# ---------------------------------------------------------------------------

_COMPRESS_ABOVE = 400


def _axis_map(lo: int, hi: int, keys: Iterable[int]) -> dict[int, int]:
    """Keep coordinates within distance 2 of a key; collapse each other run to one coordinate."""
    keep = set()
    for k in keys:
        for d in range(-2, 3):
            if lo <= k + d <= hi:
                keep.add(k + d)
    out, nxt, prev_kept = {}, 0, True
    for v in range(lo, hi + 1):
        if v in keep:
            nxt += 1
            out[v] = nxt
            prev_kept = True
        else:
            if prev_kept:
                nxt += 1
            out[v] = nxt
            prev_kept = False
    return out


def compress(region: Region, points: Iterable[Point]) -> tuple[Region, dict[Point, Point]]:
    """Shrink runs of identical rows/columns far from ``points`` and the hole boundary.

    Connectivity after deleting any subset of ``points`` is preserved (a run of
    identical columns behaves like a single column under king moves).
    """
    pts = [tuple(p) for p in points]
    xs = [region.x0, region.x1] + [p[0] for p in pts]
    ys = [region.y0, region.y1] + [p[1] for p in pts]
    if region.hole:
        hx0, hy0, hx1, hy1 = region.hole
        xs += [hx0, hx1]
        ys += [hy0, hy1]
    mx, my = _axis_map(region.x0, region.x1, xs), _axis_map(region.y0, region.y1, ys)
    hole = None
    if region.hole:
        hx0, hy0, hx1, hy1 = region.hole
        hole = (mx[hx0], my[hy0], mx[hx1], my[hy1])
    small = Region(1, 1, mx[region.x1], my[region.y1], hole)
    return small, {p: (mx[p[0]], my[p[1]]) for p in pts}


def disconnects(region: Region, removed: Iterable[Point]) -> bool:
    """True when deleting ``removed`` (a few points) disconnects the region."""
    removed = [tuple(p) for p in removed]
    if len(region) > _COMPRESS_ABOVE:
        region, mp = compress(region, removed)
        removed = [mp[p] for p in removed]
    rem = set(removed)
    if len(region) - len(rem) <= 1:
        return False
    return not connected(region, rem)


def is_cut_vertex(spec: ShapeSpec | Region, v: Point) -> bool:
    region = spec.region() if isinstance(spec, ShapeSpec) else spec
    if v not in region:
        raise GridError("point-not-in-shape", str(tuple(v)))
    return disconnects(region, [v])


def is_vertex_cut_pair(spec: ShapeSpec | Region, s: Point, t: Point) -> bool:
    region = spec.region() if isinstance(spec, ShapeSpec) else spec
    if tuple(s) == tuple(t):
        raise GridError("identical-points")
    for p in (s, t):
        if p not in region:
            raise GridError("point-not-in-shape", str(tuple(p)))
    return disconnects(region, [s, t])


def f1_holds(region: Region, s: Point, t: Point) -> bool:
    """s or t is a cut vertex, or {s, t} is a vertex cut."""
    if len(region) <= 2:
        return False
    return disconnects(region, [s]) or disconnects(region, [t]) or disconnects(region, [s, t])


@lru_cache(maxsize=4096)
def degree_one_vertices(region: Region) -> tuple[Point, ...]:
    """Vertices of degree 1.  They can only sit next to a corner of the box or of the hole."""
    if len(region) <= 64:
        cand: Iterable[Point] = region.cells()
    else:
        corners = [(region.x0, region.y0), (region.x1, region.y0), (region.x0, region.y1), (region.x1, region.y1)]
        if region.hole:
            hx0, hy0, hx1, hy1 = region.hole
            corners += [(hx0, hy0), (hx1, hy0), (hx0, hy1), (hx1, hy1)]
        cand = {(x + dx, y + dy) for x, y in corners for dx in range(-2, 3) for dy in range(-2, 3)}
    return tuple(sorted(p for p in cand if p in region and region.degree(p) == 1))


# ---------------------------------------------------------------------------
# R / L / C conditions F1--F9
# ---------------------------------------------------------------------------

def _rlc_literal(spec: ShapeSpec, u: Point, v: Point) -> list[str]:
    """F3--F6 for a catalog-oriented spec with the given role assignment (both orders tried by caller)."""
    out = []
    pair = {tuple(u), tuple(v)}
    if spec.family == "L":
        m, n, k, l = spec.params()
        if m - k == 1 and n - l == 2 and l == 1 and k >= 2 and pair in ({(1, 2), (2, 3)}, {(1, 3), (2, 2)}):
            out.append("F3")
    elif spec.family == "C":
        m, n, k, l, c, d = spec.params()
        a = m - k
        if m == 3 and a == 2 and ((c == 1 and pair in ({(1, 1), (2, 2)}, {(1, 2), (2, 1)}))
                                  or (d == 1 and pair in ({(1, n), (2, n - 1)}, {(1, n - 1), (2, n)}))):
            out.append("F4")
        if n == 3 and k == 1 and c == 1 and d == 1:
            if a >= 2 and u[0] == v[0] == m - 1 and abs(u[1] - v[1]) == 2:
                out.append("F5")
            if a == 2 and u[0] == 1 and v[0] == 2 and abs(u[1] - v[1]) == 2:
                out.append("F5")
            if a > 2 and u[0] < m - 1 and tuple(v) == (m - 1, 2):
                out.append("F5")
        if a == 1 and ((u[1] <= c and v[1] <= c) or (u[1] > c + l and v[1] > c + l)):
            out.append("F6")
    return out


def rlc_conditions(region: Region, s: Point, t: Point) -> list[str]:
    """Every condition among F1--F6 that holds, evaluated in all catalog views and role orders."""
    if region.family == "O":
        raise GridError("wrong-shape-family", "O-shape given to an R/L/C check")
    s, t = tuple(s), tuple(t)
    hits = set()
    if f1_holds(region, s, t):
        hits.add("F1")
    if any(w != s and w != t for w in degree_one_vertices(region)):
        hits.add("F2")
    if region.family in ("L", "C"):
        for spec, T, dx, dy in region.catalog_views():
            s2, t2 = T.apply((s[0] - dx, s[1] - dy)), T.apply((t[0] - dx, t[1] - dy))
            hits.update(_rlc_literal(spec, s2, t2))
            hits.update(_rlc_literal(spec, t2, s2))
    return sorted(hits, key=lambda c: int(c[1:]))


def check_rlc_forbidden(spec: ShapeSpec | Region, s: Point, t: Point) -> str | None:
    """First condition among F1--F6 that holds, or None (then a Hamiltonian (s,t)-path exists)."""
    region = spec.region() if isinstance(spec, ShapeSpec) else spec
    if isinstance(spec, ShapeSpec) and spec.family == "O":
        raise GridError("wrong-shape-family", spec.label())
    if tuple(s) == tuple(t):
        raise GridError("identical-points")
    for p in (s, t):
        if p not in region:
            raise GridError("point-not-in-shape", str(tuple(p)))
    hits = rlc_conditions(region, s, t)
    return hits[0] if hits else None


def rlc_has_cycle(region: Region) -> bool:
    """Hamiltonian cycle existence for R/L/C regions (rectangles need both sides >= 2; F8/F9)."""
    fam = region.family
    if fam == "R":
        return region.width >= 2 and region.height >= 2
    if fam == "O":
        return True
    if degree_one_vertices(region):
        return False
    if fam == "C":
        spec, _, _, _ = region.catalog()
        if spec.m - spec.k == 1:
            return False
    return len(region) >= 4 and not any(disconnects(region, [p]) for p in _articulation_candidates(region))


def _articulation_candidates(region: Region) -> list[Point]:
    if len(region) <= 64:
        return list(region.cells())
    out = []
    corners = [(region.x0, region.y0), (region.x1, region.y0), (region.x0, region.y1), (region.x1, region.y1)]
    if region.hole:
        hx0, hy0, hx1, hy1 = region.hole
        corners += [(hx0, hy0), (hx1, hy0), (hx0, hy1), (hx1, hy1)]
    for x, y in corners:
        for dx in range(-2, 3):
            for dy in range(-2, 3):
                if (x + dx, y + dy) in region:
                    out.append((x + dx, y + dy))
    return out


def f7_holds(m: int, n: int, s: Point, t: Point) -> bool:
    """F7: the rectangle path must use (z, f) instead of (w, z), where w, z, f = (1,1), (2,1), (3,1)."""
    pair = {tuple(s), tuple(t)}
    wz = {(1, 1), (2, 1)}
    if n == 2:
        return pair in (wz, {(1, 1), (2, 2)}, {(2, 1), (1, 2)})
    return n >= 3 and pair == wz


# ---------------------------------------------------------------------------
# O-shape conditions F1, F10--F13
# ---------------------------------------------------------------------------

def o_conditions_literal(spec: ShapeSpec, s: Point, t: Point, cut: bool) -> list[str]:
    """F10--F13 on a canonical-family instance with s and t in the given roles."""
    m, n, k, l, a, b, c, d = spec.params()
    sx, sy = s
    tx, ty = t
    adj = adjacent(s, t)
    out = []
    if a == b == c == d == 1 and not adj and not cut:
        corners = ((1, 1), (1, n))
        if tuple(s) in corners and sx != tx and sy != ty:
            out.append("F10_1")
        if l >= 3 and (tuple(s) in corners or tuple(t) in corners) and sx == tx and abs(sy - ty) > 2:
            out.append("F10_2")
    if c == 1 and a >= 2 and b >= 2 and d >= 2 and k >= 5 and not adj and not cut:
        if (a + 3 <= sx <= a + k - 2 and sy == 1) or (a + 3 <= tx <= a + k - 2 and ty == 1):
            out.append("F11")
    if c == 1 and d == 1 and a >= 2 and b >= 2 and k >= 3:
        if sx <= a and tx >= a + 3:
            out.append("F12_1")
        if a + 1 <= sx <= a + k - 2 and tx >= a + k + 1:
            out.append("F12_2")
    if b == 1 and c == 1 and a >= 2 and not adj:
        if sx >= a + 1 and tx >= a + 1 and tuple(t) == (m, 1) and (d == 1 or (d >= 2 and sy <= c + l and ty <= c + l)):
            if k >= 3 and sy == 1 and sx <= m - 3:
                out.append("F13_1_1")
            if sy == n and sx <= m - 1:
                out.append("F13_1_2")
            if l >= 3 and sx == tx and sy >= 4:
                out.append("F13_1_3")
        if d >= 2 and tx >= a + 1 and ty <= c + l and (sx <= a or (sx >= a + 1 and sy >= c + l + 1)):
            if k >= 3 and ty == 1 and a + 3 <= tx <= m - 1:
                out.append("F13_2_1")
            if l >= 3 and tx == m and 2 <= ty <= l - 1:
                out.append("F13_2_2")
            if k >= 3 and l >= 3 and tuple(t) == (m, 1):
                out.append("F13_2_3")
        if d == 1 and sx <= a and tx >= a + 1 and ((2 <= ty <= c + l) or (k >= 3 and tx >= a + 3)):
            out.append("F13_3")
    return out


@dataclass(frozen=True)
class Frame:
    """An instance seen through a symmetry: canonical spec, endpoint images, and whether roles swapped."""

    spec: ShapeSpec
    s: GridPoint
    t: GridPoint
    transform: SymmetryTransform
    swapped: bool

    def to_original(self, path: Iterable[Point]) -> list[GridPoint]:
        inv = self.transform.inverse()
        pts = [inv.apply(p) for p in path]
        return pts[::-1] if self.swapped else pts


def frames(spec: ShapeSpec, s: Point, t: Point, canonical_only: bool = False) -> list[Frame]:
    """All eight isometric views of an O instance, each with both role assignments."""
    out = []
    for T in SymmetryTransform.all(spec.m, spec.n):
        q = T.apply_spec(spec)
        if canonical_only and not o_family(q):
            continue
        s2, t2 = T.apply(s), T.apply(t)
        out.append(Frame(q, s2, t2, T, False))
        out.append(Frame(q, t2, s2, T, True))
    return out


def _check_o_args(spec: ShapeSpec, s: Point, t: Point) -> None:
    if spec.family != "O":
        raise GridError("wrong-shape-family", spec.label())
    if tuple(s) == tuple(t):
        raise GridError("identical-points")
    for p in (s, t):
        if not spec.contains(p):
            raise GridError("point-not-in-shape", str(tuple(p)))


def o_forbidden_hits(spec: ShapeSpec, s: Point, t: Point) -> list[tuple[str, Frame]]:
    """Every (condition, frame) pair that fires; F1 alone when {s,t} is a vertex cut."""
    _check_o_args(spec, s, t)
    if disconnects(spec.region(), [s, t]):
        return [("F1", frames(spec, s, t)[0])]
    hits = []
    for fr in frames(spec, s, t, canonical_only=True):
        for cond in o_conditions_literal(fr.spec, fr.s, fr.t, False):
            hits.append((cond, fr))
    return hits


_O_ORDER = ["F1", "F10_1", "F10_2", "F11", "F12_1", "F12_2", "F13_1_1", "F13_1_2", "F13_1_3",
            "F13_2_1", "F13_2_2", "F13_2_3", "F13_3"]


def check_o_forbidden(spec: ShapeSpec, s: Point, t: Point) -> str | None:
    """First O-shape forbidden condition that fires, or None (then a Hamiltonian (s,t)-path exists)."""
    hits = o_forbidden_hits(spec, s, t)
    if not hits:
        return None
    return min((h[0] for h in hits), key=_O_ORDER.index)


# ---------------------------------------------------------------------------
# Longest-path case classification
# ---------------------------------------------------------------------------

VERDICT_CLASSES = ("O0", "O1", "O2", "O3", "O4a", "O4b", "F11", "F12_1", "F12_2", "F13_1_1", "F13_1_2",
                   "F13_1_3", "F13_2_1", "F13_2_2", "F13_2_3", "F13_3", "F1", "F10_1", "F10_2")


@dataclass(frozen=True)
class Verdict:
    """Outcome of the case classification.

    ``cls`` is the case label, ``condition`` the forbidden condition that fired
    (None for O0), ``frame`` the canonical view in which the case formulas are
    evaluated, ``witnesses`` the named points those formulas use (canonical frame).
    """

    cls: str
    frame: Frame
    condition: str | None = None
    witnesses: dict[str, GridPoint] = field(default_factory=dict)

    @property
    def canonical_transform(self) -> SymmetryTransform:
        return self.frame.transform

    @property
    def solvable(self) -> bool:
        return self.cls == "O0"

    def as_dict(self) -> dict:
        return {
            "class": self.cls,
            "condition": self.condition,
            "transform": self.frame.transform.name,
            "roles_swapped": self.frame.swapped,
            "canonical_spec": self.frame.spec.label(),
            "witnesses": {k: [v.x, v.y] for k, v in sorted(self.witnesses.items())},
        }


def canonical_frame(spec: ShapeSpec, s: Point, t: Point) -> Frame:
    """Preferred canonical view: canonical family and s_x <= t_x, keeping roles when possible."""
    cands = frames(spec, s, t, canonical_only=True)
    for fr in cands:
        if not fr.swapped and fr.s.x <= fr.t.x:
            return fr
    for fr in cands:
        if fr.s.x <= fr.t.x:
            return fr
    return cands[0]


def classify_longest_case(spec: ShapeSpec, s: Point, t: Point) -> Verdict:
    """Assign the instance to O0, a vertex-cut case (O1--O3), F11/F12/F13, or O4.

    Order: no forbidden condition gives O0; otherwise vertex-cut cases are
    searched over all views, then the F11/F12/F13 subcases with their own
    bound formulas, then the O4 split (which also covers F10 and the F13
    subcases that share its geometry).
    """
    _check_o_args(spec, s, t)
    hits = o_forbidden_hits(spec, s, t)
    if not hits:
        return Verdict("O0", canonical_frame(spec, s, t))
    if hits[0][0] == "F1":
        for fr in frames(spec, s, t):
            m, n, k, l, a, b, c, d = fr.spec.params()
            (sx, sy), (tx, ty) = fr.s, fr.t
            if c == 1 and k >= 3 and sy == ty == 1 and sx <= tx:
                return Verdict("O1", fr, "F1", {"s": fr.s, "t": fr.t})
        for fr in frames(spec, s, t):
            m, n, k, l, a, b, c, d = fr.spec.params()
            (sx, sy), (tx, ty) = fr.s, fr.t
            if c == 1 and b == 1 and a + 1 <= sx <= a + k and sy == 1 and tx == m:
                return Verdict("O2", fr, "F1", {"s": fr.s, "t": fr.t})
        for fr in frames(spec, s, t):
            m, n, k, l, a, b, c, d = fr.spec.params()
            (sx, sy), (tx, ty) = fr.s, fr.t
            if c == 1 and d == 1 and a + 1 <= sx <= a + k and a + 1 <= tx <= a + k and sy == 1 and ty == n and sx <= tx:
                return Verdict("O3", fr, "F1", {"s": fr.s, "t": fr.t})
        raise GridError("unclassified", f"vertex cut without O1-O3 pattern: {spec} {s} {t}")
    for fr in frames(spec, s, t, canonical_only=True):
        m, n, k, l, a, b, c, d = fr.spec.params()
        (sx, sy), (tx, ty) = fr.s, fr.t
        for cond in o_conditions_literal(fr.spec, fr.s, fr.t, False):
            if cond == "F11":
                if ty == 1 and a + 3 <= tx <= a + k - 2:
                    return Verdict("F11", fr, cond, {"s": fr.s, "t": fr.t, "u": GridPoint(a + 1, 1),
                                                      "v": GridPoint(a + k, 1)})
                continue
            if cond in ("F13_2_1", "F13_2_2", "F13_2_3"):
                return Verdict(cond, fr, cond, {"s": fr.s, "t": fr.t})
            if cond.startswith("F12") or cond in ("F13_1_1", "F13_3"):
                m1 = a + 1 if sx <= a else sx
                return Verdict(cond, fr, cond, {"s": fr.s, "t": fr.t, "u": GridPoint(m1, 1),
                                                "v": GridPoint(m1, n)})
    for fr in frames(spec, s, t):
        m, n, k, l, a, b, c, d = fr.spec.params()
        (sx, sy), (tx, ty) = fr.s, fr.t
        if a == 1 and c == 1 and tuple(fr.s) == (1, 1):
            o4a = d == 1 and ty == n and sx != tx
            o4b = sx == tx and l >= 3 and ty >= 4
            if o4a or o4b:
                cond = min((h[0] for h in hits), key=_O_ORDER.index)
                return Verdict("O4a" if o4a else "O4b", fr, cond,
                               {"s": fr.s, "t": fr.t, "u": GridPoint(1, c + 1), "v": GridPoint(m, c + 1)})
    raise GridError("unclassified", f"{spec} {s} {t}")
