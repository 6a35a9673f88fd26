import pytest

from supergrid.conditions import check_rlc_forbidden, f7_holds
from supergrid.grid import PathSeq, ShapeSpec, neighbors, validate_path
from supergrid.oracle import InstanceFilter, brute_longest_path, enumerate_instances, enumerate_specs
from supergrid.subsolvers import (EdgeConstraint, SubsolverError, contains_edges, lc_hamiltonian_cycle,
                                  lc_hamiltonian_st_path, rect3_hp_forced_boundary_edges, rect_hamiltonian_cycle,
                                  rect_hamiltonian_st_path, rect_hp_forced_first_edge, rlc_longest_st_path)


def _hamiltonian(spec, path, s=None, t=None):
    return bool(validate_path(spec, path, s, t)) and len(path) == spec.vertex_count()


def _flat(path: PathSeq, line) -> bool:
    return contains_edges(path, list(zip(line, line[1:])))


def test_rect_cycle_examples():
    cyc = rect_hamiltonian_cycle(2, 2, "top")
    assert cyc.closed and set(cyc) == {(1, 1), (2, 1), (2, 2), (1, 2)}
    cyc = rect_hamiltonian_cycle(3, 2, "bottom")
    assert _hamiltonian(ShapeSpec.rect(3, 2), cyc) and _flat(cyc, [(1, 1), (2, 1), (3, 1)])
    with pytest.raises(SubsolverError):
        rect_hamiltonian_cycle(4, 3, "left")
    with pytest.raises(SubsolverError, match="degenerate"):
        rect_hamiltonian_cycle(4, 1, "top")


def test_rect_cycle_flat_faces():
    for m in range(2, 8):
        for n in range(2, 8):
            spec = ShapeSpec.rect(m, n)
            sides = {"top": [(x, 1) for x in range(1, m + 1)], "bottom": [(x, n) for x in range(1, m + 1)],
                     "left": [(1, y) for y in range(1, n + 1)], "right": [(m, y) for y in range(1, n + 1)]}
            for concave in sides:
                try:
                    cyc = rect_hamiltonian_cycle(m, n, concave)
                except SubsolverError:
                    assert min(m, n) == 3 and max(m, n) > 3
                    continue
                assert _hamiltonian(spec, cyc)
                for side, line in sides.items():
                    if side != concave:
                        assert _flat(cyc, line), (m, n, concave, side)


def test_rect_path_examples():
    assert list(rect_hamiltonian_st_path(2, 1, (1, 1), (2, 1))) == [(1, 1), (2, 1)]
    with pytest.raises(SubsolverError, match="F1"):
        rect_hamiltonian_st_path(3, 1, (1, 1), (2, 1))
    p = rect_hamiltonian_st_path(3, 3, (1, 1), (3, 3))
    assert _hamiltonian(ShapeSpec.rect(3, 3), p, (1, 1), (3, 3))


def test_forced_first_edge_examples():
    p = rect_hp_forced_first_edge(3, 2, (1, 1), (2, 1))
    assert p.has_edge((2, 1), (3, 1))
    p = rect_hp_forced_first_edge(3, 2, (1, 2), (2, 2))
    assert p.has_edge((1, 1), (2, 1))
    p = rect_hp_forced_first_edge(4, 3, (1, 1), (2, 1))
    assert p.has_edge((2, 1), (3, 1))


def test_forced_boundary_edge_examples():
    p = rect3_hp_forced_boundary_edges(3, (1, 1), (1, 3))
    assert len(p) == 9 and p.has_edge((3, 1), (3, 2)) and p.has_edge((3, 2), (3, 3))
    with pytest.raises(SubsolverError, match="last-column"):
        rect3_hp_forced_boundary_edges(3, (3, 1), (1, 1))
    p = rect3_hp_forced_boundary_edges(4, (1, 2), (2, 2))
    assert p.has_edge((4, 1), (4, 2)) and p.has_edge((4, 2), (4, 3))


def test_lc_cycle_examples():
    with pytest.raises(SubsolverError, match="F8"):
        lc_hamiltonian_cycle(ShapeSpec.lshape(2, 2, 1, 1), "left")
    spec = ShapeSpec.cshape(3, 3, 1, 1, 1, 1)
    cyc = lc_hamiltonian_cycle(spec, "left")
    assert _hamiltonian(spec, cyc) and _flat(cyc, [(1, 1), (1, 2), (1, 3)])
    spec = ShapeSpec.lshape(3, 3, 1, 1)
    assert _hamiltonian(spec, lc_hamiltonian_cycle(spec, "left"))
    with pytest.raises(SubsolverError, match="invalid-side"):
        lc_hamiltonian_cycle(ShapeSpec.cshape(3, 3, 1, 1, 1, 1), "right")


def test_lc_path_examples():
    spec = ShapeSpec.cshape(2, 3, 1, 1, 1, 1)
    assert _hamiltonian(spec, lc_hamiltonian_st_path(spec, (1, 1), (1, 3)), (1, 1), (1, 3))
    with pytest.raises(SubsolverError, match="forbidden"):
        lc_hamiltonian_st_path(spec, (1, 1), (2, 1))
    spec = ShapeSpec.lshape(3, 2, 1, 1)
    assert _hamiltonian(spec, lc_hamiltonian_st_path(spec, (1, 1), (3, 2)), (1, 1), (3, 2))


def test_lc_path_constraint_is_honoured_or_reported():
    spec = ShapeSpec.lshape(4, 4, 2, 2)
    need = EdgeConstraint("must-contain-edge", edges=(((1, 1), (1, 2)),))
    p = lc_hamiltonian_st_path(spec, (2, 1), (4, 4), need)
    assert p.has_edge((1, 1), (1, 2))
    flat = EdgeConstraint("flat-face-on-boundary", boundary="left")
    p = lc_hamiltonian_st_path(spec, (2, 1), (4, 4), flat)
    assert _flat(p, [(1, y) for y in range(1, 5)])


def test_longest_examples():
    p = rlc_longest_st_path(ShapeSpec.rect(3, 1), (1, 1), (2, 1))
    assert list(p) == [(1, 1), (2, 1)]
    assert len(rlc_longest_st_path(ShapeSpec.rect(2, 2), (1, 1), (2, 2))) == 4
    assert len(rlc_longest_st_path(ShapeSpec.cshape(2, 3, 1, 1, 1, 1), (1, 1), (2, 1))) == 3


def test_longest_matches_oracle_up_to_12():
    for spec, s, t in enumerate_instances(InstanceFilter(12, families=("R", "L", "C"))):
        p = rlc_longest_st_path(spec, s, t)
        assert validate_path(spec, p, s, t)
        assert len(p) == brute_longest_path(spec, s, t)[0], (spec, s, t)


def test_rect_path_iff_f1_up_to_18():
    for spec, s, t in enumerate_instances(InstanceFilter(18, families=("R",))):
        cond = check_rlc_forbidden(spec, s, t)
        if cond is None:
            assert _hamiltonian(spec, rect_hamiltonian_st_path(spec.m, spec.n, s, t), s, t)
        else:
            with pytest.raises(SubsolverError):
                rect_hamiltonian_st_path(spec.m, spec.n, s, t)


def _touches_all_sides(path, m, n) -> bool:
    steps = list(zip(path, path[1:]))
    return all(any(on(u) and on(v) for u, v in steps)
               for on in (lambda q: q[1] == 1, lambda q: q[1] == n, lambda q: q[0] == 1, lambda q: q[0] == m))


def _some_canonical_path(spec, s, t) -> bool:
    total, path, seen = spec.vertex_count(), [s], {s}

    def walk(v):
        if len(path) == total:
            return v == t and _touches_all_sides(path, spec.m, spec.n)
        for w in sorted(neighbors(spec, v)):
            if w in seen or (w == t and len(path) < total - 1):
                continue
            seen.add(w)
            path.append(w)
            if walk(w):
                return True
            seen.discard(w)
            path.pop()
        return False

    return walk(s)


def test_rect_paths_are_canonical_when_possible():
    impossible = 0
    for spec, s, t in enumerate_instances(InstanceFilter(12, families=("R",))):
        if min(spec.m, spec.n) < 2 or check_rlc_forbidden(spec, s, t):
            continue
        p = [tuple(q) for q in rect_hamiltonian_st_path(spec.m, spec.n, s, t)]
        if not _touches_all_sides(p, spec.m, spec.n):
            assert not _some_canonical_path(spec, tuple(s), tuple(t)), (spec.label(), s, t)
            impossible += 1
    assert impossible == 26  # [DERIVED] exhaustive search, rectangles of at most 12 vertices


def test_forced_edges_scan_small_rectangles():
    for spec in enumerate_specs(InstanceFilter(18, families=("R",))):
        m, n = spec.m, spec.n
        if m < 3 or n < 2:
            continue
        cells = sorted(spec.cells())
        for i, s in enumerate(cells):
            for t in cells[i + 1:]:
                if check_rlc_forbidden(spec, s, t):
                    continue
                p = rect_hp_forced_first_edge(m, n, s, t)
                edge = ((2, 1), (3, 1)) if f7_holds(m, n, s, t) else ((1, 1), (2, 1))
                assert p.has_edge(*edge) and _hamiltonian(spec, p, s, t)
                if n == 3 and s[0] < m and t[0] < m:
                    q = rect3_hp_forced_boundary_edges(m, s, t)
                    assert q.has_edge((m, 1), (m, 2)) and q.has_edge((m, 2), (m, 3))
