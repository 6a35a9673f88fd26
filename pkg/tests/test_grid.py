import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supergrid.grid import (GridError, GridPoint, PathSeq, ShapeSpec, SymmetryTransform, absorb_vertex,
                            canonicalize, close_path_with_cycle, combine_cycle_cycle, combine_cycle_path,
                            concat_paths, contains_point, neighbors, o_family, separate, validate_path,
                            vertex_count)

from tests.strategies import oshapes, shapes

O333 = ShapeSpec.oshape(3, 3, 1, 1, 1, 1, 1, 1)
O53 = ShapeSpec.oshape(5, 3, 3, 1, 1, 1, 1, 1)


def P(*pts, closed=False):
    return PathSeq.of(pts, closed)


# -- examples -----------------------------------------------------------------

def test_contains_point_examples():
    assert not contains_point(O333, (2, 2))
    assert contains_point(O333, (1, 1))
    assert not contains_point(O53, (3, 2))


def test_neighbors_examples():
    assert neighbors(O333, (1, 1)) == {(2, 1), (1, 2)}
    assert neighbors(ShapeSpec.rect(2, 2), (1, 1)) == {(2, 1), (1, 2), (2, 2)}
    assert neighbors(O53, (3, 1)) == {(2, 1), (4, 1)}


def test_neighbors_rejects_outside_point():
    with pytest.raises(GridError):
        neighbors(O333, (2, 2))


def test_vertex_count_examples():
    assert vertex_count(O333) == 8
    assert vertex_count(O53) == 12
    assert vertex_count(ShapeSpec.cshape(2, 3, 1, 1, 1, 1)) == 5


def test_validate_path_examples():
    assert validate_path(O333, P((1, 1), (2, 1)), (1, 1), (2, 1))
    bad = validate_path(O333, P((1, 1), (2, 3)), (1, 1), (2, 3))
    assert not bad and "non-adjacent" in bad.reason
    bad = validate_path(O333, P((1, 1), (2, 1), (2, 2)))
    assert not bad and "out-of-shape" in bad.reason
    assert "repeat" in validate_path(O333, P((1, 1), (2, 1), (1, 1))).reason
    assert "wrong endpoint" in validate_path(O333, P((1, 1), (2, 1)), (2, 1), (1, 1)).reason


def test_separate_examples():
    left, right = separate(O53, "vertical", 1)
    assert left.spec == ShapeSpec.rect(1, 3) and left.offset == (0, 0)
    assert right.spec == ShapeSpec.cshape(4, 3, 3, 1, 1, 1)
    a, b = separate(ShapeSpec.rect(4, 2), "vertical", 2)
    assert a.spec == b.spec == ShapeSpec.rect(2, 2)
    a, b = separate(O53, "vertical", 3)
    assert a.spec == ShapeSpec.cshape(3, 3, 2, 1, 1, 1)
    assert b.spec == ShapeSpec.cshape(2, 3, 1, 1, 1, 1)


def test_separate_errors():
    with pytest.raises(GridError, match="cut-out-of-range"):
        separate(O53, "vertical", 5)


def test_canonicalize_examples():
    spec, s, t, T = canonicalize(O333, (1, 1), (2, 1))
    assert spec == O333 and (s, t) == ((1, 1), (2, 1)) and T.is_identity
    flipped = ShapeSpec.oshape(5, 3, 3, 1, 1, 1, 1, 1)
    assert o_family(canonicalize(flipped, (1, 1), (2, 3))[0]) == 1
    spec, _, _, _ = canonicalize(ShapeSpec.oshape(6, 4, 2, 1, 1, 3, 1, 2), (1, 1), (6, 4))
    assert o_family(spec) == 2 and spec.a >= 2 and spec.c == 1


def test_concat_examples():
    assert list(concat_paths(P((1, 1), (1, 2)), P((2, 3), (3, 3)))) == [(1, 1), (1, 2), (2, 3), (3, 3)]
    assert list(concat_paths(P((1, 1)), P((2, 2)))) == [(1, 1), (2, 2)]
    with pytest.raises(GridError, match="not-disjoint"):
        concat_paths(P((1, 1), (2, 1)), P((2, 1), (3, 1)))


def test_combine_cycle_cycle():
    c1 = P((1, 1), (2, 1), (2, 2), (1, 2), closed=True)
    c2 = P((3, 1), (4, 1), (4, 2), (3, 2), closed=True)
    out = combine_cycle_cycle(c1, c2, ((2, 1), (2, 2)), ((3, 1), (3, 2)))
    assert out.closed and len(out) == 8 and validate_path(ShapeSpec.rect(4, 2), out)
    r = ShapeSpec.rect(2, 4)
    top = P((1, 1), (2, 1), (2, 2), (1, 2), closed=True)
    bottom = P((1, 3), (2, 3), (2, 4), (1, 4), closed=True)
    assert len(combine_cycle_cycle(top, bottom, ((2, 2), (1, 2)), ((1, 3), (2, 3)))) == 8
    assert validate_path(r, combine_cycle_cycle(top, bottom, ((2, 2), (1, 2)), ((1, 3), (2, 3))))
    with pytest.raises(GridError, match="edges-not-parallel"):
        combine_cycle_cycle(c1, c2, ((1, 1), (2, 1)), ((4, 1), (4, 2)))


def test_combine_cycle_path():
    p = P((1, 1), (2, 1))
    c = P((1, 2), (2, 2), (2, 3), (1, 3), closed=True)
    out = combine_cycle_path(c, p, ((1, 2), (2, 2)), ((1, 1), (2, 1)))
    assert list(out) == [(1, 1), (1, 2), (1, 3), (2, 3), (2, 2), (2, 1)]
    p3 = P((1, 1), (2, 1), (3, 1))
    c4 = P((1, 2), (2, 2), (2, 3), (1, 3), closed=True)
    out = combine_cycle_path(c4, p3, ((1, 2), (2, 2)), ((1, 1), (2, 1)))
    assert len(out) == 7 and out.start == (1, 1) and out.end == (3, 1)
    assert validate_path(ShapeSpec.rect(3, 3), out, (1, 1), (3, 1))


def test_absorb_vertex():
    c = P((1, 1), (2, 1), (2, 2), (1, 2), closed=True)
    out = absorb_vertex(c, (3, 1), ((2, 1), (2, 2)))
    assert out.closed and len(out) == 5 and validate_path(ShapeSpec.rect(3, 2), out)
    assert list(absorb_vertex(P((1, 1), (2, 1)), (1, 2), ((1, 1), (2, 1)))) == [(1, 1), (1, 2), (2, 1)]
    with pytest.raises(GridError, match="not-adjoining"):
        absorb_vertex(c, (4, 4), ((2, 1), (2, 2)))


def test_close_path_with_cycle():
    c = P((1, 1), (2, 1), (2, 2), (1, 2), closed=True)
    out = close_path_with_cycle(c, P((3, 1), (3, 2)), ((2, 1), (2, 2)))
    assert out.closed and len(out) == 6 and validate_path(ShapeSpec.rect(3, 2), out)
    single = close_path_with_cycle(c, P((3, 1)), ((2, 1), (2, 2)))
    assert set(single) == set(absorb_vertex(c, (3, 1), ((2, 1), (2, 2))))
    with pytest.raises(GridError):
        close_path_with_cycle(c, P((4, 1), (4, 2)), ((2, 1), (2, 2)))


# -- properties -----------------------------------------------------------------

@settings(max_examples=60, deadline=None)
@given(shapes())
def test_neighbors_symmetric(spec):
    for p in spec.cells():
        for q in neighbors(spec, p):
            assert p in neighbors(spec, q)


def test_vertex_count_matches_membership():
    from supergrid.oracle import InstanceFilter, enumerate_specs
    for spec in enumerate_specs(InstanceFilter(64, 8, 8, ("R", "L", "C", "O"))):
        members = sum(contains_point(spec, (x, y)) for x in range(1, spec.m + 1) for y in range(1, spec.n + 1))
        assert vertex_count(spec) == members == len(spec.cells())


def test_separation_partitions_shapes():
    from supergrid.oracle import InstanceFilter, enumerate_specs
    for spec in enumerate_specs(InstanceFilter(36, 6, 6, ("R", "L", "C", "O"))):
        cells = set(spec.cells())
        for axis, size in (("vertical", spec.m), ("horizontal", spec.n)):
            for cut in range(1, size):
                try:
                    a, b = separate(spec, axis, cut)
                except GridError:
                    continue
                pa = {a.to_parent(p) for p in a.spec.cells()}
                pb = {b.to_parent(p) for p in b.spec.cells()}
                assert pa | pb == cells and not pa & pb


@settings(max_examples=80, deadline=None)
@given(oshapes(), st.data())
def test_canonicalize_round_trip(spec, data):
    cells = spec.cells()
    s = data.draw(st.sampled_from(cells))
    t = data.draw(st.sampled_from([c for c in cells if c != s]))
    cspec, s2, t2, T = canonicalize(spec, s, t)
    assert o_family(cspec) in (1, 2, 3) and s2.x <= t2.x
    assert {s2, t2} == {T.apply(s), T.apply(t)}
    inv = T.inverse()
    for p in cells:
        assert inv.apply(T.apply(p)) == p
        assert cspec.contains(T.apply(p))


@settings(max_examples=60, deadline=None)
@given(oshapes(6), st.data())
def test_validate_path_invariant_under_transform(spec, data):
    cells = spec.cells()
    path = [data.draw(st.sampled_from(cells))]
    for _ in range(data.draw(st.integers(0, 6))):
        path.append(data.draw(st.sampled_from(cells)))
    for T in SymmetryTransform.all(spec.m, spec.n):
        image = T.apply_spec(spec)
        assert bool(validate_path(spec, path)) == bool(validate_path(image, T.apply_path(path)))


def test_grid_point_repr():
    assert repr(GridPoint(2, 3)) == "(2,3)"
