import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from supergrid.grid import GridError, ShapeSpec, SymmetryTransform, validate_path
from supergrid.oracle import InstanceFilter, dp_longest_lengths, enumerate_instances, enumerate_specs
from supergrid.osolver import (o_hamiltonian_cycle, o_hamiltonian_result, o_hamiltonian_st_path,
                               o_longest_st_path, upper_bound)

O333 = ShapeSpec.oshape(3, 3, 1, 1, 1, 1, 1, 1)
O53 = ShapeSpec.oshape(5, 3, 3, 1, 1, 1, 1, 1)
SMALL = list(enumerate_specs(InstanceFilter(24, 7, 7)))


def test_cycle_examples():
    ring = o_hamiltonian_cycle(O333)
    assert ring.closed and set(ring) == set(O333.cells())
    for spec in (O53, ShapeSpec.oshape(4, 4, 2, 2, 1, 1, 1, 1)):
        cyc = o_hamiltonian_cycle(spec)
        assert validate_path(spec, cyc) and len(cyc) == 12


def test_cycle_rejects_other_families():
    with pytest.raises(GridError, match="wrong-shape-family"):
        o_hamiltonian_cycle(ShapeSpec.rect(3, 3))


def test_hamiltonian_path_examples():
    p = o_hamiltonian_st_path(O333, (1, 1), (2, 1))
    assert validate_path(O333, p, (1, 1), (2, 1)) and len(p) == 8
    assert o_hamiltonian_st_path(O333, (1, 1), (2, 3)) is None
    assert o_hamiltonian_st_path(O53, (2, 1), (4, 1)) is None


def test_upper_bound_examples():
    assert upper_bound(O333, (1, 1), (2, 1))[0] == 8
    bound, verdict = upper_bound(O53, (2, 1), (4, 1))
    assert bound == 11 and verdict.cls == "O1"
    assert upper_bound(O333, (1, 1), (2, 3))[0] == 7


def test_longest_examples():
    r = o_longest_st_path(O53, (2, 1), (4, 1))
    assert len(r.path) == r.bound == 11 and (3, 1) not in r.path
    r = o_longest_st_path(O333, (1, 1), (2, 3))
    assert len(r.path) == 7 and (1, 3) not in r.path
    r = o_longest_st_path(O333, (1, 1), (2, 1))
    assert r.verdict.cls == "O0" and len(r.path) == 8


def test_result_records():
    r = o_longest_st_path(O53, (2, 1), (4, 1))
    doc = r.as_dict()
    assert doc["verdict"]["class"] == "O1" and doc["length"] == doc["bound"] == 11
    assert r.subproblem_trace and all(rec.role for rec in r.subproblem_trace)
    h = o_hamiltonian_result(O333, (1, 1), (2, 3))
    assert h.path is None and h.verdict.condition == "F10_1" and h.bound == 7


def test_named_forbidden_instances():
    # no Hamiltonian path: F12 with s left of the hole (case 1) and s above it (case 2)
    spec = ShapeSpec.oshape(7, 3, 3, 1, 2, 2, 1, 1)
    r = o_hamiltonian_result(spec, (1, 1), (5, 1))
    assert r.path is None and r.verdict.cls == "F12_1"
    r = o_hamiltonian_result(spec, (3, 1), (6, 2))
    assert r.path is None and r.verdict.cls == "F12_2"


def test_deterministic_output():
    for spec, s, t in list(enumerate_instances(InstanceFilter(12)))[:300]:
        assert o_longest_st_path(spec, s, t) == o_longest_st_path(spec, s, t)


@settings(max_examples=120, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_bound_is_tight_and_monotone(spec, data):
    cells = spec.cells()
    s = data.draw(st.sampled_from(cells))
    t = data.draw(st.sampled_from([c for c in cells if c != s]))
    r = o_longest_st_path(spec, s, t)
    assert validate_path(spec, r.path, s, t)
    assert len(r.path) == r.bound <= spec.vertex_count()
    assert (r.bound == spec.vertex_count()) == (r.verdict.cls == "O0")
    assert r.bound == dp_longest_lengths(spec, s)[t]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(SMALL), st.data())
def test_length_is_isometry_invariant(spec, data):
    cells = spec.cells()
    s = data.draw(st.sampled_from(cells))
    t = data.draw(st.sampled_from([c for c in cells if c != s]))
    T = data.draw(st.sampled_from(SymmetryTransform.all(spec.m, spec.n)))
    a = o_longest_st_path(spec, s, t)
    b = o_longest_st_path(T.apply_spec(spec), T.apply(s), T.apply(t))
    assert len(a.path) == len(b.path)


@pytest.mark.parametrize("N", [9, 15, 21, 36])
def test_larger_instances_reach_the_bound(N):
    k = N // 3
    a = (N - k) // 2
    spec = ShapeSpec.oshape(N, N, k, k, a, N - k - a, a, N - k - a)
    for s, t in (((1, 1), (N, N)), ((a + 1, 1), (a + 2, 1)), ((a + 2, 1), (N, N)), ((1, N), (N, 1))):
        r = o_longest_st_path(spec, s, t)
        assert validate_path(spec, r.path, s, t) and len(r.path) == r.bound
