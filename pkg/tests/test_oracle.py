import pytest

from supergrid.grid import GridError, ShapeSpec, validate_path
from supergrid.oracle import (InstanceFilter, OracleError, brute_hamiltonian_exists, brute_longest_path,
                              dp_longest_lengths, enumerate_instances, enumerate_specs)

O333 = ShapeSpec.oshape(3, 3, 1, 1, 1, 1, 1, 1)
O53 = ShapeSpec.oshape(5, 3, 3, 1, 1, 1, 1, 1)


def _plain_longest(spec, s, t):
    """Unpruned recursive search, the reference the pruned oracle is checked against."""
    cells = set(spec.cells())
    best = 0

    def go(p, seen):
        nonlocal best
        if p == t:
            best = max(best, len(seen))
            return
        for q in sorted(cells):
            if q not in seen and abs(q[0] - p[0]) <= 1 and abs(q[1] - p[1]) <= 1:
                seen.add(q)
                go(q, seen)
                seen.remove(q)

    go(tuple(s), {tuple(s)})
    return best


def test_longest_examples():
    assert brute_longest_path(O333, (1, 1), (2, 3))[0] == 7
    assert brute_longest_path(ShapeSpec.rect(2, 2), (1, 1), (2, 2))[0] == 4
    length, witness = brute_longest_path(O53, (2, 1), (4, 1))
    assert length == 11 and validate_path(O53, witness, (2, 1), (4, 1))


def test_longest_matches_plain_search():
    for spec, s, t in enumerate_instances(InstanceFilter(10, families=("R", "L", "C", "O"))):
        assert brute_longest_path(spec, s, t)[0] == _plain_longest(spec, s, t)


def test_hamiltonian_examples():
    assert brute_hamiltonian_exists(O333, (1, 1), (2, 1))
    assert not brute_hamiltonian_exists(O333, (1, 1), (2, 3))
    assert brute_hamiltonian_exists(ShapeSpec.rect(3, 1), (1, 1), (3, 1))


def test_errors():
    with pytest.raises(OracleError, match="too-large"):
        brute_longest_path(ShapeSpec.rect(5, 5), (1, 1), (5, 5))
    with pytest.raises(GridError, match="too-large"):
        brute_hamiltonian_exists(ShapeSpec.rect(5, 5), (1, 1), (5, 5))
    # no Hamiltonian path here, so the search cannot stop early at the full length
    with pytest.raises(OracleError, match="budget"):
        brute_longest_path(ShapeSpec.oshape(7, 3, 3, 1, 2, 2, 1, 1), (1, 1), (5, 1), budget=50)


def test_cap_override(monkeypatch):
    monkeypatch.setenv("SOLVER_ORACLE_CAP", "24")
    length, _ = brute_longest_path(ShapeSpec.rect(4, 6), (1, 1), (4, 6))
    assert length == 24


def test_deterministic_witness():
    a = brute_longest_path(O53, (1, 1), (5, 3))
    assert a == brute_longest_path(O53, (1, 1), (5, 3))


def test_enumeration_examples():
    o33 = [sp for sp in enumerate_specs(InstanceFilter(9, 3, 3)) if sp.m == sp.n == 3]
    assert o33 == [O333]
    o43 = [sp for sp in enumerate_specs(InstanceFilter(12, 4, 3)) if (sp.m, sp.n) == (4, 3)]
    assert sorted((sp.a, sp.b, sp.k) for sp in o43) == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]
    assert sum(1 for sp, _, _ in enumerate_instances(InstanceFilter(8)) if sp == O333) == 28


def test_enumeration_counts_frozen():
    # frozen from the enumerator and cross-checked by the DP oracle
    assert sum(1 for _ in enumerate_specs(InstanceFilter(20))) == 162
    assert sum(1 for _ in enumerate_instances(InstanceFilter(16))) == 4762


def test_filter_validation():
    with pytest.raises(GridError):
        InstanceFilter(max_vertices=3)


def test_self_consistency_up_to_14():
    for spec in enumerate_specs(InstanceFilter(14, families=("R", "L", "C", "O"))):
        cells = sorted(spec.cells())
        for i, s in enumerate(cells):
            lengths = dp_longest_lengths(spec, s)
            for t in cells[i + 1:]:
                ham = brute_hamiltonian_exists(spec, s, t)
                assert ham == (brute_longest_path(spec, s, t)[0] == len(cells))
                assert ham == (lengths[t] == len(cells))
