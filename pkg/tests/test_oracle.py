from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from icstruct.digraph import Cycle, Digraph, enumerate_cycles, is_acyclic_after_removal
from icstruct.oracle import (OracleRefusal, oracle_mais, oracle_max_disjoint, oracle_min_hitting,
                             run_oracles)
from icstruct.outer_cycles import CycleFamily, build_family


def family(*seqs) -> CycleFamily:
    return CycleFamily(tuple(Cycle.canonical(s) for s in seqs))


def test_dag_mais_is_n():
    g = Digraph.from_arcs(6, [(1, 2), (2, 3), (1, 4), (4, 5), (5, 6), (3, 6)])
    assert oracle_mais(g) == (6, [1, 2, 3, 4, 5, 6])


@pytest.mark.parametrize("n", [2, 3, 7])
def test_single_cycle_mais(n):
    g = Digraph.from_arcs(n, [(v, v % n + 1) for v in range(1, n + 1)])
    size, keep = oracle_mais(g)
    assert size == n - 1 and keep == list(range(2, n + 1))


def test_example2_mais_below_code_length(fixtures):
    s = fixtures["example2"].structure
    size, keep = oracle_mais(s.graph)
    assert size == 9 and size <= s.N - s.K + 1
    assert is_acyclic_after_removal(s.graph, [v for v in s.graph.vertices if v not in keep])


def test_fixture_oracles(fixtures):
    for fx in fixtures.values():
        res = run_oracles(build_family(fx.structure))
        assert res.max_disjoint_size == res.min_hitting_set_size == fx.expected["t"]


def test_witnesses_are_lexicographically_smallest():
    fam = family((1, 2), (3, 4), (5, 6), (1, 3, 5))
    assert oracle_max_disjoint(fam) == (3, [1, 2, 3])
    assert oracle_min_hitting(fam) == (3, [1, 3, 5])


def test_size_bounds_refuse():
    fam = family(*[(2 * k + 1, 2 * k + 2) for k in range(5)])
    with pytest.raises(OracleRefusal):
        oracle_max_disjoint(fam, max_cycles=4)
    with pytest.raises(OracleRefusal):
        oracle_min_hitting(fam, max_cycles=4)
    with pytest.raises(OracleRefusal):
        oracle_mais(Digraph.from_arcs(30, [(1, 2)]))


def brute_mais(g: Digraph) -> int:
    n = g.vertex_count
    best = 0
    for mask in range(1 << n):
        removed = [v for v in g.vertices if not mask >> (v - 1) & 1]
        if bin(mask).count("1") > best and is_acyclic_after_removal(g, removed):
            best = bin(mask).count("1")
    return best


@given(st.integers(min_value=0, max_value=100_000))
@settings(max_examples=40, deadline=None)
def test_mais_matches_subset_scan(seed):
    rng = random.Random(seed)
    n = rng.randint(2, 8)
    arcs = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v and rng.random() < 0.3]
    g = Digraph.from_arcs(n, arcs)
    size, keep = oracle_mais(g)
    assert size == brute_mais(g)
    assert (size == n) == (not enumerate_cycles(g))


@given(st.integers(min_value=0, max_value=100_000))
@settings(max_examples=60, deadline=None)
def test_weak_duality_on_arbitrary_families(seed):
    rng = random.Random(seed)
    cycles = [rng.sample(range(1, 13), rng.randint(2, 5)) for _ in range(rng.randint(1, 8))]
    fam = family(*cycles)
    md, picked = oracle_max_disjoint(fam)
    mh, hit = oracle_min_hitting(fam)
    assert md <= mh
    assert all(set(hit) & fam.vertex_set(j) for j in fam.indices)
    assert len(set().union(*(fam.vertex_set(j) for j in picked))) == sum(len(fam.cycle(j)) for j in picked)


def test_empty_family():
    res = run_oracles(CycleFamily(()))
    assert (res.max_disjoint_size, res.min_hitting_set_size) == (0, 0)
