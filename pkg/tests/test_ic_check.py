from __future__ import annotations

import random
from itertools import permutations

import pytest

from icstruct.digraph import Digraph
from icstruct.ic_check import (ICStructure, check_c1_c2, i_paths, inner_partition, validate)
from icstruct.outer_cycles import build_family


def structure(n, inner, arcs) -> ICStructure:
    return ICStructure(Digraph.from_arcs(n, arcs), frozenset(inner))


def complete(k: int) -> ICStructure:
    return structure(k, range(1, k + 1), permutations(range(1, k + 1), 2))


def crossing() -> ICStructure:
    # out {1,2}, in {3,4}, star {5,6}; outer 2-cycle 7<->8; relay 9 shared by 5->6 and 1->2
    routed = {(1, 3), (1, 4), (2, 3), (2, 4), (1, 6), (1, 2), (5, 6), (5, 2)}
    arcs = [(u, v) for u, v in permutations(range(1, 7), 2) if (u, v) not in routed]
    arcs += [(1, 7), (7, 8), (8, 7), (8, 3), (7, 4), (2, 8), (5, 9), (1, 9), (9, 6), (9, 2)]
    return structure(9, range(1, 7), arcs)


def test_complete_inner_digraph_is_valid():
    s = complete(4)
    rep = validate(s)
    assert rep.condition1 and rep.condition2 and rep.condition3 and rep.condition4
    assert all(t.is_tree for t in rep.rooted_trees)
    assert rep.violations() == []


def test_example1_conditions(fixtures):
    rep = validate(fixtures["example1"].structure)
    assert rep.with_outer_cycles_ok
    assert not rep.condition4 and len(rep.outer_cycles) == 3


def test_i_cycle_detected():
    s = structure(3, [1, 2], [(1, 2), (2, 1), (1, 3), (3, 1)])
    rep = validate(s)
    assert not rep.condition2
    assert [c.vertices for c in rep.i_cycles] == [(1, 3)]
    # arc 1->3 cannot continue to the other inner vertex
    assert (1, 3) in rep.uncovered_arcs
    assert any("condition 2" in m for m in rep.violations())


def test_duplicate_route_breaks_uniqueness():
    s = structure(4, [1, 2], [(1, 3), (3, 2), (1, 4), (4, 2), (2, 1)])
    rep = validate(s)
    assert rep.condition1 and rep.condition2
    assert rep.bad_pairs == [(1, 2, 2)]
    assert len(i_paths(s, 1, 2)) == 2


def test_missing_route_breaks_uniqueness():
    s = structure(3, [1, 2, 3], [(1, 2), (2, 3), (3, 1)])
    rep = validate(s)
    # 1 -> 2 -> 3 passes through an inner vertex, so it is no I-path
    assert rep.bad_pairs == [(1, 3, 0), (2, 1, 0), (3, 2, 0)]


def test_i_paths_argument_checks():
    s = complete(3)
    with pytest.raises(ValueError):
        i_paths(s, 1, 1)


def test_structure_needs_two_inner_vertices():
    with pytest.raises(ValueError):
        structure(2, [1], [(1, 2)])


def test_partition_of_examples(fixtures):
    for name in ("example1", "example2", "example3", "example4"):
        s = fixtures[name].structure
        part = inner_partition(s, build_family(s).union_vertices)
        assert part.v_out == {1, 2, 3} and part.v_in == {4, 5, 6} and not part.v_star
    s = fixtures["example5"].structure
    part = inner_partition(s, build_family(s).union_vertices)
    assert part.v_star == {7, 8}


def test_star_only_structure_satisfies_side_conditions_vacuously():
    s = complete(3)
    part = inner_partition(s, [])
    assert part.v_star == s.inner
    verdict = check_c1_c2(s, part)
    assert verdict["c1"].holds and verdict["c2"].holds


def test_crossing_fixture_violates_c1():
    s = crossing()
    rep = validate(s)
    assert rep.with_outer_cycles_ok
    part = inner_partition(s, build_family(s).union_vertices)
    assert (part.v_out, part.v_in, part.v_star) == ({1, 2}, {3, 4}, {5, 6})
    verdict = check_c1_c2(s, part, rep)
    c1 = verdict["c1"]
    assert not c1.holds and not c1.endpoint_only
    assert 9 in c1.witness[4]
    assert verdict["c2"].holds


def test_example1_side_conditions(fixtures):
    s = fixtures["example1"].structure
    part = inner_partition(s, build_family(s).union_vertices)
    verdict = check_c1_c2(s, part)
    assert verdict["c1"].holds or verdict["c2"].holds


def test_side_conditions_need_condition3():
    s = structure(4, [1, 2], [(1, 3), (3, 2), (1, 4), (4, 2), (2, 1)])
    with pytest.raises(ValueError):
        check_c1_c2(s, inner_partition(s, []))


@pytest.mark.parametrize("seed", range(40))
def test_partition_is_monotone_under_arc_addition(seed, generated):
    rng = random.Random(seed)
    s = generated[seed].structure
    targets = build_family(s).union_vertices
    before = inner_partition(s, targets)
    missing = [(u, v) for u in s.graph.vertices for v in s.graph.vertices
               if u != v and not s.graph.has_arc(u, v)]
    extra = rng.sample(missing, k=min(3, len(missing)))
    bigger = ICStructure(s.graph.with_arcs(extra), s.inner)
    after = inner_partition(bigger, targets)
    assert before.v_in <= after.v_in and before.v_out <= after.v_out


def test_valid_structures_have_unique_i_paths(fixtures, generated):
    for s in [f.structure for f in fixtures.values()] + [g.structure for g in generated[:50]]:
        rep = validate(s)
        assert rep.condition3
        for i, j in permutations(sorted(s.inner), 2):
            assert len(i_paths(s, i, j)) == 1


@pytest.mark.parametrize("seed", range(25))
def test_tree_union_agrees_with_coverage(seed, generated):
    s = generated[seed].structure
    rng = random.Random(seed)
    # sometimes add a stray arc between non-inner vertices to break coverage
    if seed % 2:
        ni = sorted(s.non_inner)
        cand = [(u, v) for u in ni for v in ni if u != v and not s.graph.has_arc(u, v)]
        if cand:
            s = ICStructure(s.graph.with_arcs([rng.choice(cand)]), s.inner)
    rep = validate(s)
    union = set().union(*(set(t.arcs) for t in rep.rooted_trees))
    assert (union == set(s.graph.arcs)) == rep.condition1
