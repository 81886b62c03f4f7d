from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from icstruct.codec import (IndexCode, ReceiverSpec, bits, build_toj_code, check_decodable, gf2_rank,
                            length_report, receivers, solve_gf2, support)
from icstruct.disjoint import max_disjoint
from icstruct.oracle import oracle_mais
from icstruct.outer_cycles import build_family
from tests.test_ic_check import complete


def test_bits_and_support():
    assert bits([1, 3]) == 0b101 and support(0b101) == [1, 3]


def test_solve_gf2():
    gens = [0b011, 0b110]
    assert solve_gf2(0b101, gens) == 0b11
    assert solve_gf2(0b001, gens) is None
    assert solve_gf2(0, gens) == 0
    assert gf2_rank([0b011, 0b110, 0b101]) == 2


def test_code_rows_and_supports(fixtures):
    s = fixtures["example1"].structure
    code = build_toj_code(s)
    assert code.length == s.N - s.K + 1 == 12
    assert support(code.rows[0]) == sorted(s.inner)
    for row, j in zip(code.rows[1:], sorted(s.non_inner)):
        assert support(row) == sorted({j, *s.graph.out_neighbors(j)})


def test_decodable_without_outer_cycles():
    s = complete(4)
    verdicts = check_decodable(build_toj_code(s), receivers(s.graph))
    assert all(v.decodable for v in verdicts)


@pytest.mark.parametrize("name", ["example1", "example2", "example3"])
def test_decodable_on_shared_vertex_examples(fixtures, name):
    s = fixtures[name].structure
    verdicts = check_decodable(build_toj_code(s), receivers(s.graph))
    assert all(v.decodable for v in verdicts)


def test_example4_source_receiver_cannot_decode(fixtures):
    # Receiver 1 knows x2, x3 and x10. Cancelling x4 from the inner row forces
    # rows 18, 9, 13, 17, 16, 15 in turn, and x15 then has no further row to
    # cancel it, so x1 lies outside the span.
    s = fixtures["example4"].structure
    verdicts = {v.receiver: v for v in check_decodable(build_toj_code(s), receivers(s.graph))}
    assert [r for r, v in verdicts.items() if not v.decodable] == [1, 2, 3]
    assert all(verdicts[r].decodable for r in range(4, s.N + 1))


def test_decode_witness_reconstructs_target(fixtures):
    s = fixtures["example2"].structure
    code = build_toj_code(s)
    for v in check_decodable(code, receivers(s.graph)):
        acc = 0
        for r in v.rows_used:
            acc ^= code.rows[r]
        for k in v.known_used:
            acc ^= 1 << (k - 1)
        assert acc == 1 << (v.receiver - 1)


@given(st.integers(min_value=0, max_value=100_000))
@settings(max_examples=40, deadline=None)
def test_decodability_invariant_under_row_permutation_and_sums(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 9)
    rows = [rng.randrange(1, 1 << n) for _ in range(rng.randint(1, n))]
    code = IndexCode(n, tuple(rows), ("r",) * len(rows))
    recv = [ReceiverSpec(v, frozenset(rng.sample([u for u in range(1, n + 1) if u != v], rng.randint(0, n - 1))))
            for v in range(1, n + 1)]
    base = [x.decodable for x in check_decodable(code, recv)]
    shuffled = rows[:]
    rng.shuffle(shuffled)
    assert [x.decodable for x in check_decodable(IndexCode(n, tuple(shuffled), code.description), recv)] == base
    extra = rows[rng.randrange(len(rows))] ^ rows[rng.randrange(len(rows))]
    if not extra:
        return
    grown = IndexCode(n, tuple(rows + [extra]), code.description + ("sum",))
    assert [x.decodable for x in check_decodable(grown, recv)] == base


def test_mutual_pair_decodes_from_one_xor():
    code = IndexCode.from_strings(["11"])
    recv = [ReceiverSpec(1, frozenset({2})), ReceiverSpec(2, frozenset({1}))]
    assert all(v.decodable for v in check_decodable(code, recv))


def test_empty_code_without_side_information():
    verdicts = check_decodable(IndexCode(2, (), ()), [ReceiverSpec(1, frozenset())])
    assert not verdicts[0].decodable


def test_all_inner_structure_gives_one_row():
    s = complete(3)
    code = build_toj_code(s)
    assert code.rows == (0b111,)


def test_dimension_checks():
    code = IndexCode.from_strings(["110", "011"])
    assert code.row_strings() == ["110", "011"]
    with pytest.raises(ValueError):
        check_decodable(code, [ReceiverSpec(4, frozenset())])
    with pytest.raises(ValueError):
        IndexCode.from_strings(["11", "011"])
    with pytest.raises(ValueError):
        ReceiverSpec(1, frozenset({1}))
    with pytest.raises(ValueError):
        IndexCode.from_strings(["000"])
    with pytest.raises(ValueError):
        IndexCode(2, (0b100,), ("r",))


@pytest.mark.parametrize("name, bound, savings", [
    ("example1", 12, 0), ("example2", 9, 0), ("example3", 14, 0), ("example4", 12, 1), ("example5", 25, 1),
])
def test_length_report(fixtures, name, bound, savings):
    s = fixtures[name].structure
    t = max_disjoint(s, build_family(s)).t
    rep = length_report(s, t)
    assert (rep.interlocked_bound, rep.savings) == (bound, savings)
    assert rep.savings == rep.toj_length - rep.interlocked_bound


@pytest.mark.parametrize("name", ["example1", "example2", "example3", "example4"])
def test_mais_sandwich(fixtures, name):
    s = fixtures[name].structure
    t = max_disjoint(s, build_family(s)).t
    rep = length_report(s, t, oracle_mais(s.graph)[0])
    assert rep.sandwich_holds


def test_length_report_rejects_zero_t(fixtures):
    with pytest.raises(ValueError):
        length_report(fixtures["example1"].structure, 0)
