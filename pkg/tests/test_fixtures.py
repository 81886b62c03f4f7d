from __future__ import annotations

import pytest
from hypothesis import given, settings, strategies as st

from icstruct.digraph import format_text
from icstruct.fixtures import (FIXTURE_NAMES, MODES, GeneratorConfig, fixture_text, generate,
                               load_fixture, write_generated)
from icstruct.ic_check import validate
from icstruct.outer_cycles import build_family, central_cycles, check_ilc, common_vertex


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_bundled_text_matches_builder(name):
    from importlib import resources
    bundled = (resources.files("icstruct") / "fixtures" / f"{name}.txt").read_text()
    assert bundled == fixture_text(name)


@pytest.mark.parametrize("name", FIXTURE_NAMES)
def test_fixtures_pass_conditions_1_to_3(fixtures, name):
    rep = validate(fixtures[name].structure)
    assert rep.with_outer_cycles_ok and not rep.condition4


def test_fixture_sizes(fixtures):
    sizes = {n: (f.structure.N, f.structure.K) for n, f in fixtures.items()}
    assert sizes == {"example1": (17, 6), "example2": (14, 6), "example3": (19, 6),
                     "example4": (18, 6), "example5": (33, 8)}


def test_documented_arcs_carry_provenance():
    text = fixture_text("example4")
    assert "arc 1 10  # entry into outer cycles (documented entry/exit path)" in text


def test_unknown_fixture():
    with pytest.raises(KeyError):
        load_fixture("example9")


@given(st.integers(min_value=0, max_value=10_000), st.sampled_from(MODES))
@settings(max_examples=25, deadline=None)
def test_generator_is_deterministic(seed, mode):
    cfg = GeneratorConfig(seed=seed, sharing_mode=mode)
    a, b = generate(cfg), generate(cfg)
    assert a.expected == b.expected
    assert format_text(a.structure.graph, a.structure.inner, a.notes) == \
        format_text(b.structure.graph, b.structure.inner, b.notes)


@pytest.mark.parametrize("mode", MODES)
def test_generated_structures_are_valid(mode):
    for seed in range(15):
        gen = generate(GeneratorConfig(seed=seed, sharing_mode=mode, num_cycles=(1, 6)))
        s = gen.structure
        fam = build_family(s)
        assert validate(s).with_outer_cycles_ok
        assert check_ilc(fam).holds and central_cycles(fam)
        assert fam.n == len(gen.expected["cycles"])
        if mode != "chained-through-central":
            assert gen.expected["t"] == 1 and common_vertex(fam, fam.indices)


def test_requested_cycle_count_is_honoured():
    for seed in range(10):
        gen = generate(GeneratorConfig(seed=seed, num_cycles=(4, 4)))
        assert len(gen.expected["cycles"]) == 4


def test_corpus_is_mixed(generated):
    assert len(generated) == 200
    assert {g.expected["mode"] for g in generated} == set(MODES)
    assert max(len(g.expected["cycles"]) for g in generated) <= 10
    assert any(g.expected["t"] >= 2 for g in generated)


def test_config_validation():
    with pytest.raises(ValueError):
        GeneratorConfig(sharing_mode="ring")
    with pytest.raises(ValueError):
        GeneratorConfig(num_cycles=(3, 2))
    with pytest.raises(ValueError):
        GeneratorConfig(cycle_length=(1, 3))


def test_write_generated(tmp_path):
    gen = generate(GeneratorConfig(seed=3))
    txt, js = write_generated(gen, str(tmp_path / "g"))
    first = (open(txt).read(), open(js).read())
    write_generated(generate(GeneratorConfig(seed=3)), str(tmp_path / "g"))
    assert (open(txt).read(), open(js).read()) == first
    assert first[0].startswith("# generated: seed=3")
