"""The five worked example structures and a seeded generator of interlocked structures.

Both use the same recipe. Outer cycles are laid out first. Each cycle that
owns private vertices then gets one entry arc from a dedicated inner vertex
and one exit arc to another dedicated inner vertex. Every remaining ordered
inner pair is joined by a direct arc or a two-arc detour through a relay
vertex, so each pair ends up with exactly one I-path.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib import resources
from itertools import permutations
from typing import Iterable, Sequence

from .digraph import Arc, Digraph, format_text, parse_text
from .ic_check import ICStructure, validate
from .outer_cycles import build_family, central_cycles, check_ilc, verify_lemmas

FIXTURE_NAMES = ("example1", "example2", "example3", "example4", "example5")
MODES = ("shared-path-all", "shared-vertex-all", "chained-through-central")


@dataclass
class Blueprint:
    """Inputs to :func:`assemble`, in final vertex ids."""

    vertex_count: int
    inner: list[int]
    cycles: list[list[int]]
    entries: list[Arc]  # inner -> private cycle vertex
    exits: list[Arc]  # private cycle vertex -> inner
    relays: dict[Arc, int] = field(default_factory=dict)  # inner pair -> relay vertex


def assemble(bp: Blueprint) -> tuple[ICStructure, dict[Arc, str]]:
    """Build the structure and a provenance note for every arc."""
    notes: dict[Arc, str] = {}
    for k, cyc in enumerate(bp.cycles, start=1):
        for a in zip(cyc, cyc[1:] + cyc[:1]):
            notes.setdefault(a, f"outer cycle C_{k}")
    for a in bp.entries:
        notes[a] = "entry into outer cycles"
    for a in bp.exits:
        notes[a] = "exit from outer cycles"

    outs = {u for u, _ in bp.entries}
    ins = {v for _, v in bp.exits}
    for i, j in permutations(sorted(bp.inner), 2):
        if i in outs and j in ins:
            continue  # this pair already routes through the outer cycles
        r = bp.relays.get((i, j))
        if r is None:
            notes[i, j] = "inner link"
        else:
            notes[i, r] = notes[r, j] = f"inner link {i}->{j} via relay"
    g = Digraph(bp.vertex_count, frozenset(notes))
    return ICStructure(g, frozenset(bp.inner)), notes


# ---------------------------------------------------------- example fixtures

def _example_blueprints() -> dict[str, Blueprint]:
    rng13_22 = list(range(13, 23))
    return {
        "example1": Blueprint(
            17, [1, 2, 3, 4, 5, 6],
            cycles=[[11, 12, 15, 16, 17], [11, 12, 10, 9, 8], [11, 12, 13, 14]],
            entries=[(3, 15), (1, 10), (2, 13)],
            exits=[(16, 6), (9, 4), (14, 5)],
            relays={(4, 1): 7},
        ),
        "example2": Blueprint(
            14, [1, 2, 3, 4, 5, 6],
            cycles=[[8, 9, 10], [8, 11, 12], [8, 13, 14]],
            entries=[(3, 9), (2, 11), (1, 13)],
            exits=[(10, 5), (12, 4), (14, 6)],
            relays={(4, 1): 7},
        ),
        "example3": Blueprint(
            19, [1, 2, 3, 4, 5, 6],
            cycles=[[13, 14, 10, 11, 12], [13, 14, 15, 18, 19], [14, 15, 16, 17]],
            entries=[(3, 11), (1, 18), (2, 16)],
            exits=[(12, 6), (19, 4), (17, 5)],
            relays={(4, 1): 7, (5, 2): 8, (6, 3): 9},
        ),
        "example4": Blueprint(
            18, [1, 2, 3, 4, 5, 6],
            cycles=[[12, 13, 14, 15], [12, 13, 10, 11], [14, 15, 16, 17], [13, 9, 18]],
            entries=[(1, 10), (3, 16), (2, 9)],
            exits=[(11, 6), (17, 5), (18, 4)],
            relays={(4, 1): 7, (5, 2): 8},
        ),
        "example5": Blueprint(
            33, [1, 2, 3, 4, 5, 6, 7, 8],
            cycles=[rng13_22, [20, 21, 22] + list(range(23, 30)), [22, 13, 30, 31], [18, 19, 33, 32]],
            entries=[(3, 28), (1, 30), (2, 33)],
            exits=[(29, 5), (31, 6), (32, 4)],
            relays={(4, 1): 9, (5, 2): 10, (6, 3): 11, (7, 8): 12},
        ),
    }


def fixture_text(name: str) -> str:
    """Digraph text for a worked example, with per-arc provenance comments."""
    s, notes = assemble(_example_blueprints()[name])
    for a in _documented_arcs(name):
        notes[a] += " (documented entry/exit path)"
    header = (f"{name}: reconstructed side-information digraph.\n"
              "Cycle vertex sets follow the worked example; entry/exit arcs are the\n"
              "documented inner<->outer paths; inner links and relays are reconstruction choices.")
    return format_text(s.graph, s.inner, notes, header)


def _documented_arcs(name: str) -> list[Arc]:
    bp = _example_blueprints()[name]
    return list(bp.entries) + list(bp.exits)


@dataclass
class Fixture:
    name: str
    structure: ICStructure
    expected: dict


def load_fixture(name: str) -> Fixture:
    if name not in FIXTURE_NAMES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURE_NAMES)}")
    pkg = resources.files("icstruct") / "fixtures"
    g, inner = parse_text((pkg / f"{name}.txt").read_text())
    expected = json.loads((pkg / f"{name}.json").read_text())
    s = ICStructure(g, inner)
    if expected["N"] != s.N or expected["K"] != s.K:
        raise ValueError(f"fixture {name}: N/K do not match the expected record")
    return Fixture(name, s, expected)


def fixture_path(name: str):
    return resources.files("icstruct") / "fixtures" / f"{name}.txt"


def example_order(fx: Fixture, fam):
    """Relabel a family into the cycle numbering of the expected record."""
    order = [fam.index_of(vs) for vs in fx.expected["cycles"]]
    return fam.permuted(order)


# ----------------------------------------------------------------- generator

class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class GeneratorConfig:
    num_cycles: tuple[int, int] = (2, 5)
    cycle_length: tuple[int, int] = (3, 6)
    sharing_mode: str = "chained-through-central"
    inner_count: tuple[int, int] = (2, 12)  # raised to 2 per cycle when too small
    seed: int = 0
    relay_count: tuple[int, int] = (0, 2)
    max_retries: int = 25

    def __post_init__(self):
        if self.sharing_mode not in MODES:
            raise ValueError(f"unknown sharing mode {self.sharing_mode!r}")
        for name in ("num_cycles", "cycle_length", "inner_count", "relay_count"):
            lo, hi = getattr(self, name)
            if lo > hi:
                raise ValueError(f"{name}: empty range {lo}..{hi}")
        if self.num_cycles[0] < 1 or self.cycle_length[0] < 2:
            raise ValueError("need at least one cycle of length two")


@dataclass
class Generated:
    structure: ICStructure
    notes: dict[Arc, str]
    expected: dict


def generate(config: GeneratorConfig) -> Generated:
    rng = random.Random(config.seed)
    reason = "no attempt made"
    for _ in range(config.max_retries):
        bp, meta = _draw(config, rng)
        s, notes = assemble(bp)
        reason = _rejection_reason(s)
        if reason is None:
            fam = build_family(s)
            expected = {
                "N": s.N, "K": s.K, "seed": config.seed, "mode": config.sharing_mode,
                "cycles": [sorted(c.vertex_set) for c in fam.cycles],
                "central": central_cycles(fam), "t": meta["t"],
            }
            return Generated(s, notes, expected)
    raise GenerationError(f"gave up after {config.max_retries} attempts: {reason}")


def _rejection_reason(s: ICStructure) -> str | None:
    rep = validate(s)
    if not rep.with_outer_cycles_ok:
        return "; ".join(rep.violations()[:3])
    fam = build_family(s)
    if fam.n == 0:
        return None
    if not check_ilc(fam).holds:
        return "interlocking condition fails"
    if not central_cycles(fam):
        return "no central cycle"
    lem = verify_lemmas(s, fam)
    if not lem.lemma22.ok:
        return "missing private vertices or inner paths for some cycle"
    return None


def _span(rng: random.Random, bounds: tuple[int, int]) -> int:
    return rng.randint(*bounds)


def _draw(cfg: GeneratorConfig, rng: random.Random) -> tuple[Blueprint, dict]:
    n = _span(rng, cfg.num_cycles)
    lo_len, hi_len = cfg.cycle_length
    counter = iter(range(1, 10**6))
    fresh = lambda: next(counter)  # noqa: E731  (temporary labels)

    def private(extra_lo: int = 1) -> list[int]:
        size = rng.randint(max(extra_lo, lo_len - 1), max(extra_lo, hi_len - 1))
        return [fresh() for _ in range(size)]

    cycles: list[list[int]] = []
    privates: list[list[int]] = []
    mode = cfg.sharing_mode
    t = 1
    if mode == "shared-vertex-all":
        anchor = fresh()
        for _ in range(n):
            p = private()
            cycles.append([anchor] + p)
            privates.append(p)
    elif mode == "shared-path-all":
        path = [fresh() for _ in range(rng.randint(2, max(2, lo_len - 1)))]
        for _ in range(n):
            p = private()
            cycles.append(path + p)
            privates.append(p)
    else:
        satellites = n - 1
        groups = rng.randint(1, satellites) if satellites else 0
        members = [[] for _ in range(groups)]
        for s_idx in range(satellites):
            members[s_idx % groups if s_idx < groups else rng.randrange(groups)].append(s_idx)
        central: list[int] = []
        attach: list[list[int]] = []
        for gi in range(groups):
            block = [fresh() for _ in range(rng.randint(1, 3))]
            anchor_pos = rng.randrange(len(block))
            for _ in members[gi]:
                a = rng.randint(0, anchor_pos)
                b = rng.randint(anchor_pos, len(block) - 1)
                attach.append(block[a:b + 1])
            central.extend(block)
            if rng.random() < 0.5:
                central.append(fresh())  # gap vertex between blocks
        central_private = [fresh() for _ in range(rng.randint(1, 2))]
        if len(central) + len(central_private) < 2:
            central_private.append(fresh())
        central.extend(central_private)
        cycles.append(central)
        privates.append(central_private)
        for seg in attach:
            p = private()
            cycles.append(seg + p)
            privates.append(p)
        t = groups if groups >= 2 else 1

    # inner vertices: one source and one sink per cycle, plus unattached ones
    need = 2 * len(privates)
    k = max(need, _span(rng, cfg.inner_count), 2)
    inner_tmp = [fresh() for _ in range(k)]
    sources, sinks = inner_tmp[:len(privates)], inner_tmp[len(privates):need]
    entries, exits = [], []
    for p, src, dst in zip(privates, sources, sinks):
        e = rng.randrange(len(p))
        x = rng.randrange(e, len(p))
        entries.append((src, p[e]))
        exits.append((p[x], dst))

    linked = [(i, j) for i, j in permutations(inner_tmp, 2) if not (i in sources and j in sinks)]
    relays = {}
    for pair in rng.sample(linked, min(len(linked), _span(rng, cfg.relay_count))):
        relays[pair] = fresh()

    # relabel: inner -> 1..K, everything else -> K+1..N, both shuffled
    others = sorted({v for c in cycles for v in c} | set(relays.values()))
    inner_ids = list(range(1, k + 1))
    other_ids = list(range(k + 1, k + 1 + len(others)))
    rng.shuffle(inner_ids)
    rng.shuffle(other_ids)
    m = dict(zip(inner_tmp, inner_ids)) | dict(zip(others, other_ids))
    bp = Blueprint(
        vertex_count=k + len(others),
        inner=sorted(m[v] for v in inner_tmp),
        cycles=[[m[v] for v in c] for c in cycles],
        entries=[(m[a], m[b]) for a, b in entries],
        exits=[(m[a], m[b]) for a, b in exits],
        relays={(m[a], m[b]): m[r] for (a, b), r in relays.items()},
    )
    return bp, {"t": t}


def write_generated(gen: Generated, stem: str) -> tuple[str, str]:
    """Write ``<stem>.txt`` and ``<stem>.json``; returns both paths."""
    comment = f"generated: seed={gen.expected['seed']} mode={gen.expected['mode']}"
    txt = format_text(gen.structure.graph, gen.structure.inner, gen.notes, comment)
    js = json.dumps(gen.expected, indent=2) + "\n"
    with open(f"{stem}.txt", "w") as fh:
        fh.write(txt)
    with open(f"{stem}.json", "w") as fh:
        fh.write(js)
    return f"{stem}.txt", f"{stem}.json"


def corpus(seeds: Iterable[int] = range(1, 201), max_cycles: int = 10) -> list[Generated]:
    """Mixed-mode generated structures used by the test suite."""
    out = []
    for seed in seeds:
        mode = MODES[seed % len(MODES)]
        cfg = GeneratorConfig(num_cycles=(1, max_cycles), sharing_mode=mode, seed=seed,
                              cycle_length=(2, 5), inner_count=(2, 8))
        out.append(generate(cfg))
    return out


def structures_from(items: Sequence) -> list[ICStructure]:
    return [x.structure if isinstance(x, (Generated, Fixture)) else x for x in items]
