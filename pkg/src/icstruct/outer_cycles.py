"""Outer-cycle families: interlocking, central cycles and the structural lemmas.

Cycle indices are 1-based throughout (``C_1 .. C_n``). The default ordering
of a family is the lexicographic order of canonical cycles; ``permuted``
produces any other labelling.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .digraph import Arc, Cycle, enumerate_cycles, paths_between, reachable
from .ic_check import ICStructure

HOLDS = "holds"
VIOLATED = "violated"
NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class CycleFamily:
    cycles: tuple[Cycle, ...]

    @property
    def n(self) -> int:
        return len(self.cycles)

    @property
    def indices(self) -> range:
        return range(1, self.n + 1)

    def cycle(self, j: int) -> Cycle:
        return self.cycles[j - 1]

    def vertex_set(self, j: int) -> frozenset[int]:
        return self.cycles[j - 1].vertex_set

    @cached_property
    def union_vertices(self) -> frozenset[int]:
        return frozenset().union(*(c.vertex_set for c in self.cycles))

    @cached_property
    def union_arcs(self) -> frozenset[Arc]:
        return frozenset(a for c in self.cycles for a in c.arcs)

    @cached_property
    def intersections(self) -> dict[tuple[int, int], frozenset[int]]:
        return {(i, j): self.vertex_set(i) & self.vertex_set(j)
                for i in self.indices for j in self.indices if i != j}

    def shared(self, i: int, j: int) -> frozenset[int]:
        return self.vertex_set(i) if i == j else self.intersections[i, j]

    @cached_property
    def exclusive(self) -> dict[int, frozenset[int]]:
        out = {}
        for j in self.indices:
            others = frozenset().union(*(self.intersections[i, j] for i in self.indices if i != j))
            out[j] = self.vertex_set(j) - others
        return out

    def neighbours(self, j: int) -> list[int]:
        """Indices of the other cycles meeting ``C_j``."""
        return [i for i in self.indices if i != j and self.intersections[i, j]]

    def permuted(self, order: Sequence[int]) -> "CycleFamily":
        """Relabel: new ``C_k`` is old ``C_{order[k-1]}``."""
        if sorted(order) != list(self.indices):
            raise ValueError("order must be a permutation of the cycle indices")
        return CycleFamily(tuple(self.cycle(j) for j in order))

    def index_of(self, vertex_set: Iterable[int]) -> int:
        want = frozenset(vertex_set)
        for j in self.indices:
            if self.vertex_set(j) == want:
                return j
        raise KeyError(f"no cycle with vertex set {sorted(want)}")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "cycles": [{"index": j, "vertices": list(self.cycle(j).vertices),
                        "exclusive": sorted(self.exclusive[j])} for j in self.indices],
            "union_vertices": sorted(self.union_vertices),
            "intersections": [{"i": i, "j": j, "shared": sorted(self.intersections[i, j])}
                              for i, j in combinations(self.indices, 2)],
        }


def build_family(s: ICStructure) -> CycleFamily:
    return CycleFamily(tuple(enumerate_cycles(s.graph, s.non_inner)))


# ------------------------------------------------------------------ ILC / CCC

def _shared_run(c: Cycle, shared: frozenset[int]) -> tuple[int, ...] | None:
    # shared vertices as one contiguous run along c, else None
    vs = c.vertices
    n = len(vs)
    if len(shared) >= n:
        return None
    start = next(k for k in range(n) if vs[k] in shared and vs[k - 1] not in shared)
    run = []
    k = start
    while vs[k % n] in shared:
        run.append(vs[k % n])
        k += 1
    return tuple(run) if len(run) == len(shared) else None


def ilc_pair(fam: CycleFamily, i: int, k: int) -> bool:
    """Do ``C_i`` and ``C_k`` meet in exactly one common path (or not at all)?"""
    shared = fam.shared(i, k)
    if not shared:
        return True
    a = _shared_run(fam.cycle(i), shared)
    b = _shared_run(fam.cycle(k), shared)
    return a is not None and a == b


@dataclass
class ILCReport:
    holds: bool
    violations: list[tuple[int, int, tuple[int, ...]]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"holds": self.holds,
                "violations": [{"i": i, "k": k, "shared": list(s)} for i, k, s in self.violations]}


def check_ilc(fam: CycleFamily) -> ILCReport:
    bad = [(i, k, tuple(sorted(fam.shared(i, k))))
           for i, k in combinations(fam.indices, 2) if not ilc_pair(fam, i, k)]
    return ILCReport(not bad, bad)


def is_central(fam: CycleFamily, c: int) -> bool:
    vc = fam.vertex_set(c)
    others = [i for i in fam.indices if i != c]
    if any(not (fam.vertex_set(i) & vc) for i in others):
        return False
    return all(not fam.shared(i, j) or fam.shared(i, j) & vc for i, j in combinations(others, 2))


def central_cycles(fam: CycleFamily) -> list[int]:
    return [c for c in fam.indices if is_central(fam, c)]


def common_vertex(fam: CycleFamily, subset: Iterable[int]) -> frozenset[int]:
    subset = list(subset)
    if not subset:
        raise ValueError("subset must be non-empty")
    return frozenset.intersection(*(fam.vertex_set(j) for j in subset))


# ----------------------------------------------------------------------- P2

@dataclass
class P2Report:
    holds: bool
    witness: tuple[int, int, int, int] | None = None  # (k, l, i, j)


def check_p2(s: ICStructure, fam: CycleFamily, c: int) -> P2Report:
    """Every vertex of ``C_k`` reaches every vertex of ``C_l`` inside ``C_k ∪ C_l ∪ C_c``."""
    g = s.graph
    for k in fam.indices:
        for l in fam.indices:
            arcs = set(fam.cycle(k).arcs) | set(fam.cycle(l).arcs) | set(fam.cycle(c).arcs)
            for i in sorted(fam.vertex_set(k)):
                seen = reachable(g, [i], arcs=arcs)
                missing = sorted(fam.vertex_set(l) - seen)
                if missing:
                    return P2Report(False, (k, l, i, missing[0]))
    return P2Report(True)


# ------------------------------------------------------------------- lemmas

@dataclass
class Verdict:
    status: str
    witness: object = None

    @property
    def ok(self) -> bool:
        return self.status != VIOLATED

    def to_dict(self) -> dict:
        return {"status": self.status, "witness": _jsonable(self.witness)}


def _jsonable(x):
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, (set, frozenset)):
        return sorted(_jsonable(v) for v in x)
    return x


@dataclass
class LemmaReport:
    central: int
    lemma21: Verdict
    lemma22: Verdict
    lemma23: Verdict
    lemma24: Verdict
    lemma25: Verdict
    p1: Verdict
    p2: Verdict

    NAMES = ("lemma21", "lemma22", "lemma23", "lemma24", "lemma25", "p1", "p2")

    def verdicts(self) -> dict[str, Verdict]:
        return {name: getattr(self, name) for name in self.NAMES}

    @property
    def all_ok(self) -> bool:
        return all(v.ok for v in self.verdicts().values())

    def to_dict(self) -> dict:
        return {"central": self.central, **{k: v.to_dict() for k, v in self.verdicts().items()}}


def unique_segments(fam: CycleFamily, k: int) -> list[tuple[int, ...]]:
    """Maximal runs of ``C_k`` made of arcs that lie on no other cycle.

    A run is a path of ``C_k``; its endpoints may be shared with other
    cycles, its interior vertices are then unique to ``C_k``.
    """
    other_arcs = {a for j in fam.indices if j != k for a in fam.cycle(j).arcs}
    arcs = fam.cycle(k).arcs
    flags = [a not in other_arcs for a in arcs]
    if all(flags):
        # whole cycle: start at a vertex shared with another cycle, if any
        vs = fam.cycle(k).vertices
        others = frozenset().union(*(fam.vertex_set(j) for j in fam.indices if j != k))
        pos = min((x for x in range(len(vs)) if vs[x] in others), key=lambda x: vs[x], default=0)
        return [vs[pos:] + vs[:pos + 1]]
    n = len(arcs)
    start = next(x for x in range(n) if not flags[x])
    runs, cur = [], []
    for step in range(1, n + 1):
        x = (start + step) % n
        if flags[x]:
            cur.append(arcs[x])
        elif cur:
            runs.append(tuple(a[0] for a in cur) + (cur[-1][1],))
            cur = []
    if cur:
        runs.append(tuple(a[0] for a in cur) + (cur[-1][1],))
    return runs


def _lemma21(fam: CycleFamily, c: int) -> Verdict:
    witness = {}
    status = NOT_APPLICABLE
    for k in fam.indices:
        if k == c or not (fam.vertex_set(k) - fam.shared(c, k)):
            continue
        status = HOLDS if status != VIOLATED else status
        others = frozenset().union(*(fam.vertex_set(j) for j in fam.indices if j != k))
        segs = unique_segments(fam, k)
        witness[k] = {"unique_vertices": sorted(fam.vertex_set(k) - others),
                      "unique_paths": [list(p) for p in segs]}
        if not segs and not witness[k]["unique_vertices"]:
            status = VIOLATED
    return Verdict(status, witness)


def _lemma22(s: ICStructure, fam: CycleFamily, c: int) -> Verdict:
    g = s.graph
    voc = fam.union_vertices
    witness = {}
    status = NOT_APPLICABLE
    for k in fam.indices:
        if k == c:
            continue
        status = HOLDS if status != VIOLATED else status
        excl = fam.exclusive[k]
        entry = _boundary_path(g, s.inner, excl, voc, forward=True)
        exit_ = _boundary_path(g, s.inner, excl, voc, forward=False)
        witness[k] = {"exclusive": sorted(excl), "in_path": entry, "out_path": exit_}
        if not excl or entry is None or exit_ is None:
            status = VIOLATED
    return Verdict(status, witness)


def _boundary_path(g, inner, targets, voc, forward: bool):
    # shortest-lexicographic inner -> target (or target -> inner) path whose
    # interior avoids both V_OC and inner vertices
    for t in sorted(targets):
        forbid = (voc - {t}) | inner
        for i in sorted(inner):
            src, dst = (i, t) if forward else (t, i)
            ps = paths_between(g, src, dst, forbid - {src, dst})
            if ps:
                return list(ps[0])
    return None


def _lemma23(fam: CycleFamily, c: int, centrals: list[int]) -> Verdict:
    scoped, unscoped = {}, {}
    ok = True
    for i in fam.indices:
        group = [i] + fam.neighbours(i)
        common = sorted(common_vertex(fam, group))
        unscoped[i] = common
        if i != c:
            scoped[i] = common
            ok = ok and bool(common)
    multi = None
    if len(centrals) > 1:
        multi = sorted(common_vertex(fam, fam.indices))
        ok = ok and bool(multi)
    return Verdict(HOLDS if ok else VIOLATED,
                   {"scoped": scoped, "unscoped": unscoped, "all_cycles_if_multi_central": multi})


def _lemma24(fam: CycleFamily, centrals: list[int]) -> Verdict:
    if common_vertex(fam, fam.indices):
        return Verdict(NOT_APPLICABLE, {"centrals": centrals})
    return Verdict(HOLDS if len(centrals) == 1 else VIOLATED, {"centrals": centrals})


def star_set(fam: CycleFamily, c: int, j: int) -> list[int]:
    """Cycles other than ``C_c`` meeting ``C_j``, ``C_j`` included."""
    return [i for i in fam.indices if i != c and (i == j or fam.shared(i, j))]


def _lemma25(fam: CycleFamily, c: int) -> Verdict:
    if common_vertex(fam, fam.indices):
        return Verdict(NOT_APPLICABLE)
    witness, ok = {}, True
    for j in fam.indices:
        if j == c:
            continue
        star = star_set(fam, c, j)
        rest = [i for i in fam.indices if i != c and i not in star]
        clashes = [(a, b) for a in rest for b in star if fam.shared(a, b)]
        witness[j] = {"star": star, "rest": rest, "clashes": clashes}
        ok = ok and not clashes
    return Verdict(HOLDS if ok else VIOLATED, witness)


def _p1(fam: CycleFamily, centrals: list[int]) -> Verdict:
    if not common_vertex(fam, fam.indices):
        return Verdict(NOT_APPLICABLE)
    return Verdict(HOLDS if centrals == list(fam.indices) else VIOLATED, {"centrals": centrals})


def verify_lemmas(s: ICStructure, fam: CycleFamily) -> LemmaReport:
    if fam.n == 0:
        raise ValueError("no outer cycles")
    centrals = central_cycles(fam)
    if not check_ilc(fam).holds or not centrals:
        raise ValueError("lemmas assume ILC and at least one central cycle")
    c = centrals[0]
    p2 = check_p2(s, fam, c)
    return LemmaReport(
        central=c,
        lemma21=_lemma21(fam, c),
        lemma22=_lemma22(s, fam, c),
        lemma23=_lemma23(fam, c, centrals),
        lemma24=_lemma24(fam, centrals),
        lemma25=_lemma25(fam, c),
        p1=_p1(fam, centrals),
        p2=Verdict(HOLDS if p2.holds else VIOLATED, p2.witness),
    )
