"""Interlinked-cycle structure checks.

An :class:`ICStructure` is a digraph plus its inner vertex set. ``validate``
evaluates the four structural conditions independently and collects every
violation; :func:`inner_partition` and :func:`check_c1_c2` cover the inner
vertex classification used by the code-length results.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import permutations
from pathlib import Path as FsPath
from typing import Iterable

from .digraph import Arc, Cycle, Digraph, Path, enumerate_cycles, parse_text, paths_between


@dataclass(frozen=True)
class ICStructure:
    graph: Digraph
    inner: frozenset[int]

    def __post_init__(self):
        inner = frozenset(self.inner)
        object.__setattr__(self, "inner", inner)
        if not inner <= set(self.graph.vertices):
            raise ValueError("inner vertices must belong to the digraph")
        if len(inner) < 2:
            raise ValueError("an IC structure needs at least two inner vertices")

    @property
    def N(self) -> int:
        return self.graph.vertex_count

    @property
    def K(self) -> int:
        return len(self.inner)

    @property
    def non_inner(self) -> frozenset[int]:
        return frozenset(self.graph.vertices) - self.inner

    @classmethod
    def from_text(cls, text: str) -> "ICStructure":
        g, inner = parse_text(text)
        return cls(g, inner)

    @classmethod
    def from_file(cls, path: str | FsPath) -> "ICStructure":
        return cls.from_text(FsPath(path).read_text())


def i_paths(s: ICStructure, i: int, j: int) -> list[Path]:
    """I-paths from ``i`` to ``j``: no inner vertex in the interior."""
    if i == j or i not in s.inner or j not in s.inner:
        raise ValueError("i and j must be distinct inner vertices")
    return paths_between(s.graph, i, j, s.inner - {i, j})


@dataclass
class RootedTree:
    root: int
    arcs: list[Arc]
    is_tree: bool

    def to_dict(self) -> dict:
        return {"root": self.root, "arcs": [list(a) for a in self.arcs], "is_tree": self.is_tree}


@dataclass
class ICValidationReport:
    uncovered_arcs: list[Arc]
    i_cycles: list[Cycle]
    bad_pairs: list[tuple[int, int, int]]  # (i, j, number of I-paths)
    outer_cycles: list[Cycle]
    rooted_trees: list[RootedTree]
    i_path_table: dict[tuple[int, int], list[Path]] = field(repr=False, default_factory=dict)

    @property
    def condition1(self) -> bool:
        return not self.uncovered_arcs

    @property
    def condition2(self) -> bool:
        return not self.i_cycles

    @property
    def condition3(self) -> bool:
        return not self.bad_pairs

    @property
    def condition4(self) -> bool:
        return not self.outer_cycles

    @property
    def with_outer_cycles_ok(self) -> bool:
        """Conditions 1-3 hold (outer cycles allowed)."""
        return self.condition1 and self.condition2 and self.condition3

    def violations(self) -> list[str]:
        msgs = []
        for u, v in self.uncovered_arcs:
            msgs.append(f"condition 1: arc ({u}, {v}) lies on no I-path")
        for c in self.i_cycles:
            msgs.append(f"condition 2: I-cycle {c}")
        for i, j, n in self.bad_pairs:
            msgs.append(f"condition 3: {n} I-paths from {i} to {j}")
        return msgs

    def to_dict(self) -> dict:
        return {
            "condition1": {"holds": self.condition1, "uncovered_arcs": [list(a) for a in self.uncovered_arcs]},
            "condition2": {"holds": self.condition2, "i_cycles": [list(c.vertices) for c in self.i_cycles]},
            "condition3": {
                "holds": self.condition3,
                "bad_pairs": [{"from": i, "to": j, "i_paths": n} for i, j, n in self.bad_pairs],
            },
            "condition4": {"holds": self.condition4, "outer_cycles": [list(c.vertices) for c in self.outer_cycles]},
            "rooted_trees": [t.to_dict() for t in self.rooted_trees],
        }


def validate(s: ICStructure) -> ICValidationReport:
    g = s.graph
    table: dict[tuple[int, int], list[Path]] = {}
    bad_pairs = []
    for i, j in permutations(sorted(s.inner), 2):
        ps = i_paths(s, i, j)
        table[i, j] = ps
        if len(ps) != 1:
            bad_pairs.append((i, j, len(ps)))

    covered: set[Arc] = set()
    trees = []
    for i in sorted(s.inner):
        arcs: set[Arc] = set()
        for j in sorted(s.inner - {i}):
            for p in table[i, j]:
                arcs.update(zip(p, p[1:]))
        covered |= arcs
        trees.append(RootedTree(i, sorted(arcs), _is_tree(i, arcs)))
    uncovered = sorted(g.arcs - covered)

    outer = set(s.non_inner)
    i_cycles = []
    for i in sorted(s.inner):
        i_cycles.extend(c for c in enumerate_cycles(g, outer | {i}) if i in c.vertex_set)
    return ICValidationReport(
        uncovered_arcs=uncovered,
        i_cycles=sorted(i_cycles),
        bad_pairs=bad_pairs,
        outer_cycles=enumerate_cycles(g, outer),
        rooted_trees=trees,
        i_path_table=table,
    )


def _is_tree(root: int, arcs: Iterable[Arc]) -> bool:
    indeg: dict[int, int] = {}
    for _, v in arcs:
        indeg[v] = indeg.get(v, 0) + 1
    return root not in indeg and all(d == 1 for d in indeg.values())


@dataclass(frozen=True)
class InnerPartition:
    v_in: frozenset[int]
    v_out: frozenset[int]
    v_star: frozenset[int]

    def to_dict(self) -> dict:
        return {"in": sorted(self.v_in), "out": sorted(self.v_out), "star": sorted(self.v_star)}


def inner_partition(s: ICStructure, outer_vertices: Iterable[int]) -> InnerPartition:
    targets = frozenset(outer_vertices)
    if not targets <= s.non_inner:
        raise ValueError("outer vertices must be non-inner")
    g = s.graph
    ni = s.non_inner

    def hits(start: int, step) -> bool:
        seen = {w for w in step(start) if w in ni}
        queue = deque(seen)
        while queue:
            v = queue.popleft()
            if v in targets:
                return True
            for w in step(v):
                if w in ni and w not in seen:
                    seen.add(w)
                    queue.append(w)
        return False

    v_out = frozenset(k for k in s.inner if hits(k, g.out_neighbors))
    v_in = frozenset(k for k in s.inner if hits(k, g.in_neighbors))
    return InnerPartition(v_in, v_out, s.inner - v_in - v_out)


@dataclass
class SideCondition:
    holds: bool
    # (p, q, u, v, shared vertices) for the first offending quadruple
    witness: tuple[int, int, int, int, tuple[int, ...]] | None = None
    endpoint_only: bool = False

    def to_dict(self) -> dict:
        d: dict = {"holds": self.holds}
        if self.witness:
            p, q, u, v, shared = self.witness
            d["witness"] = {"p": p, "q": q, "u": u, "v": v, "shared": list(shared),
                            "endpoint_only": self.endpoint_only}
        return d


def check_c1_c2(s: ICStructure, part: InnerPartition,
                report: ICValidationReport | None = None) -> dict[str, SideCondition]:
    """Test side conditions C1 and C2.

    Two I-paths intersect when they share any vertex; the witness records the
    shared vertices and whether they are all path endpoints, since the
    endpoint-only case is the debatable one.
    """
    report = report or validate(s)
    if not report.condition3:
        raise ValueError("C1/C2 need a unique I-path for every inner pair (condition 3 fails)")
    path_of = {k: ps[0] for k, ps in report.i_path_table.items()}

    def scan(first: frozenset[int], second: frozenset[int]) -> SideCondition:
        for p, q in permutations(sorted(first), 2):
            a = path_of[p, q]
            for u, v in permutations(sorted(second), 2):
                if (p, q) == (u, v):
                    continue
                b = path_of[u, v]
                shared = sorted(set(a) & set(b))
                if shared:
                    ends = {p, q, u, v}
                    return SideCondition(False, (p, q, u, v, tuple(shared)), all(x in ends for x in shared))
        return SideCondition(True)

    return {
        "c1": scan(part.v_in | part.v_star, part.v_out),
        "c2": scan(part.v_out | part.v_star, part.v_in),
    }
