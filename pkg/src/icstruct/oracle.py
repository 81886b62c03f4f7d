"""Brute-force ground truth for desk-scale instances.

All three searches are exhaustive with simple pruning and return the
lexicographically smallest optimum so witnesses are stable.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .digraph import Digraph, is_acyclic_after_removal
from .outer_cycles import CycleFamily

MAX_CYCLES = 20
MAX_VERTICES = 24


class OracleRefusal(ValueError):
    """Instance is larger than the configured brute-force bound."""


@dataclass
class OracleResult:
    max_disjoint_size: int
    max_disjoint: list[int]
    min_hitting_set_size: int
    min_hitting_set: list[int]
    mais: int | None = None
    mais_set: list[int] | None = None

    def to_dict(self) -> dict:
        return {
            "max_disjoint_size": self.max_disjoint_size,
            "max_disjoint": self.max_disjoint,
            "min_hitting_set_size": self.min_hitting_set_size,
            "min_hitting_set": self.min_hitting_set,
            "mais": self.mais,
            "mais_set": self.mais_set,
        }


def oracle_max_disjoint(fam: CycleFamily, max_cycles: int = MAX_CYCLES) -> tuple[int, list[int]]:
    if fam.n > max_cycles:
        raise OracleRefusal(f"{fam.n} cycles exceeds the oracle bound of {max_cycles}")
    sets = [fam.vertex_set(j) for j in fam.indices]
    best: list[int] = []

    # include-first DFS meets maximisers in lexicographic order
    def dfs(k: int, picked: list[int], used: frozenset[int]) -> None:
        nonlocal best
        if len(picked) + (len(sets) - k) <= len(best):
            return
        if k == len(sets):
            best = list(picked)
            return
        if not (sets[k] & used):
            picked.append(k + 1)
            dfs(k + 1, picked, used | sets[k])
            picked.pop()
        dfs(k + 1, picked, used)

    dfs(0, [], frozenset())
    return len(best), best


def oracle_min_hitting(fam: CycleFamily, max_cycles: int = MAX_CYCLES) -> tuple[int, list[int]]:
    if fam.n > max_cycles:
        raise OracleRefusal(f"{fam.n} cycles exceeds the oracle bound of {max_cycles}")
    if fam.n == 0:
        return 0, []
    verts = sorted(fam.union_vertices)
    sets = [fam.vertex_set(j) for j in fam.indices]
    highest = [max(s) for s in sets]

    def search(size: int, start: int, chosen: list[int], unhit: list[int]) -> list[int] | None:
        if not unhit:
            return list(chosen)
        if size == 0:
            return None
        floor = verts[start - 1] if start else 0
        # a cycle whose vertices all lie below the next pick can never be hit
        if any(highest[c] <= floor for c in unhit):
            return None
        # disjoint unhit cycles (over still-pickable vertices) each need their own pick
        used: set[int] = set()
        packed = 0
        for avail in sorted((frozenset(v for v in sets[c] if v > floor) for c in unhit), key=len):
            if not avail & used:
                used |= avail
                packed += 1
        if packed > size:
            return None
        for x in range(start, len(verts)):
            v = verts[x]
            chosen.append(v)
            found = search(size - 1, x + 1, chosen, [c for c in unhit if v not in sets[c]])
            chosen.pop()
            if found is not None:
                return found
        return None

    for size in range(1, fam.n + 1):
        found = search(size, 0, [], list(range(len(sets))))
        if found is not None:
            return size, found
    raise AssertionError("unreachable: one vertex per cycle always hits")


def oracle_mais(g: Digraph, max_vertices: int = MAX_VERTICES) -> tuple[int, list[int]]:
    """Order of a maximum acyclic induced sub-digraph, with one such vertex set.

    Searches removal sets by ascending size in lexicographic order; the first
    success gives the lexicographically smallest minimum removal set.
    """
    n = g.vertex_count
    if n > max_vertices:
        raise OracleRefusal(f"{n} vertices exceeds the MAIS oracle bound of {max_vertices}")
    verts = list(g.vertices)

    def search(size: int, start: int, removed: list[int]) -> list[int] | None:
        gone = set(removed)
        cyc = _find_cycle(g, gone)
        if cyc is None:
            return list(removed)
        if size == 0:
            return None
        floor = verts[start - 1] if start else 0
        # later picks are all above ``floor``; a cycle below it is permanent
        if _find_cycle(g, gone, below=floor + 1) is not None:
            return None
        if _disjoint_cycle_bound(g, gone) > size:
            return None
        for x in range(start, n):
            removed.append(verts[x])
            found = search(size - 1, x + 1, removed)
            removed.pop()
            if found is not None:
                return found
        return None

    for size in range(0, n + 1):
        found = search(size, 0, [])
        if found is not None:
            keep = [v for v in verts if v not in set(found)]
            assert is_acyclic_after_removal(g, found)
            return len(keep), keep
    raise AssertionError("unreachable: removing every vertex leaves an acyclic graph")


def _find_cycle(g: Digraph, gone: set[int], below: int | None = None) -> list[int] | None:
    """Some cycle avoiding ``gone`` (and, if given, using only ids < below)."""
    ok = [v for v in g.vertices if v not in gone and (below is None or v < below)]
    okset = set(ok)
    color = dict.fromkeys(ok, 0)
    parent: dict[int, int] = {}
    for root in ok:
        if color[root]:
            continue
        stack = [(root, iter(g.out_neighbors(root)))]
        color[root] = 1
        while stack:
            v, it = stack[-1]
            w = next(it, None)
            if w is None:
                color[v] = 2
                stack.pop()
                continue
            if w not in okset:
                continue
            if color[w] == 1:
                cyc = [v]
                while cyc[-1] != w:
                    cyc.append(parent[cyc[-1]])
                return cyc[::-1]
            if color[w] == 0:
                color[w] = 1
                parent[w] = v
                stack.append((w, iter(g.out_neighbors(w))))
    return None


def _disjoint_cycle_bound(g: Digraph, gone: set[int]) -> int:
    # greedy packing of shortest cycles: a valid lower bound on removals needed
    gone = set(gone)
    count = 0
    while True:
        cyc = _shortest_cycle(g, gone)
        if cyc is None:
            return count
        count += 1
        gone |= set(cyc)


def _shortest_cycle(g: Digraph, gone: set[int]) -> list[int] | None:
    best = None
    for s in g.vertices:
        if s in gone:
            continue
        prev = {s: None}
        queue = deque([s])
        hit = None
        while queue and hit is None:
            v = queue.popleft()
            for w in g.out_neighbors(v):
                if w in gone:
                    continue
                if w == s:
                    hit = v
                    break
                if w not in prev:
                    prev[w] = v
                    queue.append(w)
        if hit is not None:
            cyc = [hit]
            while prev[cyc[-1]] is not None:
                cyc.append(prev[cyc[-1]])
            if best is None or len(cyc) < len(best):
                best = cyc
    return best


def run_oracles(fam: CycleFamily, g: Digraph | None = None, max_cycles: int = MAX_CYCLES,
                max_vertices: int = MAX_VERTICES) -> OracleResult:
    md, mdw = oracle_max_disjoint(fam, max_cycles)
    mh, mhw = oracle_min_hitting(fam, max_cycles)
    res = OracleResult(md, mdw, mh, mhw)
    if g is not None:
        res.mais, res.mais_set = oracle_mais(g, max_vertices)
    return res
