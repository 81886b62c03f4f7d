"""Maximum set of vertex-disjoint outer cycles for interlocked families."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .ic_check import ICStructure
from .outer_cycles import CycleFamily, central_cycles, check_ilc, common_vertex

log = logging.getLogger(__name__)


class StructureError(RuntimeError):
    """The family breaks a guarantee the algorithm relies on."""


@dataclass
class Step:
    cycle: int
    vertex: int
    dropped: list[int]
    fallback: bool = False

    def to_dict(self) -> dict:
        return {"cycle": self.cycle, "vertex": self.vertex, "dropped": self.dropped, "fallback": self.fallback}


@dataclass
class DisjointCycleResult:
    chosen_cycles: list[int]
    removed_vertices: list[int]
    central: int | None
    shortcut: bool
    trace: list[Step] = field(default_factory=list)

    @property
    def t(self) -> int:
        return len(self.chosen_cycles)

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "chosen_cycles": self.chosen_cycles,
            "removed_vertices": self.removed_vertices,
            "central": self.central,
            "shortcut": self.shortcut,
            "trace": [s.to_dict() for s in self.trace],
        }


def max_disjoint(s: ICStructure | None, fam: CycleFamily) -> DisjointCycleResult:
    """Pick ``C^S`` and ``S`` with ``|C^S| = |S| = t``.

    When all cycles share a vertex the answer is one cycle. Otherwise the
    unique central cycle ``C_c`` is set aside and, while cycles remain, the
    lowest-index remaining cycle ``C_j`` is chosen together with the lowest
    vertex of ``V_{c,j}`` lying on every cycle that meets ``C_j``; all cycles
    through that vertex are then discarded.

    ``s`` is accepted for interface symmetry; only the family is read.
    """
    if fam.n == 0:
        raise ValueError("empty cycle family")
    if not check_ilc(fam).holds:
        raise StructureError("family violates the interlocking condition")
    centrals = central_cycles(fam)
    if not centrals:
        raise StructureError("family has no central cycle")

    everywhere = common_vertex(fam, fam.indices)
    if everywhere:
        v = min(everywhere)
        return DisjointCycleResult([1], [v], centrals[0], True,
                                   [Step(1, v, list(fam.indices))])

    c = centrals[0]
    remaining = [j for j in fam.indices if j != c]
    chosen, removed, trace = [], [], []
    while remaining:
        j = remaining[0]
        group = [j] + fam.neighbours(j)
        common = common_vertex(fam, group)
        pool = common & fam.shared(c, j)
        fallback = False
        if not pool:
            if not common:
                raise StructureError(f"no vertex common to C_{j} and the cycles meeting it")
            log.warning("no common vertex of C_%d inside V_{c,%d}; using one elsewhere on C_%d", j, j, j)
            pool, fallback = common, True
        v = min(pool)
        dropped = [i for i in remaining if v in fam.vertex_set(i)]
        remaining = [i for i in remaining if i not in dropped]
        chosen.append(j)
        removed.append(v)
        trace.append(Step(j, v, dropped, fallback))
    return DisjointCycleResult(chosen, removed, c, False, trace)
