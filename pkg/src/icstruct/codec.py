"""Binary XOR index code for IC structures and GF(2) decodability.

Coefficient vectors are Python ints: bit ``v - 1`` stands for message ``x_v``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph
from .ic_check import ICStructure


def bits(vertices) -> int:
    out = 0
    for v in vertices:
        out |= 1 << (v - 1)
    return out


def support(vec: int) -> list[int]:
    out, v = [], 1
    while vec:
        if vec & 1:
            out.append(v)
        vec >>= 1
        v += 1
    return out


@dataclass(frozen=True)
class IndexCode:
    width: int
    rows: tuple[int, ...]
    description: tuple[str, ...]

    def __post_init__(self):
        if any(r == 0 for r in self.rows):
            raise ValueError("code rows must be nonzero")
        if any(r >> self.width for r in self.rows):
            raise ValueError(f"row wider than {self.width} messages")

    @property
    def length(self) -> int:
        return len(self.rows)

    def row_strings(self) -> list[str]:
        return ["".join("1" if (r >> c) & 1 else "0" for c in range(self.width)) for r in self.rows]

    @classmethod
    def from_strings(cls, rows: list[str], description: list[str] | None = None) -> "IndexCode":
        widths = {len(r) for r in rows}
        if len(widths) > 1:
            raise ValueError("rows have different widths")
        width = widths.pop() if widths else 0
        vecs = tuple(sum(1 << c for c, ch in enumerate(r) if ch == "1") for r in rows)
        desc = tuple(description or ["row"] * len(rows))
        return cls(width, vecs, desc)

    def to_dict(self) -> dict:
        return {"length": self.length, "rows": self.row_strings(), "description": list(self.description)}


@dataclass(frozen=True)
class ReceiverSpec:
    wants: int
    knows: frozenset[int]

    def __post_init__(self):
        if self.wants in self.knows:
            raise ValueError(f"receiver wants x_{self.wants} which it already knows")


def receivers(g: Digraph) -> list[ReceiverSpec]:
    """Receiver ``i`` wants ``x_i`` and knows its out-neighbours."""
    return [ReceiverSpec(v, frozenset(g.out_neighbors(v))) for v in g.vertices]


def build_toj_code(s: ICStructure) -> IndexCode:
    """One XOR of all inner messages, then ``x_j`` plus its out-neighbours for each non-inner ``j``."""
    if s.K < 2:
        raise ValueError("need at least two inner vertices")
    rows = [bits(s.inner)]
    desc = ["inner: " + " ".join(map(str, sorted(s.inner)))]
    for j in sorted(s.non_inner):
        rows.append(bits([j, *s.graph.out_neighbors(j)]))
        desc.append(f"vertex {j}")
    return IndexCode(s.N, tuple(rows), tuple(desc))


@dataclass
class DecodeVerdict:
    receiver: int
    decodable: bool
    rows_used: list[int] | None = None  # 0-based code rows summed
    known_used: list[int] | None = None  # side-information messages added

    def to_dict(self) -> dict:
        return {"receiver": self.receiver, "decodable": self.decodable,
                "rows_used": self.rows_used, "known_used": self.known_used}


def solve_gf2(target: int, generators: list[int]) -> int | None:
    """Mask of generators XOR-ing to ``target``, or None if outside the span."""
    basis: dict[int, tuple[int, int]] = {}  # pivot bit -> (vector, combination mask)
    for idx, g in enumerate(generators):
        vec, combo = g, 1 << idx
        while vec:
            p = vec.bit_length() - 1
            if p not in basis:
                basis[p] = (vec, combo)
                break
            bv, bc = basis[p]
            vec ^= bv
            combo ^= bc
    vec, combo = target, 0
    while vec:
        p = vec.bit_length() - 1
        if p not in basis:
            return None
        bv, bc = basis[p]
        vec ^= bv
        combo ^= bc
    return combo


def gf2_rank(vectors: list[int]) -> int:
    basis: dict[int, int] = {}
    for vec in vectors:
        while vec:
            p = vec.bit_length() - 1
            if p not in basis:
                basis[p] = vec
                break
            vec ^= basis[p]
    return len(basis)


def check_decodable(code: IndexCode, recv: list[ReceiverSpec]) -> list[DecodeVerdict]:
    out = []
    for r in recv:
        if not 1 <= r.wants <= code.width or any(not 1 <= k <= code.width for k in r.knows):
            raise ValueError(f"receiver {r.wants} refers to messages outside 1..{code.width}")
        known = sorted(r.knows)
        gens = list(code.rows) + [1 << (k - 1) for k in known]
        combo = solve_gf2(1 << (r.wants - 1), gens)
        if combo is None:
            out.append(DecodeVerdict(r.wants, False))
            continue
        picked = support(combo)  # 1-based generator positions
        rows_used = [p - 1 for p in picked if p <= code.length]
        known_used = [known[p - 1 - code.length] for p in picked if p > code.length]
        out.append(DecodeVerdict(r.wants, True, rows_used, known_used))
    return out


@dataclass
class LengthReport:
    N: int
    K: int
    t: int
    toj_length: int
    interlocked_bound: int
    savings: int
    mais: int | None = None

    @property
    def sandwich_holds(self) -> bool | None:
        if self.mais is None:
            return None
        return self.mais <= self.interlocked_bound <= self.toj_length

    def to_dict(self) -> dict:
        return {"N": self.N, "K": self.K, "t": self.t, "toj_length": self.toj_length,
                "interlocked_bound": self.interlocked_bound, "savings": self.savings,
                "mais": self.mais, "sandwich_holds": self.sandwich_holds}


def length_report(s: ICStructure, t: int, mais: int | None = None) -> LengthReport:
    if t < 1:
        raise ValueError("t must be at least 1")
    toj = s.N - s.K + 1
    bound = s.N - s.K + 2 - t
    return LengthReport(s.N, s.K, t, toj, bound, toj - bound, mais)
