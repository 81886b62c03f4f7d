"""Side-information digraphs: storage, paths, elementary cycles, text I/O.

Vertices are the integers ``1..N``. An arc ``(u, v)`` means receiver ``u``
already holds message ``x_v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

Path = tuple[int, ...]
Arc = tuple[int, int]


class ParseError(ValueError):
    """Malformed digraph text. Carries 1-based ``line`` and ``column``."""

    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Digraph:
    vertex_count: int
    arcs: frozenset[Arc]
    _out: dict[int, tuple[int, ...]] = field(init=False, repr=False, compare=False)
    _in: dict[int, tuple[int, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.vertex_count < 1:
            raise ValueError("a digraph needs at least one vertex")
        arcs = frozenset((int(u), int(v)) for u, v in self.arcs)
        out: dict[int, list[int]] = {v: [] for v in self.vertices}
        inn: dict[int, list[int]] = {v: [] for v in self.vertices}
        for u, v in arcs:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if u not in out or v not in out:
                raise ValueError(f"arc ({u}, {v}) has an undeclared endpoint")
            out[u].append(v)
            inn[v].append(u)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "_out", {v: tuple(sorted(n)) for v, n in out.items()})
        object.__setattr__(self, "_in", {v: tuple(sorted(n)) for v, n in inn.items()})

    @classmethod
    def from_arcs(cls, vertex_count: int, arcs: Iterable[Arc]) -> "Digraph":
        return cls(vertex_count, frozenset(arcs))

    @property
    def vertices(self) -> range:
        return range(1, self.vertex_count + 1)

    def out_neighbors(self, v: int) -> tuple[int, ...]:
        return self._out[v]

    def in_neighbors(self, v: int) -> tuple[int, ...]:
        return self._in[v]

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def with_arcs(self, extra: Iterable[Arc], vertex_count: int | None = None) -> "Digraph":
        return Digraph(vertex_count or self.vertex_count, self.arcs | frozenset(extra))

    def relabel(self, mapping: dict[int, int]) -> "Digraph":
        """Apply a permutation of ``1..N`` to every arc."""
        if sorted(mapping) != list(self.vertices) or sorted(mapping.values()) != list(self.vertices):
            raise ValueError("mapping must be a permutation of the vertex set")
        return Digraph(self.vertex_count, frozenset((mapping[u], mapping[v]) for u, v in self.arcs))


@dataclass(frozen=True, order=True)
class Cycle:
    """Elementary cycle, rotated so the smallest vertex id comes first."""

    vertices: tuple[int, ...]

    @classmethod
    def canonical(cls, seq: Iterable[int]) -> "Cycle":
        seq = tuple(seq)
        if len(seq) < 2 or len(set(seq)) != len(seq):
            raise ValueError(f"not an elementary cycle: {seq}")
        k = seq.index(min(seq))
        return cls(seq[k:] + seq[:k])

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @property
    def arcs(self) -> tuple[Arc, ...]:
        vs = self.vertices
        return tuple((vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs)))

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.vertices)

    def __str__(self) -> str:
        return " -> ".join(map(str, self.vertices + self.vertices[:1]))


def enumerate_cycles(g: Digraph, restrict_to: Iterable[int] | None = None) -> list[Cycle]:
    """All elementary cycles inside ``restrict_to`` (default: every vertex).

    Each cycle is reported once, from its smallest vertex, and the list is
    sorted lexicographically.
    """
    allowed = set(g.vertices) if restrict_to is None else set(restrict_to)
    if not allowed <= set(g.vertices):
        raise ValueError("restrict_to contains undeclared vertices")

    found: list[Cycle] = []
    for start in sorted(allowed):
        # only vertices above ``start`` may appear, so each cycle is hit once
        pool = {v for v in allowed if v > start}
        reach = _backward_closure(g, start, pool)
        stack: list[tuple[int, Iterator[int]]] = [(start, iter(g.out_neighbors(start)))]
        path = [start]
        on_path = {start}
        while stack:
            v, it = stack[-1]
            nxt = next(it, None)
            if nxt is None:
                stack.pop()
                on_path.discard(path.pop())
                continue
            if nxt == start:
                found.append(Cycle(tuple(path)))
            elif nxt in reach and nxt not in on_path:
                path.append(nxt)
                on_path.add(nxt)
                stack.append((nxt, iter(g.out_neighbors(nxt))))
    return sorted(found)


def _backward_closure(g: Digraph, target: int, pool: set[int]) -> set[int]:
    # vertices of ``pool`` that can still get back to ``target`` inside pool
    seen: set[int] = set()
    queue = deque(u for u in g.in_neighbors(target) if u in pool)
    seen.update(queue)
    while queue:
        v = queue.popleft()
        for u in g.in_neighbors(v):
            if u in pool and u not in seen:
                seen.add(u)
                queue.append(u)
    return seen


def paths_between(g: Digraph, src: int, dst: int, forbidden_interior: Iterable[int] = ()) -> list[Path]:
    """Every simple path ``src -> ... -> dst`` whose interior avoids the forbidden set."""
    if src == dst:
        raise ValueError("src and dst must differ")
    forbidden = set(forbidden_interior)
    if src in forbidden or dst in forbidden:
        raise ValueError("endpoints may not be forbidden")

    out: list[Path] = []

    def walk(v: int, path: list[int], seen: set[int]) -> None:
        for w in g.out_neighbors(v):
            if w == dst:
                out.append(tuple(path) + (dst,))
            elif w not in seen and w not in forbidden:
                seen.add(w)
                path.append(w)
                walk(w, path, seen)
                path.pop()
                seen.discard(w)

    walk(src, [src], {src})
    return sorted(out)


def reachable(g: Digraph, sources: Iterable[int], allowed: Iterable[int] | None = None,
              arcs: Iterable[Arc] | None = None) -> set[int]:
    """Vertices reachable from ``sources`` (sources included).

    Traversal only steps onto ``allowed`` vertices and, if given, only along
    ``arcs``.
    """
    ok = None if allowed is None else set(allowed)
    if arcs is None:
        succ = g.out_neighbors
    else:
        table: dict[int, list[int]] = {}
        for u, v in arcs:
            table.setdefault(u, []).append(v)
        succ = lambda v: table.get(v, ())  # noqa: E731
    seen = set(sources)
    queue = deque(seen)
    while queue:
        v = queue.popleft()
        for w in succ(v):
            if w not in seen and (ok is None or w in ok):
                seen.add(w)
                queue.append(w)
    return seen


def is_acyclic_after_removal(g: Digraph, removed: Iterable[int] = ()) -> bool:
    """True iff the sub-digraph induced on ``V \\ removed`` has no cycle."""
    gone = set(removed)
    keep = [v for v in g.vertices if v not in gone]
    indeg = {v: 0 for v in keep}
    for u, v in g.arcs:
        if u not in gone and v not in gone:
            indeg[v] += 1
    queue = deque(v for v in keep if indeg[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for w in g.out_neighbors(v):
            if w in indeg:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
    return seen == len(keep)


def induced(g: Digraph, arcs_of: Iterable[Arc]) -> Digraph:
    """Same vertex range, only the given arcs."""
    return Digraph(g.vertex_count, frozenset(arcs_of))


# ---------------------------------------------------------------- text format

def parse_text(text: str) -> tuple[Digraph, frozenset[int]]:
    """Parse ``graph N K`` / ``inner: ...`` / ``arc u v`` records.

    Returns the digraph and the declared inner vertex set.
    """
    header: tuple[int, int] | None = None
    inner: list[int] | None = None
    arcs: list[Arc] = []
    seen_arcs: set[Arc] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        col = len(line) - len(line.lstrip()) + 1
        body = line.strip()
        if header is None:
            parts = body.split()
            if len(parts) != 3 or parts[0] != "graph":
                raise ParseError("expected header 'graph N K'", lineno, col)
            n, k = _ints(parts[1:], lineno, col)
            if n < 1 or k < 0 or k > n:
                raise ParseError(f"bad header values N={n} K={k}", lineno, col)
            header = (n, k)
        elif body.startswith("inner:"):
            if inner is not None:
                raise ParseError("duplicate 'inner:' line", lineno, col)
            inner = _ints(body[len("inner:"):].split(), lineno, col + len("inner:"))
        elif body.split()[0] == "arc":
            parts = body.split()
            if len(parts) != 3:
                raise ParseError("expected 'arc u v'", lineno, col)
            u, v = _ints(parts[1:], lineno, col + 4)
            if not (1 <= u <= header[0] and 1 <= v <= header[0]):
                raise ParseError(f"arc endpoint out of range 1..{header[0]}", lineno, col + 4)
            if u == v:
                raise ParseError("self-loop", lineno, col + 4)
            if (u, v) in seen_arcs:
                raise ParseError(f"duplicate arc ({u}, {v})", lineno, col)
            seen_arcs.add((u, v))
            arcs.append((u, v))
        else:
            raise ParseError(f"unknown record {body.split()[0]!r}", lineno, col)
    if header is None:
        raise ParseError("missing 'graph N K' header", 1)
    if inner is None:
        raise ParseError("missing 'inner:' line", 1)
    n, k = header
    if len(set(inner)) != len(inner) or any(not 1 <= v <= n for v in inner):
        raise ParseError("inner vertices must be distinct ids in range", 1)
    if len(inner) != k:
        raise ParseError(f"header says K={k} but {len(inner)} inner vertices listed", 1)
    return Digraph(n, frozenset(arcs)), frozenset(inner)


def _ints(tokens: list[str], line: int, col: int) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError as exc:
        raise ParseError(f"expected integers, got {' '.join(tokens)!r}", line, col) from exc


def format_text(g: Digraph, inner: Iterable[int], notes: dict[Arc, str] | None = None,
                comment: str | None = None) -> str:
    inner = sorted(inner)
    lines = []
    if comment:
        lines.extend(f"# {c}" if c else "#" for c in comment.splitlines())
    lines.append(f"graph {g.vertex_count} {len(inner)}")
    lines.append("inner: " + " ".join(map(str, inner)))
    for u, v in g.sorted_arcs():
        note = (notes or {}).get((u, v))
        lines.append(f"arc {u} {v}" + (f"  # {note}" if note else ""))
    return "\n".join(lines) + "\n"


def to_dot(g: Digraph, inner: Iterable[int] = (), highlight: Iterable[int] = ()) -> str:
    inner = set(inner)
    marked = set(highlight)
    lines = ["digraph G {"]
    for v in g.vertices:
        attrs = []
        if v in inner:
            attrs.append("shape=box")
        if v in marked:
            attrs.append('style=filled, fillcolor="#f4cccc"')
        lines.append(f"  {v}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for u, v in g.sorted_arcs():
        lines.append(f"  {u} -> {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
