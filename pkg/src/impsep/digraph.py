"""Immutable directed multigraph on dense integer ids, plus the basic queries
every other module builds on: SCCs, reachability, reversal and deletion.

Vertex sets are plain sorted tuples of ints (see :func:`vset`) so that two
sets are equal exactly when their tuples are.
"""

from __future__ import annotations

import heapq
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

VertexSet = tuple[int, ...]


class GraphFormatError(ValueError):
    """Raised when graph text or JSON cannot be parsed."""


def vset(items: Iterable[int] = ()) -> VertexSet:
    """Canonical vertex set: sorted, deduplicated tuple."""
    return tuple(sorted(set(items)))


@dataclass(frozen=True)
class DiGraph:
    n: int
    arcs: tuple[tuple[int, int], ...] = ()
    out_adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    in_adj: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be non-negative")
        arcs = tuple((int(t), int(h)) for t, h in self.arcs)
        out_adj: list[list[int]] = [[] for _ in range(self.n)]
        in_adj: list[list[int]] = [[] for _ in range(self.n)]
        for t, h in arcs:
            if not (0 <= t < self.n and 0 <= h < self.n):
                raise ValueError(f"arc ({t}, {h}) has an endpoint outside [0, {self.n})")
            out_adj[t].append(h)
            in_adj[h].append(t)
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "out_adj", tuple(map(tuple, out_adj)))
        object.__setattr__(self, "in_adj", tuple(map(tuple, in_adj)))

    @property
    def m(self) -> int:
        return len(self.arcs)

    def vertices(self) -> range:
        return range(self.n)

    def successors(self, v: int) -> tuple[int, ...]:
        return self.out_adj[v]

    def predecessors(self, v: int) -> tuple[int, ...]:
        return self.in_adj[v]

    def check_vertices(self, ids: Iterable[int]) -> None:
        for v in ids:
            if not 0 <= v < self.n:
                raise ValueError(f"vertex {v} outside [0, {self.n})")

    # -- serialization -------------------------------------------------

    def to_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{t} {h}" for t, h in self.arcs)
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {"n": self.n, "arcs": [[t, h] for t, h in self.arcs]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def parse_graph(text: str | bytes) -> DiGraph:
    """Parse the ``n m`` / ``tail head`` text format.

    Blank lines and lines starting with ``#`` are skipped.  Errors name the
    offending (1-based) line.
    """
    if isinstance(text, bytes):
        text = text.decode()
    rows: list[tuple[int, list[str]]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        rows.append((lineno, line.split()))
    if not rows:
        raise GraphFormatError("line 1: missing header 'n m'")

    def ints(lineno: int, tokens: list[str]) -> tuple[int, int]:
        if len(tokens) != 2:
            raise GraphFormatError(f"line {lineno}: expected 2 integers, got {len(tokens)} tokens")
        try:
            a, b = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphFormatError(f"line {lineno}: non-integer token in {' '.join(tokens)!r}") from None
        return a, b

    lineno, tokens = rows[0]
    n, m = ints(lineno, tokens)
    if n < 0 or m < 0:
        raise GraphFormatError(f"line {lineno}: negative header value")
    if len(rows) - 1 != m:
        raise GraphFormatError(f"line {lineno}: header declares {m} arcs, found {len(rows) - 1}")
    arcs = []
    for lineno, tokens in rows[1:]:
        t, h = ints(lineno, tokens)
        if not (0 <= t < n and 0 <= h < n):
            raise GraphFormatError(f"line {lineno}: endpoint out of range [0, {n})")
        arcs.append((t, h))
    return DiGraph(n, tuple(arcs))


def graph_from_dict(obj: dict) -> DiGraph:
    try:
        n = obj["n"]
        arcs = obj["arcs"]
        if not isinstance(n, int) or any(len(a) != 2 for a in arcs):
            raise TypeError
        return DiGraph(n, tuple((a[0], a[1]) for a in arcs))
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphFormatError(f"invalid graph JSON: {exc}") from None


def graph_from_json(text: str | bytes) -> DiGraph:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid graph JSON: {exc}") from None
    return graph_from_dict(obj)


# -- structure ----------------------------------------------------------


@dataclass(frozen=True)
class SccDecomposition:
    components: tuple[VertexSet, ...]
    component_of: tuple[int, ...]

    def __len__(self):
        return len(self.components)


def _tarjan(n: int, succ: Sequence[Sequence[int]], alive: Sequence[bool]) -> list[list[int]]:
    # Iterative Tarjan; emits components in reverse topological order.
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if not alive[root] or index[root] != -1:
            continue
        work = [(root, 0)]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            v, i = work[-1]
            nbrs = succ[v]
            if i < len(nbrs):
                work[-1] = (v, i + 1)
                w = nbrs[i]
                if not alive[w]:
                    continue
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue
            work.pop()
            if work:
                u = work[-1][0]
                low[u] = min(low[u], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(comp)
    return comps


def scc_decompose(g: DiGraph, removed: Iterable[int] = ()) -> SccDecomposition:
    """Strongly connected components in topological order.

    Among components with no remaining predecessor the one holding the
    smallest vertex id comes first, so the order is fully determined by the
    graph.  Vertices in ``removed`` are skipped; their ``component_of`` entry
    is -1.
    """
    alive = [True] * g.n
    for v in removed:
        alive[v] = False
    comps = _tarjan(g.n, g.out_adj, alive)
    raw_of = [-1] * g.n
    for ci, comp in enumerate(comps):
        for v in comp:
            raw_of[v] = ci
    indeg = [0] * len(comps)
    succ: list[set[int]] = [set() for _ in comps]
    for t, h in g.arcs:
        a, b = raw_of[t], raw_of[h]
        if a >= 0 and b >= 0 and a != b and b not in succ[a]:
            succ[a].add(b)
            indeg[b] += 1
    heap = [(min(c), ci) for ci, c in enumerate(comps) if indeg[ci] == 0]
    heapq.heapify(heap)
    order = []
    while heap:
        _, ci = heapq.heappop(heap)
        order.append(ci)
        for cj in succ[ci]:
            indeg[cj] -= 1
            if indeg[cj] == 0:
                heapq.heappush(heap, (min(comps[cj]), cj))
    components = tuple(vset(comps[ci]) for ci in order)
    component_of = [-1] * g.n
    for pos, comp in enumerate(components):
        for v in comp:
            component_of[v] = pos
    return SccDecomposition(components, tuple(component_of))


def reach_set(g: DiGraph, sources: Iterable[int], deleted: Iterable[int] = ()) -> VertexSet:
    """All vertices reachable from ``sources`` once ``deleted`` is removed.

    Sources that are themselves deleted contribute nothing.
    """
    blocked = set(deleted)
    seen = set()
    queue = deque()
    for s in sources:
        if s not in blocked and s not in seen:
            seen.add(s)
            queue.append(s)
    while queue:
        v = queue.popleft()
        for w in g.out_adj[v]:
            if w not in blocked and w not in seen:
                seen.add(w)
                queue.append(w)
    return vset(seen)


def reverse(g: DiGraph) -> DiGraph:
    return DiGraph(g.n, tuple((h, t) for t, h in g.arcs))


def delete_view(g: DiGraph, x: Iterable[int]) -> tuple[DiGraph, VertexSet]:
    """Remove ``x`` and its incident arcs.

    Returns the smaller graph and ``kept``, where ``kept[i]`` is the original
    id of new vertex ``i``.
    """
    gone = set(x)
    g.check_vertices(gone)
    kept = tuple(v for v in range(g.n) if v not in gone)
    new_id = {v: i for i, v in enumerate(kept)}
    arcs = tuple((new_id[t], new_id[h]) for t, h in g.arcs if t in new_id and h in new_id)
    return DiGraph(len(kept), arcs), kept


def delete_arcs(g: DiGraph, arc_ids: Iterable[int]) -> DiGraph:
    gone = set(arc_ids)
    return DiGraph(g.n, tuple(a for i, a in enumerate(g.arcs) if i not in gone))


def induced_scc_sizes(g: DiGraph, removed: Iterable[int] = ()) -> list[int]:
    return [len(c) for c in scc_decompose(g, removed).components]
