"""Unit-capacity vertex flows by vertex splitting.

Every vertex ``v`` becomes ``v_in -> v_out`` with capacity 1, every arc
``(u, v)`` becomes ``u_out -> v_in`` with unbounded capacity, a super-source
feeds every source ``_in`` node and every sink ``_out`` node drains into a
super-sink.  Sources and sinks therefore sit on the cut side of their own
split arc, which is what makes terminals deletable.

The closest-set helpers at the bottom (:func:`is_closest`,
:func:`closest_witness`) are the flow facts the separator enumeration relies
on.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

from .digraph import DiGraph, VertexSet, vset

INF = float("inf")


class InvalidQuery(ValueError):
    """Terminal sets that are empty or overlap where that is not allowed."""


class FlowNetwork:
    """Adjacency-list residual network with BFS augmentation."""

    def __init__(self, size: int):
        self.size = size
        self.head: list[int] = []
        self.cap: list[float] = []
        self.adj: list[list[int]] = [[] for _ in range(size)]

    def add_edge(self, u: int, v: int, cap: float) -> int:
        eid = len(self.head)
        self.head += [v, u]
        self.cap += [cap, 0]
        self.adj[u].append(eid)
        self.adj[v].append(eid + 1)
        return eid

    def copy(self) -> "FlowNetwork":
        net = FlowNetwork.__new__(FlowNetwork)
        net.size = self.size
        net.head = self.head
        net.adj = self.adj
        net.cap = list(self.cap)
        return net

    def tail(self, eid: int) -> int:
        return self.head[eid ^ 1]

    def augment(self, s: int, t: int) -> bool:
        """Push one unit along a shortest residual path; False if none."""
        parent = [-1] * self.size
        parent[s] = -2
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for eid in self.adj[u]:
                v = self.head[eid]
                if parent[v] == -1 and self.cap[eid] > 0:
                    parent[v] = eid
                    if v == t:
                        queue.clear()
                        break
                    queue.append(v)
        if parent[t] == -1:
            return False
        v = t
        while v != s:
            eid = parent[v]
            self.cap[eid] -= 1
            self.cap[eid ^ 1] += 1
            v = self.head[eid ^ 1]
        return True

    def max_flow(self, s: int, t: int, limit: float = INF) -> int:
        value = 0
        while value < limit and self.augment(s, t):
            value += 1
        return value

    def residual_reach(self, s: int) -> list[bool]:
        seen = [False] * self.size
        seen[s] = True
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for eid in self.adj[u]:
                v = self.head[eid]
                if not seen[v] and self.cap[eid] > 0:
                    seen[v] = True
                    queue.append(v)
        return seen

    def residual_coreach(self, t: int) -> list[bool]:
        """Nodes that can still reach ``t`` in the residual graph."""
        seen = [False] * self.size
        seen[t] = True
        queue = deque([t])
        while queue:
            v = queue.popleft()
            for eid in self.adj[v]:
                # eid leaves v; its partner eid^1 enters v from head[eid]
                u = self.head[eid]
                if not seen[u] and self.cap[eid ^ 1] > 0:
                    seen[u] = True
                    queue.append(u)
        return seen

    def flow_on(self, eid: int) -> float:
        return self.cap[eid ^ 1]


class SplitNetwork:
    """Vertex-split flow network for one (sources, sinks) query on ``g``.

    ``removed`` vertices are left out, ``protected`` vertices get an
    unbounded split arc and ``raised`` maps vertices to a larger capacity.
    """

    def __init__(
        self,
        g: DiGraph,
        sources: Iterable[int],
        sinks: Iterable[int],
        removed: Iterable[int] = (),
        protected: Iterable[int] = (),
        raised: dict[int, int] | None = None,
    ):
        n = g.n
        self.g = g
        self.source = 2 * n
        self.sink = 2 * n + 1
        net = FlowNetwork(2 * n + 2)
        gone = set(removed)
        prot = set(protected)
        raised = raised or {}
        self.split_edge: dict[int, int] = {}
        for v in range(n):
            if v in gone:
                continue
            cap = INF if v in prot else raised.get(v, 1)
            self.split_edge[v] = net.add_edge(2 * v, 2 * v + 1, cap)
        seen_arcs = set()
        for t, h in g.arcs:
            if t == h or t in gone or h in gone or (t, h) in seen_arcs:
                continue
            seen_arcs.add((t, h))
            net.add_edge(2 * t + 1, 2 * h, INF)
        self.source_edge = {}
        for s in vset(sources):
            if s not in gone:
                self.source_edge[s] = net.add_edge(self.source, 2 * s, INF)
        self.sink_edge = {}
        for b in vset(sinks):
            if b not in gone:
                self.sink_edge[b] = net.add_edge(2 * b + 1, self.sink, INF)
        self.net = net
        self.value = 0

    def copy(self) -> "SplitNetwork":
        other = SplitNetwork.__new__(SplitNetwork)
        other.__dict__.update(self.__dict__)
        other.net = self.net.copy()
        return other

    def set_capacity(self, v: int, cap: float) -> None:
        eid = self.split_edge[v]
        used = self.net.flow_on(eid)
        self.net.cap[eid] = cap - used

    def run(self, limit: float = INF) -> int:
        self.value += self.net.max_flow(self.source, self.sink, limit - self.value)
        return self.value

    def cut_near_sink(self) -> VertexSet:
        """Split arcs crossing into the set that can still reach the sink."""
        reach = self.net.residual_coreach(self.sink)
        return vset(v for v in self.split_edge if reach[2 * v + 1] and not reach[2 * v])

    def cut_near_source(self) -> VertexSet:
        reach = self.net.residual_reach(self.source)
        return vset(v for v in self.split_edge if reach[2 * v] and not reach[2 * v + 1])

    def endpoints(self) -> VertexSet:
        return vset(b for b, eid in self.sink_edge.items() if self.net.flow_on(eid) > 0)

    def paths(self) -> list[list[int]]:
        """Decompose the current flow into source-to-sink vertex paths.

        Circulations are dropped; a walk that revisits a node has the loop cut
        out, so every returned path is simple.
        """
        net = self.net
        remaining = {}
        for eid in range(0, len(net.head), 2):
            f = net.flow_on(eid)
            if f > 0:
                remaining[eid] = f
        out_edges: dict[int, list[int]] = {}
        for eid in sorted(remaining):
            out_edges.setdefault(net.tail(eid), []).append(eid)
        result = []
        while True:
            start = [e for e in out_edges.get(self.source, []) if remaining.get(e, 0) > 0]
            if not start:
                break
            walk = [self.source]
            pos = {self.source: 0}
            node = self.source
            while node != self.sink:
                eid = next(e for e in out_edges[node] if remaining.get(e, 0) > 0)
                remaining[eid] -= 1
                node = net.head[eid]
                if node in pos:
                    for dropped in walk[pos[node] + 1:]:
                        del pos[dropped]
                    del walk[pos[node] + 1:]
                else:
                    pos[node] = len(walk)
                    walk.append(node)
            verts = []
            for node in walk[1:-1]:
                v = node // 2
                if not verts or verts[-1] != v:
                    verts.append(v)
            result.append(verts)
        return sorted(result)


@dataclass(frozen=True)
class FlowResult:
    value: int
    paths: tuple[tuple[int, ...], ...]
    source_side: VertexSet
    sink_side: VertexSet


def _check_terminals(g: DiGraph, a: VertexSet, b: VertexSet) -> None:
    g.check_vertices(a)
    g.check_vertices(b)
    if not a or not b:
        raise InvalidQuery("terminal sets must be nonempty")
    if set(a) & set(b):
        raise InvalidQuery("terminal sets must be disjoint")


def max_vertex_flow(g: DiGraph, a: Iterable[int], b: Iterable[int]) -> FlowResult:
    """Maximum number of vertex-disjoint ``a``-``b`` paths, with witnesses.

    ``source_side`` / ``sink_side`` hold the minimum cuts closest to ``a``
    and to ``b``.
    """
    a, b = vset(a), vset(b)
    _check_terminals(g, a, b)
    net = SplitNetwork(g, a, b)
    value = net.run()
    return FlowResult(
        value=value,
        paths=tuple(tuple(p) for p in net.paths()),
        source_side=net.cut_near_source(),
        sink_side=net.cut_near_sink(),
    )


def min_vertex_cut(g: DiGraph, a: Iterable[int], b: Iterable[int], side: str = "B") -> VertexSet:
    """The unique minimum ``a``-``b`` vertex cut closest to ``side``."""
    if side not in ("A", "B"):
        raise InvalidQuery(f"side must be 'A' or 'B', got {side!r}")
    a, b = vset(a), vset(b)
    _check_terminals(g, a, b)
    net = SplitNetwork(g, a, b)
    net.run()
    return net.cut_near_sink() if side == "B" else net.cut_near_source()


def cut_value(g: DiGraph, a: Iterable[int], b: Iterable[int], removed: Iterable[int] = (),
              protected: Iterable[int] = (), limit: float = INF) -> int:
    """Minimum vertex cut size; terminals may overlap (shared ones must go)."""
    net = SplitNetwork(g, a, b, removed=removed, protected=protected)
    return net.run(limit)


def is_closest(g: DiGraph, x: Iterable[int], t: Iterable[int]) -> bool:
    """True iff ``x`` is the unique minimum vertex cut between ``x`` and ``t``.

    ``x`` and ``t`` may share vertices; a shared vertex has to be in every
    cut, so it never breaks closeness on its own.
    """
    x, t = vset(x), vset(t)
    if not x:
        return True
    net = SplitNetwork(g, x, t)
    if net.run(len(x) + 1) != len(x):
        return False
    # x always cuts itself off, so x is the cut nearest the sources; it is the
    # unique minimum cut iff the cut nearest the sinks is x as well.
    return net.cut_near_sink() == x


@dataclass(frozen=True)
class ClosestWitness:
    """Flow certificate that ``x`` is closest to ``t``.

    ``base`` is the endpoint set of |x| disjoint x-t paths.  For each v in x,
    ``bundles[v]`` is the endpoint set after raising v's capacity to two and
    augmenting once, and ``paths[v]`` the |x|+1 paths realising it.
    """

    base: VertexSet
    bundles: dict[int, VertexSet]
    paths: dict[int, tuple[tuple[int, ...], ...]]

    def union(self) -> VertexSet:
        out = set(self.base)
        for bundle in self.bundles.values():
            out.update(bundle)
        return vset(out)


def closest_witness(g: DiGraph, x: Iterable[int], t: Iterable[int]) -> ClosestWitness:
    x, t = vset(x), vset(t)
    if not x:
        return ClosestWitness((), {}, {})
    net = SplitNetwork(g, x, t)
    if net.run(len(x) + 1) != len(x) or net.cut_near_sink() != x:
        raise InvalidQuery(f"{list(x)} is not closest to {list(t)}")
    base = net.endpoints()
    bundles = {}
    paths = {}
    for v in x:
        raised = net.copy()
        raised.set_capacity(v, 2)
        if v in t:
            # v is already its own endpoint; the second unit ends there too
            raised.run(len(x) + 1)
            bundles[v] = base
        else:
            if raised.run(len(x) + 1) != len(x) + 1:
                raise AssertionError("closest set without an augmenting path")
            bundles[v] = raised.endpoints()
        paths[v] = tuple(tuple(p) for p in raised.paths())
    return ClosestWitness(base, bundles, paths)
