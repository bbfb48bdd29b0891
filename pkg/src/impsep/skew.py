"""Skew separators: ordered pairs (s_i, t_i) where no s_i may reach any t_j
with j <= i.

Arc mode is solved by branching on important arc separators between the
last source that still reaches a forbidden sink and all of its forbidden
sinks.  Vertex mode goes through the split-vertex reduction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Sequence

from .digraph import DiGraph, delete_arcs, reach_set, vset
from .vertex_flow import INF, FlowNetwork


@dataclass(frozen=True)
class SkewInstance:
    g: DiGraph
    pairs: tuple[tuple[int, int], ...]
    k: int
    mode: str = "vertex"
    # vertices that may never be deleted (vertex mode only)
    protected: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((int(s), int(t)) for s, t in self.pairs))
        object.__setattr__(self, "protected", frozenset(self.protected))
        if self.mode not in ("vertex", "arc"):
            raise ValueError(f"mode must be 'vertex' or 'arc', got {self.mode!r}")
        if self.k < 0:
            raise ValueError("k must be non-negative")
        for s, t in self.pairs:
            self.g.check_vertices([s, t])
            if s == t:
                raise ValueError(f"pair ({s}, {t}) has equal endpoints")
        if self.protected and self.mode != "vertex":
            raise ValueError("protected vertices only make sense in vertex mode")

    def to_dict(self) -> dict:
        return {"graph": self.g.to_dict(), "pairs": [list(p) for p in self.pairs],
                "k": self.k, "mode": self.mode}


def validate_skew(inst: SkewInstance, f: Sequence[int]) -> bool:
    """True iff deleting ``f`` leaves no s_i -> t_j path with i >= j."""
    f = vset(f)
    if inst.mode == "vertex":
        g, blocked = inst.g, f
    else:
        g, blocked = delete_arcs(inst.g, f), ()
    sinks_so_far: set[int] = set()
    for s, t in inst.pairs:
        sinks_so_far.add(t)
        if sinks_so_far & set(reach_set(g, [s], blocked)):
            return False
    return True


# -- arc mode ---------------------------------------------------------------


def _arc_candidates(g: DiGraph, removed: frozenset, source: int, sinks: frozenset,
                    budget: int) -> Iterator[frozenset]:
    """Arc sets of size <= budget cutting ``source`` from ``sinks``.

    Includes every important arc separator; branching mirrors the vertex
    version with arcs in place of split arcs.
    """
    n = g.n

    def build(merged: frozenset, cut: frozenset, hard: frozenset):
        net = FlowNetwork(n + 2)
        s_star, t_star = n, n + 1
        edge_of = {}
        for i, (u, v) in enumerate(g.arcs):
            if i in removed or i in cut or u == v:
                continue
            edge_of[i] = net.add_edge(u, v, INF if i in hard else 1)
        for v in {source} | merged:
            net.add_edge(s_star, v, INF)
        for v in sinks:
            net.add_edge(v, t_star, INF)
        return net, edge_of

    def rec(merged: frozenset, cut: frozenset, hard: frozenset, left: int) -> Iterator[frozenset]:
        if ({source} | merged) & sinks:
            return
        net, edge_of = build(merged, cut, hard)
        flow = net.max_flow(n, n + 1, left + 1)
        if flow > left:
            return
        if flow == 0:
            yield cut
            return
        reach = net.residual_coreach(n + 1)
        crossing = [i for i, eid in edge_of.items()
                    if reach[net.head[eid]] and not reach[net.tail(eid)]]
        i = min(crossing)
        yield from rec(merged, cut | {i}, hard, left - 1)
        head = g.arcs[i][1]
        yield from rec(merged | {head}, cut, hard | {i}, left)

    yield from rec(frozenset(), frozenset(), frozenset(), budget)


def _solve_arc(g: DiGraph, pairs: Sequence[tuple[int, int]], budget: int,
               removed: frozenset) -> frozenset | None:
    live = delete_arcs(g, removed)
    sinks: list[int] = []
    violating = -1
    for i, (s, t) in enumerate(pairs):
        sinks.append(t)
        if set(sinks) & set(reach_set(live, [s])):
            violating = i
    if violating < 0:
        return frozenset()
    s = pairs[violating][0]
    forbidden = frozenset(t for _, t in pairs[: violating + 1])
    for cut in _arc_candidates(g, removed, s, forbidden, budget):
        rest = _solve_arc(g, pairs, budget - len(cut), removed | cut)
        if rest is not None:
            return cut | rest
    return None


def _solve_arc_min(g: DiGraph, pairs, k: int) -> frozenset | None:
    for budget in range(k + 1):
        sol = _solve_arc(g, pairs, budget, frozenset())
        if sol is not None:
            return sol
    return None


# -- vertex mode ------------------------------------------------------------


@dataclass(frozen=True)
class EdgeReduction:
    """Split-vertex arc instance plus what each of its arcs stands for."""

    instance: SkewInstance
    # arc index -> original vertex it deletes, or None when cutting it alone
    # achieves nothing (one copy of a replicated arc)
    owner: tuple[int | None, ...]

    def to_vertices(self, arc_ids) -> tuple[int, ...]:
        return vset(self.owner[i] for i in arc_ids if self.owner[i] is not None)


def vertex_to_edge(inst: SkewInstance) -> EdgeReduction:
    """v becomes v_in = 2v -> v_out = 2v+1; arc (u, v) becomes (u_out, v_in).

    Split arcs come first (arc v is the split arc of v), original arcs
    follow in input order.  A cut on (u_out, v_in) is charged to u, or to v
    when u is protected.  Arcs that must not be cut at all (split arcs of
    protected vertices, arcs between two protected vertices) are replicated
    k+1 times so no budget-k solution can remove them.
    """
    if inst.mode != "vertex":
        raise ValueError("vertex_to_edge expects a vertex-mode instance")
    g, prot = inst.g, inst.protected
    copies = inst.k + 1
    arcs: list[tuple[int, int]] = []
    owner: list[int | None] = []
    for v in range(g.n):
        if v in prot:
            arcs += [(2 * v, 2 * v + 1)] * copies
            owner += [None] * copies
        else:
            arcs.append((2 * v, 2 * v + 1))
            owner.append(v)
    for u, v in g.arcs:
        if u not in prot:
            arcs.append((2 * u + 1, 2 * v))
            owner.append(u)
        elif v not in prot:
            arcs.append((2 * u + 1, 2 * v))
            owner.append(v)
        else:
            arcs += [(2 * u + 1, 2 * v)] * copies
            owner += [None] * copies
    pairs = tuple((2 * s, 2 * t + 1) for s, t in inst.pairs)
    edge = SkewInstance(DiGraph(2 * g.n, tuple(arcs)), pairs, inst.k, "arc")
    return EdgeReduction(edge, tuple(owner))


@dataclass(frozen=True)
class SkewSolution:
    deleted: tuple[int, ...]
    mode: str

    def __len__(self):
        return len(self.deleted)


def solve_skew(inst: SkewInstance) -> SkewSolution | None:
    """A minimum-size solution of size <= k, or None when none exists."""
    if inst.mode == "arc":
        sol = _solve_arc_min(inst.g, inst.pairs, inst.k)
        return None if sol is None else SkewSolution(vset(sol), "arc")
    red = vertex_to_edge(inst)
    sol = _solve_arc_min(red.instance.g, red.instance.pairs, inst.k)
    if sol is None:
        return None
    verts = red.to_vertices(sol)
    if not validate_skew(inst, verts):
        raise AssertionError("edge solution did not map back to a vertex solution")
    return SkewSolution(verts, "vertex")


def brute_skew(inst: SkewInstance) -> SkewSolution | None:
    """Smallest solution by exhaustive search, lexicographically first on ties."""
    if inst.mode == "vertex":
        universe = [v for v in range(inst.g.n) if v not in inst.protected]
    else:
        universe = list(range(inst.g.m))
    for size in range(min(inst.k, len(universe)) + 1):
        for f in combinations(universe, size):
            if validate_skew(inst, f):
                return SkewSolution(f, inst.mode)
    return None
