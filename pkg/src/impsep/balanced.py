"""Balanced separators: delete at most k vertices (or arcs) so that every
strongly connected component is small.

The solver works on a terminal set T.  It guesses how the terminals are
laid out along the topological order of the components of G - F for an
unknown solution F, contracts each guessed group of terminals into one
vertex, and asks the skew solver to forbid every backward path between
groups.  Any SCC of the result then meets at most one group, so it holds at
most (b + eps)|T| terminals; when T is a sample set that bounds its size by
(b + 2 eps)n.

Two guessing schemes are available:

* ``case=1`` cuts the order into intervals that each carry at least b|T|
  terminals and guesses, per interval, its head (all but the last
  component) and its last component;
* ``case=2`` guesses the ordered partition of surviving terminals into
  component groups directly.

The default picks whichever has fewer choices per terminal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, Sequence

from .digraph import DiGraph, VertexSet, delete_arcs, scc_decompose, vset
from .vertex_flow import INF, FlowNetwork, SplitNetwork
from .sampling import draw_terminals, prescribed_size
from .skew import SkewInstance, solve_skew


@dataclass(frozen=True)
class BalancedQuery:
    g: DiGraph
    k: int
    b: Fraction
    eps: Fraction = Fraction(0)
    mode: str = "vertex"
    terminals: VertexSet | None = None
    seed: int | None = None
    c: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "b", Fraction(self.b))
        object.__setattr__(self, "eps", Fraction(self.eps))
        object.__setattr__(self, "c", Fraction(self.c))
        if not 0 < self.b <= 1:
            raise ValueError("b must satisfy 0 < b <= 1")
        if not 0 <= self.eps < 1:
            raise ValueError("eps must satisfy 0 <= eps < 1")
        if self.mode not in ("vertex", "arc"):
            raise ValueError(f"mode must be 'vertex' or 'arc', got {self.mode!r}")
        if self.k < 0:
            raise ValueError("k must be non-negative")
        if self.terminals is None and self.seed is None:
            raise ValueError("give either terminals or a seed to draw them")
        if self.terminals is not None:
            object.__setattr__(self, "terminals", vset(self.terminals))
            self.g.check_vertices(self.terminals)

    def resolve_terminals(self) -> VertexSet:
        if self.terminals is not None:
            return self.terminals
        if self.eps == 0:
            return tuple(range(self.g.n))
        size = prescribed_size("sample", self.k, self.eps, self.c)
        return draw_terminals(self.g, min(self.g.n, max(1, size)), self.seed)


@dataclass(frozen=True)
class BalancedAnswer:
    outcome: str
    f: tuple[int, ...] | None
    achieved_bound: Fraction | None
    terminals: VertexSet

    @property
    def found(self) -> bool:
        return self.outcome == "solution"

    def to_dict(self) -> dict:
        bound = self.achieved_bound
        return {
            "outcome": self.outcome,
            "f": None if self.f is None else list(self.f),
            "achieved_bound": None if bound is None else f"{bound.numerator}/{bound.denominator}",
            "terminals": list(self.terminals),
        }


def component_sizes(g: DiGraph, f: Sequence[int], mode: str) -> list[VertexSet]:
    if mode == "vertex":
        return list(scc_decompose(g, f).components)
    return list(scc_decompose(delete_arcs(g, f)).components)


def achieved_bound(g: DiGraph, f: Sequence[int], mode: str) -> Fraction:
    comps = component_sizes(g, f, mode)
    largest = max((len(c) for c in comps), default=0)
    return Fraction(largest, g.n) if g.n else Fraction(0)


def _terminal_balanced(g, f, mode, terminals, limit: Fraction) -> bool:
    tset = set(terminals)
    return all(len(tset.intersection(c)) <= limit for c in component_sizes(g, f, mode))


# -- contraction --------------------------------------------------------------


@dataclass(frozen=True)
class BlockInstance:
    """Skew instance on the contracted graph and the maps back to ``g``."""

    instance: SkewInstance
    block_ids: tuple[int, ...]
    # contracted vertex -> original vertex (None for a block vertex)
    vertex_origin: tuple[int | None, ...]
    # contracted arc -> original arc index
    arc_origin: tuple[int, ...]

    def lift(self, deleted: Sequence[int]) -> tuple[int, ...]:
        if self.instance.mode == "vertex":
            return vset(self.vertex_origin[v] for v in deleted)
        return vset(self.arc_origin[i] for i in deleted)


def build_skew_from_blocks(g: DiGraph, blocks: Sequence[Sequence[int]], mode: str,
                           k: int | None = None, removed: Sequence[int] = ()) -> BlockInstance:
    """Contract each block to one vertex and forbid paths from later blocks to earlier ones.

    Consecutive blocks B_p, B_{p+1} give the pair (B_{p+1}, B_p); under the
    skew rule this forbids B_q -> B_p for every q > p and nothing else.
    Block vertices are protected in vertex mode, since deleting one would
    stand for deleting the whole block.  ``removed`` vertices are dropped.
    """
    blocks = [vset(b) for b in blocks if len(b)]
    gone = set(removed)
    seen: set[int] = set()
    for blk in blocks:
        g.check_vertices(blk)
        if seen & set(blk) or gone & set(blk):
            raise ValueError("blocks must be disjoint and must not hit removed vertices")
        seen.update(blk)
    new_id: dict[int, int] = {}
    origin: list[int | None] = []
    for v in range(g.n):
        if v not in seen and v not in gone:
            new_id[v] = len(origin)
            origin.append(v)
    block_ids = []
    for blk in blocks:
        bid = len(origin)
        origin.append(None)
        block_ids.append(bid)
        for v in blk:
            new_id[v] = bid
    arcs, arc_origin = [], []
    for i, (u, v) in enumerate(g.arcs):
        if u in gone or v in gone or new_id[u] == new_id[v]:
            continue
        arcs.append((new_id[u], new_id[v]))
        arc_origin.append(i)
    pairs = tuple((block_ids[p + 1], block_ids[p]) for p in range(len(blocks) - 1))
    budget = g.n if k is None else k
    protected = frozenset(block_ids) if mode == "vertex" else frozenset()
    inst = SkewInstance(DiGraph(len(origin), tuple(arcs)), pairs, budget, mode, protected)
    return BlockInstance(inst, tuple(block_ids), tuple(origin), tuple(arc_origin))


# -- guessing -----------------------------------------------------------------


def _tie_table(g: DiGraph, survivors: VertexSet, removed: VertexSet, mode: str,
               budget: int) -> dict[tuple[int, int], bool]:
    """(u, v) -> True when cutting every u -> v path costs more than ``budget``.

    Such a u may never sit in a later group than v.
    """
    tied = {}
    for u in survivors:
        for v in survivors:
            if u == v:
                continue
            if mode == "vertex":
                net = SplitNetwork(g, [u], [v], removed=removed, protected=[u, v])
                tied[u, v] = net.run(budget + 1) > budget
            else:
                net = FlowNetwork(g.n + 2)
                for a, b in g.arcs:
                    if a != b:
                        net.add_edge(a, b, 1)
                net.add_edge(g.n, u, INF)
                net.add_edge(v, g.n + 1, INF)
                tied[u, v] = net.max_flow(g.n, g.n + 1, budget + 1) > budget
    return tied


def _subsets(pool: VertexSet, lo: int, hi: int) -> Iterator[VertexSet]:
    for size in range(max(lo, 0), min(hi, len(pool)) + 1):
        yield from combinations(pool, size)


def _block_sequences(survivors: VertexSet, tied, case: int, n_terminals: int,
                     b: Fraction, limit: Fraction) -> Iterator[list[VertexSet]]:
    """Ordered block sequences consistent with the size rules and the tie table."""
    share = b * n_terminals
    # largest integer strictly below share, and largest integer <= limit
    below_share = math.ceil(share) - 1
    cap = math.floor(limit)

    def ok(later: Sequence[int], earlier: Sequence[int]) -> bool:
        return not any(tied[u, v] for u in later for v in earlier)

    def rec2(rest: VertexSet, acc: list[VertexSet]) -> Iterator[list[VertexSet]]:
        if not rest:
            yield acc
            return
        for blk in _subsets(rest, 1, cap):
            remaining = tuple(v for v in rest if v not in blk)
            if ok(remaining, blk):
                yield from rec2(remaining, acc + [blk])

    def rec1(rest: VertexSet, acc: list[VertexSet]) -> Iterator[list[VertexSet]]:
        if len(rest) < share:
            yield acc + ([rest] if rest else [])
            return
        for head in _subsets(rest, 0, below_share):
            after_head = tuple(v for v in rest if v not in head)
            if not ok(after_head, head):
                continue
            lo = max(1, math.ceil(share) - len(head))
            for tail in _subsets(after_head, lo, cap):
                remaining = tuple(v for v in after_head if v not in tail)
                if ok(remaining, tail):
                    yield from rec1(remaining, acc + [head, tail])

    yield from (rec1 if case == 1 else rec2)(survivors, [])


def choose_case(b: Fraction, n_terminals: int) -> int:
    interval_choices = 2 * math.ceil(1 / b) + 1
    return 1 if interval_choices <= n_terminals + 1 else 2


def solve_balanced(q: BalancedQuery, case: int | None = None) -> BalancedAnswer:
    """Search guessed terminal layouts for a deletion set of size <= k.

    Returns the first candidate, in a fixed enumeration order, under which
    no SCC carries more than (b + eps)|T| terminals.
    """
    g, mode = q.g, q.mode
    terminals = q.resolve_terminals()
    limit = (q.b + q.eps) * len(terminals)
    case = case or choose_case(q.b, len(terminals))
    if case not in (1, 2):
        raise ValueError("case must be 1 or 2")

    def answer(f):
        return BalancedAnswer("solution", vset(f), achieved_bound(g, f, mode), terminals)

    if _terminal_balanced(g, (), mode, terminals, limit):
        return answer(())
    deleted_guesses = [()] if mode == "arc" else list(_subsets(terminals, 0, q.k))
    for dead in deleted_guesses:
        budget = q.k - len(dead)
        survivors = tuple(v for v in terminals if v not in dead)
        tied = _tie_table(g, survivors, dead, mode, budget)
        for blocks in _block_sequences(survivors, tied, case, len(terminals), q.b, limit):
            bi = build_skew_from_blocks(g, blocks, mode, k=budget, removed=dead)
            sol = solve_skew(bi.instance)
            if sol is None:
                continue
            f = vset(set(dead) | set(bi.lift(sol.deleted)))
            if len(f) <= q.k and _terminal_balanced(g, f, mode, terminals, limit):
                return answer(f)
    return BalancedAnswer("no_separator", None, None, terminals)


def brute_balanced(g: DiGraph, k: int, b, mode: str = "vertex") -> tuple[int, ...] | None:
    """Smallest deletion set leaving every SCC at most b*n, lexicographic on ties."""
    b = Fraction(b)
    universe = range(g.n) if mode == "vertex" else range(g.m)
    bound = b * g.n
    for size in range(min(k, len(universe)) + 1):
        for f in combinations(universe, size):
            if all(len(c) <= bound for c in component_sizes(g, f, mode)):
                return f
    return None


def extract_prefix_bisection(g: DiGraph, f: Sequence[int], beta, mode: str = "vertex"
                             ) -> tuple[VertexSet, VertexSet]:
    """Split g - f into a topological prefix A' and the rest B'.

    A' is the shortest prefix of components holding at least
    ceil(n' (1 - beta) / 2) vertices, n' being the number of surviving
    vertices.  No arc of g - f runs from B' to A'.
    """
    beta = Fraction(beta)
    if beta >= 1:
        raise ValueError("beta must be below 1")
    f = vset(f)
    comps = component_sizes(g, f, mode)
    alive = sum(len(c) for c in comps)
    if alive < 2:
        raise ValueError("graph too small to bisect")
    if any(len(c) > beta * g.n for c in comps):
        raise ValueError("some component exceeds beta * n")
    need = math.ceil(alive * (1 - beta) / 2)
    side_a: list[int] = []
    idx = 0
    while len(side_a) < need:
        side_a.extend(comps[idx])
        idx += 1
    side_b = [v for c in comps[idx:] for v in c]
    return vset(side_a), vset(side_b)
