"""Vertex separators between terminal sets.

``enum_important`` lists the important separators of one (A, B) pair by the
usual "push towards B" branching; ``enum_all_subsets`` takes the union over
every small A* and B* drawn from two pools, which is enough to catch the
important separators of *every* pair of subsets of the pools.
``brute_important`` evaluates the domination definition directly and is
the oracle the fast routines are checked against.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator

from .digraph import DiGraph, VertexSet, reach_set, reverse, vset
from .vertex_flow import InvalidQuery, SplitNetwork, closest_witness, is_closest


def _terminals(g: DiGraph, a, b) -> tuple[VertexSet, VertexSet]:
    a, b = vset(a), vset(b)
    g.check_vertices(a)
    g.check_vertices(b)
    if set(a) & set(b):
        raise InvalidQuery("source and sink sets overlap")
    return a, b


def is_separator(g: DiGraph, a, b, x) -> bool:
    a, b = _terminals(g, a, b)
    return not set(reach_set(g, a, x)) & set(b)


def is_minimal_separator(g: DiGraph, a, b, x) -> bool:
    x = vset(x)
    if not is_separator(g, a, b, x):
        return False
    return all(not is_separator(g, a, b, [u for u in x if u != v]) for v in x)


def is_important(g: DiGraph, a, b, x) -> bool:
    """Minimal separator that is also closest to ``b``."""
    return is_minimal_separator(g, a, b, x) and is_closest(g, x, b)


def _candidates(g: DiGraph, a: VertexSet, b: VertexSet, k: int) -> Iterator[VertexSet]:
    """Leaves of the branching tree: a superset of the important separators.

    ``merged`` are vertices pushed onto the source side; unlike the original
    sources they may not be cut.  Each call computes the minimum cut nearest
    the sinks and branches on its lowest vertex: either it joins the
    separator or it is merged into the source side.  Cutting it lowers the
    flow by one and uses one unit of budget, merging it raises the flow, so
    2k - flow drops in both branches and there are at most 4^k leaves.
    """

    def rec(merged: frozenset, removed: frozenset, budget: int) -> Iterator[VertexSet]:
        net = SplitNetwork(g, set(a) | merged, b, removed=removed, protected=merged)
        flow = net.run(budget + 1)
        if flow > budget:
            return
        if flow == 0:
            yield vset(removed)
            return
        v = net.cut_near_sink()[0]
        yield from rec(merged, removed | {v}, budget - 1)
        if v not in b:
            yield from rec(merged | {v}, removed, budget)

    yield from rec(frozenset(), frozenset(), k)


def enum_important(g: DiGraph, a, b, k: int) -> list[VertexSet]:
    """All important ``a``-``b`` separators with at most ``k`` vertices."""
    a, b = _terminals(g, a, b)
    if k < 0:
        raise ValueError("k must be non-negative")
    found = set()
    for x in _candidates(g, a, b, k):
        if x not in found and is_important(g, a, b, x):
            found.add(x)
    return sorted(found)


def brute_important(g: DiGraph, a, b, k: int) -> list[VertexSet]:
    """Important separators straight from the definition (exponential)."""
    a, b = _terminals(g, a, b)
    bset = set(b)
    reach: dict[VertexSet, frozenset] = {}
    for size in range(min(k, g.n) + 1):
        for x in combinations(range(g.n), size):
            r = reach_set(g, a, x)
            if not bset & set(r):
                reach[x] = frozenset(r)
    out = []
    for x, rx in reach.items():
        if any(tuple(u for u in x if u != v) in reach for v in x):
            continue
        dominated = any(len(y) <= len(x) and ry > rx for y, ry in reach.items())
        if not dominated:
            out.append(x)
    return sorted(out)


def _entry_vertex(g: DiGraph, a: VertexSet, x: VertexSet, v: int) -> int:
    """Lowest-id vertex of ``a`` with a path to ``v`` avoiding the rest of ``x``."""
    if v in a:
        return v
    back = reach_set(reverse(g), [v], [u for u in x if u != v])
    hits = [s for s in back if s in set(a)]
    if not hits:
        raise InvalidQuery(f"{v} is not reachable from the sources")
    return hits[0]


def reduce_witness(g: DiGraph, a, b, x) -> tuple[VertexSet, VertexSet]:
    """Shrink (a, b) to at most |x| sources and 2|x| sinks keeping ``x`` important."""
    a, b = _terminals(g, a, b)
    x = vset(x)
    if not is_important(g, a, b, x):
        raise InvalidQuery(f"{list(x)} is not an important separator")
    a_star = vset(_entry_vertex(g, a, x, v) for v in x)
    b_star = closest_witness(g, x, b).union()
    return a_star, b_star


def subsets_upto(pool: VertexSet, lo: int, hi: int) -> Iterator[VertexSet]:
    for size in range(lo, min(hi, len(pool)) + 1):
        yield from combinations(pool, size)


def binom_upto(n: int, k: int) -> int:
    return sum(comb(n, i) for i in range(0, min(n, k) + 1)) if k >= 0 else 0


def beta_bound(s: int, t: int, k: int) -> int:
    return 4**k * binom_upto(s, k) * binom_upto(t, 2 * k)


@dataclass(frozen=True)
class EnumerationReport:
    separators: tuple[VertexSet, ...]
    pairs_scanned: int
    bound: int

    @property
    def count(self) -> int:
        return len(self.separators)

    def to_dict(self) -> dict:
        return {
            "separators": [list(x) for x in self.separators],
            "count": self.count,
            "bound": self.bound,
            "pairs_scanned": self.pairs_scanned,
        }


def _scan_pairs(args) -> list[VertexSet]:
    g, pairs, k = args
    out = set()
    for a, b in pairs:
        out.update(enum_important(g, a, b, k))
    return sorted(out)


def enum_all_subsets(g: DiGraph, s_pool, t_pool, k: int, jobs: int = 1) -> EnumerationReport:
    """Union of important A*-B* separators over small nonempty A* and B*.

    A* ranges over subsets of ``s_pool`` of size 1..k and B* over subsets
    of ``t_pool`` of size 1..2k (size 1 at least, so that k = 0 still sees
    the single-vertex pairs).
    """
    s_pool, t_pool = _terminals(g, s_pool, t_pool)
    if k < 0:
        raise ValueError("k must be non-negative")
    pairs = [
        (a, b)
        for a in subsets_upto(s_pool, 1, max(k, 1))
        for b in subsets_upto(t_pool, 1, max(2 * k, 1))
    ]
    if jobs > 1 and len(pairs) > 1:
        chunks = [pairs[i::jobs] for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_pairs, [(g, c, k) for c in chunks]))
        found = set().union(*map(set, parts))
    else:
        found = set(_scan_pairs((g, pairs, k)))
    return EnumerationReport(
        separators=tuple(sorted(found)),
        pairs_scanned=len(pairs),
        bound=beta_bound(len(s_pool), len(t_pool), k),
    )


def brute_all_subsets(g: DiGraph, s_pool, t_pool, k: int) -> list[VertexSet]:
    """Oracle: union of brute_important over every nonempty A ⊆ S, B ⊆ T."""
    s_pool, t_pool = _terminals(g, s_pool, t_pool)
    found = set()
    for a in subsets_upto(s_pool, 1, len(s_pool)):
        for b in subsets_upto(t_pool, 1, len(t_pool)):
            found.update(brute_important(g, a, b, k))
    return sorted(found)
