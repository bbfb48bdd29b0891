"""(c, T) vertex-cut sparsifiers.

Keep the terminals and every vertex lying on some small important
separator between terminal groups, then close off everything else: a
closed vertex disappears and each path that ran through closed vertices is
replaced by a direct arc.
"""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Sequence

from .digraph import DiGraph, VertexSet, vset
from .vertex_flow import cut_value
from .sampling import CheckReport
from .separators import binom_upto, brute_important, enum_important, subsets_upto


def _pair_space(t: VertexSet, c: int) -> list[tuple[VertexSet, VertexSet]]:
    pairs = []
    for a in subsets_upto(t, 1, c):
        rest = tuple(v for v in t if v not in a)
        pairs.extend((a, b) for b in subsets_upto(rest, 1, 2 * c))
    return pairs


def _relevant_chunk(args) -> set[int]:
    g, pairs, c = args
    out: set[int] = set()
    for a, b in pairs:
        for x in enum_important(g, a, b, c):
            out.update(x)
    return out


def relevant_vertices(g: DiGraph, t: Iterable[int], c: int, jobs: int = 1) -> VertexSet:
    """Union of the important A'-B' separators of size <= c.

    A' and B' range over disjoint nonempty subsets of ``t`` with |A'| <= c
    and |B'| <= 2c.
    """
    t = vset(t)
    g.check_vertices(t)
    if c < 0:
        raise ValueError("c must be non-negative")
    pairs = _pair_space(t, c)
    if jobs > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = pool.map(_relevant_chunk, [(g, pairs[i::jobs], c) for i in range(jobs)])
            found = set().union(*parts)
    else:
        found = _relevant_chunk((g, pairs, c))
    return vset(found)


def _relabel(g_arcs: Iterable[tuple[int, int]], kept: VertexSet) -> DiGraph:
    new_id = {v: i for i, v in enumerate(kept)}
    arcs = sorted({(new_id[u], new_id[w]) for u, w in g_arcs})
    return DiGraph(len(kept), tuple(arcs))


def close_vertices(g: DiGraph, z: Iterable[int]) -> tuple[DiGraph, VertexSet]:
    """Remove ``z``; u -> w becomes an arc when some path u ... w has all inner vertices in ``z``.

    Returns the closed graph, renumbered, and ``kept``: kept[i] is the
    original id of new vertex i.  Parallel arcs are merged; a self-loop
    appears when a vertex has a cycle through ``z``.
    """
    zset = set(z)
    g.check_vertices(zset)
    kept = tuple(v for v in range(g.n) if v not in zset)
    arcs = set()
    for u in kept:
        seen: set[int] = set()
        stack = list(g.successors(u))
        while stack:
            w = stack.pop()
            if w in seen:
                continue
            seen.add(w)
            if w in zset:
                stack.extend(g.successors(w))
            else:
                arcs.add((u, w))
    return _relabel(arcs, kept), kept


def close_one(arcs: set[tuple[int, int]], v: int) -> set[tuple[int, int]]:
    """Single-vertex closure on an arc set with stable labels."""
    ins = {u for u, w in arcs if w == v and u != v}
    outs = {w for u, w in arcs if u == v and w != v}
    out = {(u, w) for u, w in arcs if v not in (u, w)}
    out.update((u, w) for u in ins for w in outs)
    return out


def close_sequential(g: DiGraph, order: Sequence[int]) -> tuple[DiGraph, VertexSet]:
    """Close the vertices of ``order`` one at a time."""
    arcs = set(g.arcs)
    for v in order:
        arcs = close_one(arcs, v)
    gone = set(order)
    kept = tuple(v for v in range(g.n) if v not in gone)
    return _relabel(arcs, kept), kept


@dataclass(frozen=True)
class SparsifierResult:
    g_prime: DiGraph
    kept: VertexSet
    relevant: VertexSet

    def to_dict(self) -> dict:
        return {"graph": self.g_prime.to_dict(), "kept_ids": list(self.kept),
                "relevant_ids": list(self.relevant)}


def size_cap(t_size: int, c: int) -> int:
    return t_size + c * 4**c * binom_upto(t_size, 3 * c) * binom_upto(3 * c, c)


def build_sparsifier(g: DiGraph, t: Iterable[int], c: int, jobs: int = 1) -> SparsifierResult:
    t = vset(t)
    relevant = relevant_vertices(g, t, c, jobs)
    keep = set(t) | set(relevant)
    g_prime, kept = close_vertices(g, [v for v in range(g.n) if v not in keep])
    if len(kept) > size_cap(len(t), c):
        raise AssertionError(f"kept {len(kept)} vertices, above the cap {size_cap(len(t), c)}")
    return SparsifierResult(g_prime, kept, relevant)


def verify_sparsifier(g: DiGraph, res: SparsifierResult, t: Iterable[int], c: int) -> CheckReport:
    """Compare small mincuts and small important separators over every split of ``t``.

    Each split (A, B) with both sides nonempty is checked in both
    directions.  The witness names the first failing split and what broke.
    """
    t = vset(t)
    if not set(t) <= set(res.kept):
        missing = sorted(set(t) - set(res.kept))
        return CheckReport(False, {"reason": "terminal_dropped", "vertices": missing})
    new_id = {v: i for i, v in enumerate(res.kept)}
    for a in subsets_upto(t, 1, len(t) - 1):
        b = tuple(v for v in t if v not in a)
        a2, b2 = [new_id[v] for v in a], [new_id[v] for v in b]
        before = cut_value(g, a, b, limit=c + 1)
        after = cut_value(res.g_prime, a2, b2, limit=c + 1)
        if before <= c and after != before:
            return CheckReport(False, {"A": list(a), "B": list(b), "reason": "mincut",
                                       "mincut_g": before, "mincut_g_prime": after})
        original = enum_important(g, a, b, c)
        mapped = sorted(vset(res.kept[v] for v in x)
                        for x in brute_important(res.g_prime, a2, b2, c))
        if original != mapped:
            return CheckReport(False, {"A": list(a), "B": list(b), "reason": "important",
                                       "in_g": [list(x) for x in original],
                                       "in_g_prime": [list(x) for x in mapped]})
    return CheckReport(True)

