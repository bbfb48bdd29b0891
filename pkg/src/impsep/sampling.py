"""Reachability profiles and exact checkers for terminal sets.

All threshold comparisons use :class:`fractions.Fraction`; nothing here
touches floating point except :func:`prescribed_size`, whose logarithm is
inherently irrational.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator

from .digraph import DiGraph, VertexSet, reach_set, reverse, scc_decompose, vset
from .vertex_flow import InvalidQuery
from .separators import binom_upto, enum_all_subsets


@dataclass(frozen=True)
class CheckReport:
    passed: bool
    witness: dict | None = None

    @property
    def verdict(self) -> str:
        return "pass" if self.passed else "fail"

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "witness": self.witness}


def deletion_sets(n: int, k: int) -> Iterator[VertexSet]:
    """Every vertex set of size <= k, by size then lexicographically."""
    for size in range(min(k, n) + 1):
        yield from combinations(range(n), size)


def _components(g: DiGraph, f: VertexSet) -> tuple[VertexSet, ...]:
    return scc_decompose(g, f).components


# -- reachability profiles ------------------------------------------------


def reach_profile(g: DiGraph, s: int, t_pool: Iterable[int], k: int) -> list[VertexSet]:
    """Subsets of ``t_pool`` reachable from ``s`` after deleting <= k vertices.

    Every profile is realised by an important s-B* separator for some small
    B* of the pool, so the family is read off the all-subsets enumeration
    instead of trying every deletion set.
    """
    t_pool = vset(t_pool)
    g.check_vertices([s, *t_pool])
    if s in t_pool:
        raise InvalidQuery("source must not be in the sink pool")
    pool = set(t_pool)
    found = {vset(set(reach_set(g, [s])) & pool)}
    if k >= 1:
        found.add(())
    if t_pool:
        for x in enum_all_subsets(g, [s], t_pool, k).separators:
            found.add(vset(set(reach_set(g, [s], x)) & pool))
    return sorted(found)


def brute_reach_profile(g: DiGraph, s: int, t_pool: Iterable[int], k: int) -> list[VertexSet]:
    t_pool = vset(t_pool)
    if s in t_pool:
        raise InvalidQuery("source must not be in the sink pool")
    pool = set(t_pool)
    return sorted({vset(set(reach_set(g, [s], f)) & pool) for f in deletion_sets(g.n, k)})


def profile_bound(pool_size: int, k: int) -> int:
    return 4**k * binom_upto(pool_size, 2 * k)


# -- the SCC set family ---------------------------------------------------


def scc_family(g: DiGraph, f: Iterable[int] = ()) -> list[VertexSet]:
    """SCCs of g - f together with each "all components but one" union."""
    comps = _components(g, vset(f))
    everything = set().union(*comps) if comps else set()
    out = set(comps)
    out.update(vset(everything - set(c)) for c in comps)
    return sorted(out)


def is_shattered(g: DiGraph, k: int, w: Iterable[int]) -> bool:
    w = vset(w)
    target = 1 << len(w)
    wset = set(w)
    patterns = set()
    for f in deletion_sets(g.n, k):
        for member in scc_family(g, f):
            patterns.add(vset(wset.intersection(member)))
        if len(patterns) == target:
            return True
    return len(patterns) == target


# -- checkers -------------------------------------------------------------


def _require_terminals(g: DiGraph, t) -> VertexSet:
    t = vset(t)
    if not t:
        raise InvalidQuery("terminal set must be nonempty")
    g.check_vertices(t)
    return t


def _fraction(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _fmt(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def is_sample_set(g: DiGraph, t, eps, k: int) -> CheckReport:
    """Every SCC after <= k deletions carries a terminal share within eps of its size share.

    On failure the witness is the largest deviation, earliest (F, C) on ties.
    """
    t = _require_terminals(g, t)
    eps = _fraction(eps)
    tset = set(t)
    worst = None
    for f in deletion_sets(g.n, k):
        for comp in _components(g, f):
            dev = abs(Fraction(len(tset.intersection(comp)), len(t)) - Fraction(len(comp), g.n))
            if dev > eps and (worst is None or dev > worst[0]):
                worst = (dev, f, comp)
    if worst is None:
        return CheckReport(True)
    dev, f, comp = worst
    return CheckReport(False, {"F": list(f), "component": list(comp), "deviation": _fmt(dev)})


def is_net(g: DiGraph, t, eps, k: int) -> CheckReport:
    t = _require_terminals(g, t)
    eps = _fraction(eps)
    tset = set(t)
    big = eps * g.n
    for f in deletion_sets(g.n, k):
        comps = _components(g, f)
        alive = set().union(*comps) if comps else set()
        for kind, members in (("component", comps),
                              ("all_but_one", [vset(alive - set(c)) for c in comps])):
            for c in members:
                if len(c) >= big and not tset.intersection(c):
                    return CheckReport(False, {"F": list(f), "kind": kind, "set": list(c)})
    return CheckReport(True)


def _ideals(dag_preds: list[set[int]]) -> Iterator[frozenset]:
    """Predecessor-closed sets of a DAG whose nodes are listed topologically."""
    size = len(dag_preds)

    def rec(i: int, chosen: frozenset) -> Iterator[frozenset]:
        if i == size:
            yield chosen
            return
        yield from rec(i + 1, chosen)
        if dag_preds[i] <= chosen:
            yield from rec(i + 1, chosen | {i})

    yield from rec(0, frozenset())


def _failure_partition(g: DiGraph, f: VertexSet, eps: Fraction):
    """Some (A, B) split of g - f with no arc B -> A and both sides >= eps*n."""
    decomp = scc_decompose(g, f)
    comps = decomp.components
    preds: list[set[int]] = [set() for _ in comps]
    for u, v in g.arcs:
        cu, cv = decomp.component_of[u], decomp.component_of[v]
        if cu >= 0 and cv >= 0 and cu != cv:
            preds[cv].add(cu)
    total = sum(len(c) for c in comps)
    big = eps * g.n
    for ideal in _ideals(preds):
        size = sum(len(comps[i]) for i in ideal)
        if 0 < size < total and size >= big and total - size >= big:
            side_a = vset(v for i in ideal for v in comps[i])
            side_b = vset(v for i, c in enumerate(comps) if i not in ideal for v in c)
            return side_a, side_b
    return None


def _some_pair_cut(g: DiGraph, t: VertexSet, f: VertexSet) -> bool:
    """Is there an ordered terminal pair with no path once f is deleted?"""
    if set(t) & set(f):
        return True
    # all pairs connected iff t[0] reaches every terminal and is reached by all
    forward = set(reach_set(g, [t[0]], f))
    backward = set(reach_set(reverse(g), [t[0]], f))
    return any(v not in forward or v not in backward for v in t)


def is_detection_set(g: DiGraph, t, eps, k: int) -> CheckReport:
    """Every network failure of <= k vertices leaves some terminal pair cut.

    A failure is a split (A, B) of the surviving vertices, both sides
    nonempty and of size >= eps*n, with no arc from B to A.  Terminals
    inside F count as cut off.
    """
    t = _require_terminals(g, t)
    eps = _fraction(eps)
    for f in deletion_sets(g.n, k):
        if _some_pair_cut(g, t, f):
            continue
        split = _failure_partition(g, f, eps)
        if split is not None:
            return CheckReport(False, {"F": list(f), "A": list(split[0]), "B": list(split[1])})
    return CheckReport(True)


# -- sampling -------------------------------------------------------------


def draw_terminals(g: DiGraph, size: int, seed: int) -> VertexSet:
    if not 0 <= size <= g.n:
        raise ValueError(f"cannot draw {size} terminals from {g.n} vertices")
    return vset(random.Random(seed).sample(range(g.n), size))


def prescribed_size(kind: str, k: int, eps, c=1) -> int:
    """Terminal count suggested by the net and sample size bounds for constant ``c``."""
    eps, c = _fraction(eps), _fraction(c)
    if not 0 < eps < 1:
        raise ValueError("eps must lie strictly between 0 and 1")
    if kind in ("net", "detection"):
        scale = c * k / eps
    elif kind == "sample":
        scale = c * k / (eps * eps)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return math.ceil(float(scale) * math.log(1 / eps))
