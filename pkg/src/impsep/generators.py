"""Named graph families and seeded random digraphs.

Undirected families are realised as pairs of opposite arcs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations

from .digraph import DiGraph, VertexSet

# Vertex ids of the 16-vertex tight example: s, u1..u3, v1..v6, b1..b6.
FIG1_NAMES: dict[str, int] = {"s": 0}
FIG1_NAMES.update({f"u{i}": i for i in range(1, 4)})
FIG1_NAMES.update({f"v{i}": 3 + i for i in range(1, 7)})
FIG1_NAMES.update({f"b{i}": 9 + i for i in range(1, 7)})


@dataclass(frozen=True)
class Family:
    graph: DiGraph
    roles: dict[str, VertexSet] = field(default_factory=dict)


def gen_star(c: int) -> Family:
    if c < 1:
        raise ValueError("star needs c >= 1 leaves")
    arcs = []
    for leaf in range(1, c + 1):
        arcs += [(0, leaf), (leaf, 0)]
    return Family(DiGraph(c + 1, tuple(arcs)), {"S": (0,), "T": tuple(range(1, c + 1))})


def gen_corestar(c: int, k: int) -> Family:
    """Bidirectional clique on k+1 core vertices with c leaves joined to all of it."""
    if c < 1 or k < 1:
        raise ValueError("corestar needs c >= 1 and k >= 1")
    core = list(range(k + 1))
    leaves = list(range(k + 1, k + 1 + c))
    arcs = []
    for u, v in combinations(core, 2):
        arcs += [(u, v), (v, u)]
    for leaf in leaves:
        for v in core:
            arcs += [(leaf, v), (v, leaf)]
    return Family(DiGraph(len(core) + c, tuple(arcs)), {"S": tuple(leaves), "T": tuple(core)})


def gen_fig1() -> Family:
    name = FIG1_NAMES
    arcs = [(name["s"], name[f"u{i}"]) for i in range(1, 4)]
    for i in range(1, 4):
        arcs += [(name[f"u{i}"], name[f"v{2 * i - 1}"]), (name[f"u{i}"], name[f"v{2 * i}"])]
    arcs += [(name[f"v{i}"], name[f"b{i}"]) for i in range(1, 7)]
    roles = {
        "S": (name["s"],),
        "X": tuple(name[f"u{i}"] for i in range(1, 4)),
        "B": tuple(name[f"b{i}"] for i in range(1, 7)),
    }
    return Family(DiGraph(len(name), tuple(arcs)), roles)


def gen_random(n: int, m: int, seed: int) -> DiGraph:
    """``m`` distinct non-loop arcs drawn uniformly, listed in sorted order."""
    slots = [(u, v) for u in range(n) for v in range(n) if u != v]
    if not 0 <= m <= len(slots):
        raise ValueError(f"cannot place {m} simple arcs on {n} vertices")
    return DiGraph(n, tuple(sorted(random.Random(seed).sample(slots, m))))


def gen_random_dag(n: int, m: int, seed: int) -> DiGraph:
    slots = list(combinations(range(n), 2))
    if not 0 <= m <= len(slots):
        raise ValueError(f"cannot place {m} forward arcs on {n} vertices")
    return DiGraph(n, tuple(sorted(random.Random(seed).sample(slots, m))))


def random_graph(rng: random.Random, n: int, density: float) -> DiGraph:
    """Each ordered non-loop pair becomes an arc with probability ``density``."""
    return DiGraph(n, tuple((u, v) for u in range(n) for v in range(n)
                            if u != v and rng.random() < density))
