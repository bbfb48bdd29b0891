"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run standalone with ``python tests/test_acceptance.py`` or through pytest;
the lines are repeated in the pytest terminal summary.
"""

import random
import subprocess
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

from conftest import random_terminals  # noqa: E402
from impsep.balanced import BalancedQuery, achieved_bound, brute_balanced, solve_balanced  # noqa: E402
from impsep.cli import run  # noqa: E402
from impsep.digraph import DiGraph, reach_set, vset  # noqa: E402
from impsep.generators import gen_corestar, gen_fig1, gen_random, gen_star, random_graph  # noqa: E402
from impsep.sampling import (brute_reach_profile, is_detection_set, is_net,  # noqa: E402
                             profile_bound, reach_profile)
from impsep.separators import (brute_all_subsets, brute_important, enum_all_subsets,  # noqa: E402
                               enum_important, is_important, reduce_witness, subsets_upto)
from impsep.skew import SkewInstance, brute_skew, solve_skew, validate_skew, vertex_to_edge  # noqa: E402
from impsep.sparsifier import build_sparsifier, close_vertices, size_cap, verify_sparsifier  # noqa: E402

RESULTS: dict[int, str] = {}


def report(num: int, title: str, failures: list, started: float, extra: str = "") -> None:
    status = "PASS" if not failures else "FAIL"
    line = f"[{status}] criterion {num:2d}: {title} ({time.time() - started:.1f}s{extra})"
    if failures:
        line += f" first failure: {failures[0]}"
    RESULTS[num] = line
    print(line)
    assert not failures, line


def density_graph(rng, n):
    return random_graph(rng, n, rng.choice([0.15, 0.25, 0.35, 0.5]))


# 1 ------------------------------------------------------------------------


def test_c01_enum_important_matches_oracle():
    start, rng, failures = time.time(), random.Random(101), []
    for i in range(500):
        g = density_graph(rng, rng.randint(2, 7))
        a, b = random_terminals(rng, g.n)
        k = rng.randint(0, 3)
        if enum_important(g, a, b, k) != brute_important(g, a, b, k):
            failures.append((g, a, b, k))
    elapsed = time.time() - start
    if elapsed >= 120:
        failures.append(f"took {elapsed:.0f}s")
    report(1, "enum_important = brute_important on 500 instances (n<=7, k<=3)", failures, start)


# 2 ------------------------------------------------------------------------


def out_tree(rng, n):
    arcs = tuple((rng.randrange(v), v) for v in range(1, n))
    leaves = [v for v in range(n) if not any(u == v for u, _ in arcs)]
    return DiGraph(n, arcs), leaves


def test_c02_four_to_the_k_bound():
    start, rng, failures = time.time(), random.Random(202), []
    checked = 0
    for i in range(240):
        n = rng.randint(8, 60)
        k = rng.randint(0, 6)
        kind = i % 3
        if kind == 0:
            g = gen_random(n, rng.randint(n, 3 * n), rng.randrange(10**9))
            a, b = random_terminals(rng, n)
        elif kind == 1:
            g, leaves = out_tree(rng, n)
            a, b = (0,), tuple(sorted(rng.sample(leaves, rng.randint(1, len(leaves)))))
        else:
            depth = rng.randint(3, 4)
            size = 2 ** (depth + 1) - 1
            g = DiGraph(size, tuple((v, c) for v in range(size) for c in (2 * v + 1, 2 * v + 2)
                                    if c < size))
            a, b = (0,), tuple(range(2**depth - 1, size))
        count = len(enum_important(g, a, b, k))
        checked += 1
        if count > 4**k:
            failures.append((g.n, k, count))
    report(2, "|enum_important| <= 4^k (n up to 60, k<=6)", failures, start, f", {checked} runs")


# 3 ------------------------------------------------------------------------


def test_c03_lower_bound_families():
    start, failures = time.time(), []
    star = gen_star(6)
    rep = enum_all_subsets(star.graph, star.roles["S"], star.roles["T"], 2)
    oracle = brute_all_subsets(star.graph, star.roles["S"], star.roles["T"], 2)
    if not (rep.count >= 21 and rep.count == len(oracle) and rep.count <= rep.bound):
        failures.append(("star", rep.count, len(oracle), rep.bound))
    core = gen_corestar(5, 2)
    rep2 = enum_all_subsets(core.graph, core.roles["S"], core.roles["T"], 2)
    oracle2 = brute_all_subsets(core.graph, core.roles["S"], core.roles["T"], 2)
    if not (rep2.count >= 15 and rep2.count == len(oracle2) and rep2.count <= rep2.bound):
        failures.append(("corestar", rep2.count, len(oracle2), rep2.bound))
    report(3, f"star(6): {rep.count} separators, corestar(5,2): {rep2.count}, within beta",
           failures, start)


# 4 ------------------------------------------------------------------------


def test_c04_fig1_tightness():
    start, failures = time.time(), []
    fam = gen_fig1()
    g, s, x, b = fam.graph, fam.roles["S"], fam.roles["X"], fam.roles["B"]
    if not is_important(g, s, b, x):
        failures.append("X not important for (s, B)")
    proper = list(subsets_upto(b, 1, len(b) - 1))
    bad = [bp for bp in proper if is_important(g, s, bp, x)]
    if len(proper) != 62 or bad:
        failures.append(("proper subsets", len(proper), bad[:1]))
    _, b_star = reduce_witness(g, s, b, x)
    if len(b_star) != 6:
        failures.append(("b_star", b_star))
    elapsed = time.time() - start
    if elapsed >= 1:
        failures.append(f"took {elapsed:.2f}s")
    report(4, "tight example: X important for B, for none of 62 proper B', |b_star| = 6",
           failures, start)


# 5 ------------------------------------------------------------------------


def test_c05_reach_profiles():
    start, rng, failures = time.time(), random.Random(505), []
    for i in range(300):
        g = density_graph(rng, rng.randint(2, 10))
        s = rng.randrange(g.n)
        others = [v for v in range(g.n) if v != s]
        pool = vset(rng.sample(others, rng.randint(0, min(6, len(others)))))
        k = rng.randint(0, 2)
        prof = reach_profile(g, s, pool, k)
        if prof != brute_reach_profile(g, s, pool, k) or len(prof) > profile_bound(len(pool), k):
            failures.append((g, s, pool, k))
    report(5, "reach_profile = brute force on 300 instances, within 4^k C(|pool|,<=2k)",
           failures, start)


# 6 ------------------------------------------------------------------------


def test_c06_net_implies_detection():
    start, rng, failures = time.time(), random.Random(606), []
    nets = 0
    for i in range(300):
        g = density_graph(rng, rng.randint(1, 9))
        t = rng.sample(range(g.n), rng.randint(1, g.n))
        eps = Fraction(rng.randint(1, 9), 10)
        k = rng.randint(0, 2)
        if is_net(g, t, eps, k).passed:
            nets += 1
            if not is_detection_set(g, t, eps, k).passed:
                failures.append((g, t, eps, k))
    report(6, "every net is a detection set on 300 instances (n<=9, k<=2)", failures, start,
           f", {nets} nets")


# 7 ------------------------------------------------------------------------


def test_c07_skew_solver():
    start, rng, failures = time.time(), random.Random(707), []
    for i in range(500):
        n = rng.randint(2, 8)
        g = density_graph(rng, n)
        pairs = []
        for _ in range(rng.randint(0, 4)):
            s, t = rng.sample(range(n), 2)
            pairs.append((s, t))
        mode = "vertex" if i % 2 else "arc"
        inst = SkewInstance(g, pairs, rng.randint(0, 3), mode)
        fast, slow = solve_skew(inst), brute_skew(inst)
        if (fast is None) != (slow is None):
            failures.append(("feasibility", inst))
        elif fast is not None and not (validate_skew(inst, fast.deleted) and len(fast) <= inst.k):
            failures.append(("validity", inst))
        if mode == "vertex":
            edge = solve_skew(vertex_to_edge(inst).instance)
            if (edge is None) != (slow is None) or (edge and len(edge) != len(slow)):
                failures.append(("reduction optimum", inst))
    report(7, "solve_skew matches brute_skew on 500 instances, reduction keeps optimum",
           failures, start)


# 8 ------------------------------------------------------------------------


def test_c08_balanced_exact():
    start, rng, failures = time.time(), random.Random(808), []
    found = 0
    for i in range(200):
        g = density_graph(rng, rng.randint(1, 9))
        k = rng.randint(0, 2)
        b = rng.choice([Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)])
        mode = "vertex" if i % 2 else "arc"
        ans = solve_balanced(BalancedQuery(g, k, b, 0, mode, terminals=range(g.n)))
        best = brute_balanced(g, k, b, mode)
        if ans.found != (best is not None):
            failures.append(("answer", g, k, b, mode))
        elif ans.found:
            found += 1
            if len(ans.f) > k or achieved_bound(g, ans.f, mode) > b:
                failures.append(("bound", g, k, b, mode, ans.f))
    elapsed = time.time() - start
    if elapsed >= 600:
        failures.append(f"took {elapsed:.0f}s")
    report(8, "solve_balanced = brute_balanced on 200 instances (T=V, eps=0)", failures, start,
           f", {found} solvable")


# 9 ------------------------------------------------------------------------


def test_c09_sparsifier():
    start, rng, failures = time.time(), random.Random(909), []
    for i in range(300):
        g = density_graph(rng, rng.randint(1, 10))
        t = vset(rng.sample(range(g.n), rng.randint(0, min(4, g.n))))
        c = rng.randint(0, 2)
        res = build_sparsifier(g, t, c)
        if len(res.kept) > size_cap(len(t), c):
            failures.append(("size", g, t, c))
        rep = verify_sparsifier(g, res, t, c)
        if not rep.passed:
            failures.append((g, t, c, rep.witness))
    report(9, "verify_sparsifier passes on 300 instances (n<=10, |T|<=4, c<=2)", failures, start)


# 10 -----------------------------------------------------------------------


def closed_instance(g, v):
    closed, kept = close_vertices(g, [v])
    return closed, kept, {u: i for i, u in enumerate(kept)}


def test_c10_closure_preserves_cuts():
    start, rng, failures = time.time(), random.Random(1010), []
    reach_cases = preserve_cases = 0
    while reach_cases < 300 or preserve_cases < 300:
        n = rng.randint(3, 8)
        g = density_graph(rng, n)
        v = rng.randrange(n)
        others = [u for u in range(n) if u != v]
        a = rng.sample(others, rng.randint(1, min(2, len(others) - 1)))
        rest = [u for u in others if u not in a]
        b = rng.sample(rest, rng.randint(1, min(2, len(rest))))
        closed, kept, new_id = closed_instance(g, v)
        if reach_cases < 300:
            y = [u for u in others if rng.random() < 0.3]
            before = set(reach_set(g, a, y))
            after = {kept[u] for u in reach_set(closed, [new_id[u] for u in a],
                                                [new_id[u] for u in y])}
            if not (after <= before and before - {v} <= after):
                failures.append(("reach", g, v, a, y))
            reach_cases += 1
        c = rng.randint(1, 2)
        seps = brute_important(g, a, b, c)
        if preserve_cases < 300 and not any(v in x for x in seps):
            mapped = brute_important(closed, [new_id[u] for u in a], [new_id[u] for u in b], c)
            if sorted(vset(kept[u] for u in x) for x in mapped) != seps:
                failures.append(("preserve", g, v, a, b, c))
            preserve_cases += 1
    report(10, "closure keeps reachability and unused-vertex important sets (300 + 300 cases)",
           failures, start)


# 11 -----------------------------------------------------------------------


def cli_cases(tmp: Path):
    graph = tmp / "g.txt"
    graph.write_text(gen_random(8, 18, 11).to_text())
    star = tmp / "star.txt"
    star.write_text(gen_star(5).graph.to_text())
    inst = tmp / "skew.json"
    inst.write_text('{"graph":{"n":4,"arcs":[[0,1],[1,2],[2,3],[3,0]]},'
                    '"pairs":[[0,2],[1,3]],"k":2,"mode":"vertex"}')
    g, s = str(graph), str(star)
    return [
        ["gen", "random", "--n", "9", "--m", "20", "--seed", "5"],
        ["enum-important", "--graph", g, "--A", "0,1", "--B", "6,7", "--k", "3"],
        ["enum-all-subsets", "--graph", s, "--S", "0", "--T", "1,2,3,4,5", "--k", "2"],
        ["reach-profile", "--graph", g, "--s", "0", "--pool", "3,4,5,6", "--k", "2"],
        ["sample-check", "--graph", g, "--T", "0,2,4,6", "--eps", "1/4", "--k", "1"],
        ["detect-check", "--graph", g, "--T", "0,3", "--eps", "1/4", "--k", "1"],
        ["balanced-sep", "--graph", g, "--k", "2", "--b", "1/2", "--eps", "1/8", "--seed", "17"],
        ["balanced-sep", "--graph", g, "--k", "1", "--b", "2/3", "--mode", "arc"],
        ["skew-solve", "--instance", str(inst)],
        ["sparsify", "--graph", g, "--terminals", "0,3,5", "--c", "2"],
        ["sparsify-verify", "--graph", g, "--terminals", "0,3,5", "--c", "1"],
    ]


def test_c11_cli_determinism(tmp_path):
    start, failures = time.time(), []
    for argv in cli_cases(tmp_path):
        outputs = {run(argv + (["--jobs", str(j)] if argv[0] != "gen" else [])) for j in (1, 2, 4)}
        outputs.add(run(argv))
        if len(outputs) != 1:
            failures.append(("in-process", argv))
    argv = cli_cases(tmp_path)[2]
    procs = [subprocess.run([sys.executable, "-m", "impsep", *argv, "--jobs", j],
                            capture_output=True) for j in ("1", "3")]
    procs.append(subprocess.run([sys.executable, "-m", "impsep", *argv], capture_output=True))
    if len({p.stdout for p in procs}) != 1 or any(p.returncode for p in procs):
        failures.append(("subprocess", argv))
    report(11, "CLI output byte-identical across runs and --jobs settings", failures, start)


if __name__ == "__main__":
    import tempfile

    tests = [v for k, v in sorted(globals().items()) if k.startswith("test_c")]
    bad = 0
    for fn in tests:
        try:
            if fn is test_c11_cli_determinism:
                with tempfile.TemporaryDirectory() as d:
                    fn(Path(d))
            else:
                fn()
        except AssertionError:
            bad += 1
    sys.exit(1 if bad else 0)
