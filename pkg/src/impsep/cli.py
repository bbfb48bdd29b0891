"""Command-line front end.

Every subcommand reads a graph (text format, or JSON when the input starts
with ``{``) from ``--graph PATH`` or stdin and prints one line of compact
JSON.  Exit codes: 0 success or pass, 1 internal error, 2 bad usage or
input, 3 checker failure or no solution.

``oracle NAME ...`` runs the brute-force twin of subcommand NAME with the
same flags and the same JSON shape.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .balanced import (BalancedAnswer, BalancedQuery, achieved_bound, brute_balanced,
                       extract_prefix_bisection, solve_balanced)
from .digraph import DiGraph, graph_from_json, parse_graph, vset
from .generators import FIG1_NAMES, gen_corestar, gen_fig1, gen_random, gen_random_dag, gen_star
from .sampling import (brute_reach_profile, is_detection_set, is_net, is_sample_set,
                       is_shattered, profile_bound, reach_profile, CheckReport)
from .separators import (EnumerationReport, beta_bound, brute_all_subsets, brute_important,
                         enum_all_subsets, enum_important, is_important, subsets_upto)
from .skew import SkewInstance, brute_skew, solve_skew
from .sparsifier import SparsifierResult, build_sparsifier, verify_sparsifier
from .vertex_flow import min_vertex_cut

OK, INTERNAL, USAGE, NEGATIVE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# -- argument parsing helpers ---------------------------------------------


def vertex_list(text: str) -> tuple[int, ...]:
    """Comma-separated ids; names of the tight-example graph (s, u1, b3) also work."""
    out = []
    for tok in text.replace(" ", "").split(","):
        if not tok:
            continue
        if tok in FIG1_NAMES:
            out.append(FIG1_NAMES[tok])
        else:
            try:
                out.append(int(tok))
            except ValueError:
                raise argparse.ArgumentTypeError(f"not a vertex: {tok!r}") from None
    return vset(out)


def vertex_list_or_file(text: str) -> tuple[int, ...]:
    """A vertex list, or a path to a file holding one (commas or whitespace)."""
    if os.path.isfile(text):
        with open(text) as fh:
            return vertex_list(",".join(fh.read().split()))
    return vertex_list(text)


def fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a fraction: {text!r}") from None


def _read(source: str) -> str:
    if source == "-":
        return sys.stdin.read()
    with open(source) as fh:
        return fh.read()


def load_graph(source: str) -> DiGraph:
    text = _read(source)
    return graph_from_json(text) if text.lstrip().startswith("{") else parse_graph(text)


def _fmt(q: Fraction | None):
    return None if q is None else f"{q.numerator}/{q.denominator}"


# -- subcommands ----------------------------------------------------------
#
# Each entry: flag setup, fast handler, optional oracle handler.  Handlers
# take (args, graph) and return (payload, exit code).


def _args_enum_important(p):
    p.add_argument("--A", type=vertex_list, required=True)
    p.add_argument("--B", type=vertex_list, required=True)
    p.add_argument("--k", type=int, required=True)


def _enum_important(args, g):
    seps = enum_important(g, args.A, args.B, args.k)
    return {"separators": [list(x) for x in seps], "count": len(seps)}, OK


def _oracle_enum_important(args, g):
    seps = brute_important(g, args.A, args.B, args.k)
    return {"separators": [list(x) for x in seps], "count": len(seps)}, OK


def _args_enum_all(p):
    p.add_argument("--S", type=vertex_list, required=True)
    p.add_argument("--T", type=vertex_list, required=True)
    p.add_argument("--k", type=int, required=True)


def _enum_all(args, g):
    return enum_all_subsets(g, args.S, args.T, args.k, jobs=args.jobs).to_dict(), OK


def _oracle_enum_all(args, g):
    seps = brute_all_subsets(g, args.S, args.T, args.k)
    k = args.k
    scanned = sum(1 for _ in subsets_upto(args.S, 1, max(k, 1))) * \
        sum(1 for _ in subsets_upto(args.T, 1, max(2 * k, 1)))
    report = EnumerationReport(tuple(seps), scanned, beta_bound(len(args.S), len(args.T), k))
    return report.to_dict(), OK


def _args_min_cut(p):
    p.add_argument("--A", type=vertex_list, required=True)
    p.add_argument("--B", type=vertex_list, required=True)
    p.add_argument("--side", choices=["A", "B"], default="B")


def _min_cut(args, g):
    return {"cut": list(min_vertex_cut(g, args.A, args.B, args.side))}, OK


def _args_is_important(p):
    p.add_argument("--A", type=vertex_list, required=True)
    p.add_argument("--B", type=vertex_list, required=True)
    p.add_argument("--X", type=vertex_list, required=True)


def _is_important(args, g):
    return {"important": is_important(g, args.A, args.B, args.X)}, OK


def _oracle_is_important(args, g):
    x = vset(args.X)
    return {"important": x in brute_important(g, args.A, args.B, len(x))}, OK


def _args_reach(p):
    p.add_argument("--s", type=vertex_list, required=True, help="single source vertex")
    p.add_argument("--pool", type=vertex_list, required=True)
    p.add_argument("--k", type=int, required=True)


def _source(args) -> int:
    if len(args.s) != 1:
        raise UsageError("--s takes exactly one vertex")
    return args.s[0]


def _reach(args, g, fn=reach_profile):
    profiles = fn(g, _source(args), args.pool, args.k)
    return {"profiles": [list(p) for p in profiles], "count": len(profiles),
            "bound": profile_bound(len(args.pool), args.k)}, OK


def _oracle_reach(args, g):
    return _reach(args, g, brute_reach_profile)


def _args_shatter(p):
    p.add_argument("--W", type=vertex_list, required=True)
    p.add_argument("--k", type=int, required=True)


def _report(rep: CheckReport):
    return rep.to_dict(), OK if rep.passed else NEGATIVE


def _shatter(args, g):
    return _report(CheckReport(is_shattered(g, args.k, args.W)))


def _args_check(p):
    p.add_argument("--T", type=vertex_list_or_file, required=True)
    p.add_argument("--eps", type=fraction, required=True)
    p.add_argument("--k", type=int, required=True)


def _checker(fn):
    return lambda args, g: _report(fn(g, args.T, args.eps, args.k))


def _args_skew(p):
    p.add_argument("--instance", default=None,
                   help="JSON {graph, pairs, k, mode}; defaults to --graph")


def _skew_instance(args) -> SkewInstance:
    obj = json.loads(_read(args.instance or args.graph))
    try:
        g = graph_from_json(json.dumps(obj["graph"]))
        return SkewInstance(g, tuple(map(tuple, obj["pairs"])), int(obj["k"]),
                            obj.get("mode", "vertex"))
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed skew instance: {exc}") from None


def _skew(args, _g, fn=solve_skew):
    sol = fn(_skew_instance(args))
    if sol is None:
        return {"solution": None}, NEGATIVE
    return {"solution": {"deleted": list(sol.deleted), "mode": sol.mode}}, OK


def _oracle_skew(args, g):
    return _skew(args, g, brute_skew)


def _args_balanced(p):
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--b", type=fraction, required=True)
    p.add_argument("--eps", type=fraction, default=Fraction(0))
    p.add_argument("--mode", choices=["vertex", "arc"], default="vertex")
    src = p.add_mutually_exclusive_group()
    src.add_argument("--terminals", type=vertex_list_or_file)
    src.add_argument("--seed", type=int)
    p.add_argument("--case", type=int, choices=[1, 2], default=None)


def _balanced(args, g):
    terminals = args.terminals
    if terminals is None and args.seed is None:
        terminals = tuple(range(g.n))
    q = BalancedQuery(g, args.k, args.b, args.eps, args.mode, terminals, args.seed)
    ans = solve_balanced(q, case=args.case)
    return ans.to_dict(), OK if ans.found else NEGATIVE


def _oracle_balanced(args, g):
    # the oracle bounds component sizes directly, i.e. T = V and eps = 0
    f = brute_balanced(g, args.k, args.b, args.mode)
    everyone = tuple(range(g.n))
    if f is None:
        ans = BalancedAnswer("no_separator", None, None, everyone)
    else:
        ans = BalancedAnswer("solution", f, achieved_bound(g, f, args.mode), everyone)
    return ans.to_dict(), OK if ans.found else NEGATIVE


def _args_bisect(p):
    p.add_argument("--f", type=vertex_list, default=())
    p.add_argument("--beta", type=fraction, required=True)
    p.add_argument("--mode", choices=["vertex", "arc"], default="vertex")


def _bisect(args, g):
    side_a, side_b = extract_prefix_bisection(g, args.f, args.beta, args.mode)
    return {"A": list(side_a), "B": list(side_b)}, OK


def _args_sparsify(p):
    p.add_argument("--terminals", type=vertex_list_or_file, required=True)
    p.add_argument("--c", type=int, required=True)


def _sparsify(args, g):
    return build_sparsifier(g, args.terminals, args.c, jobs=args.jobs).to_dict(), OK


def _args_sparsify_verify(p):
    _args_sparsify(p)
    p.add_argument("--sparsifier", default=None,
                   help="JSON written by 'sparsify'; rebuilt when omitted")


def _sparsify_verify(args, g):
    if args.sparsifier is None:
        res = build_sparsifier(g, args.terminals, args.c, jobs=args.jobs)
    else:
        obj = json.loads(_read(args.sparsifier))
        res = SparsifierResult(graph_from_json(json.dumps(obj["graph"])),
                               vset(obj["kept_ids"]), vset(obj["relevant_ids"]))
    return _report(verify_sparsifier(g, res, args.terminals, args.c))


COMMANDS = {
    "enum-important": (_args_enum_important, _enum_important, _oracle_enum_important),
    "enum-all-subsets": (_args_enum_all, _enum_all, _oracle_enum_all),
    "min-vertex-cut": (_args_min_cut, _min_cut, None),
    "is-important": (_args_is_important, _is_important, _oracle_is_important),
    "reach-profile": (_args_reach, _reach, _oracle_reach),
    "shatter-check": (_args_shatter, _shatter, None),
    "sample-check": (_args_check, _checker(is_sample_set), None),
    "net-check": (_args_check, _checker(is_net), None),
    "detect-check": (_args_check, _checker(is_detection_set), None),
    "skew-solve": (_args_skew, _skew, _oracle_skew),
    "balanced-sep": (_args_balanced, _balanced, _oracle_balanced),
    "bisect": (_args_bisect, _bisect, None),
    "sparsify": (_args_sparsify, _sparsify, None),
    "sparsify-verify": (_args_sparsify_verify, _sparsify_verify, None),
}
NEEDS_NO_GRAPH = {"skew-solve"}


def _common() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", default="-", help="graph file, or '-' for stdin")
    common.add_argument("--jobs", type=int, default=1, help="worker processes")
    return common


def _add_gen(sub):
    gen = sub.add_parser("gen", help="print a generated graph in text format")
    fam = gen.add_subparsers(dest="family", required=True)
    p = fam.add_parser("star")
    p.add_argument("--c", type=int, required=True)
    p = fam.add_parser("corestar")
    p.add_argument("--c", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    fam.add_parser("fig1")
    p = fam.add_parser("random")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--dag", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="impsep", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common()
    for name, (setup, _fast, _oracle) in COMMANDS.items():
        setup(sub.add_parser(name, parents=[common]))
    _add_gen(sub)
    oracle = sub.add_parser("oracle", help="brute-force twin of a subcommand")
    osub = oracle.add_subparsers(dest="target", required=True)
    for name, (setup, _fast, brute) in COMMANDS.items():
        if brute is not None:
            setup(osub.add_parser(name, parents=[common]))
    return parser


def _generate(args) -> str:
    if args.family == "star":
        return gen_star(args.c).graph.to_text()
    if args.family == "corestar":
        return gen_corestar(args.c, args.k).graph.to_text()
    if args.family == "fig1":
        return gen_fig1().graph.to_text()
    make = gen_random_dag if args.dag else gen_random
    return make(args.n, args.m, args.seed).to_text()


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Parse and execute; returns the exit code and the stdout text."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return (exc.code if isinstance(exc.code, int) else USAGE), ""
    if args.command == "gen":
        return OK, _generate(args)
    if args.command == "oracle":
        handler = COMMANDS[args.target][2]
        name = args.target
    else:
        handler = COMMANDS[args.command][1]
        name = args.command
    if getattr(args, "jobs", 1) < 1:
        raise UsageError("--jobs must be at least 1")
    g = None if name in NEEDS_NO_GRAPH else load_graph(args.graph)
    payload, code = handler(args, g)
    return code, json.dumps(payload, separators=(",", ":")) + "\n"


def main(argv: list[str] | None = None) -> int:
    try:
        code, out = run(argv)
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"impsep: error: {exc}", file=sys.stderr)
        return USAGE
    except Exception as exc:  # noqa: BLE001 - last-resort guard for the exit-code contract
        print(f"impsep: internal error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return INTERNAL
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
