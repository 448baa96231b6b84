"""Command-line entry point: ``phcakernel <command> ...``.

Exit codes: 0 success (member, yes, kernel emitted), 1 error, 2 no-instance,
3 not PHCA.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace

from .errors import GraphInputError
from .graph import format_edge_list, read_edge_list, write_edge_list
from .obstructions import enumerate_minimal_small_obstructions, find_any_obstruction
from .pipeline import kernelize
from .recognition import is_phca
from .solvers import ORACLES, approx_solve, exact_solve
from .verification import GeneratorSpec, gen_phca

OK, ERROR, NO, NOT_PHCA = 0, 1, 2, 3


def _emit(obj) -> None:
    print(json.dumps(obj, sort_keys=True))


def cmd_find_obstruction(args) -> int:
    G = read_edge_list(args.input)
    if args.all_small:
        for S in enumerate_minimal_small_obstructions(G):
            obs = find_any_obstruction(G.induced_subgraph(S))
            _emit({"kind": obs.kind, "vertices": sorted(S)})
        return OK
    obs = find_any_obstruction(G)
    if obs is not None:
        _emit(obs.to_json())
    return OK


def cmd_recognize(args) -> int:
    res = is_phca(read_edge_list(args.input))
    if res.member:
        _emit({"phca": True})
        return OK
    _emit({"phca": False, "certificate": res.certificate.to_json()})
    return NOT_PHCA


def cmd_solve(args) -> int:
    G = read_edge_list(args.input)
    if args.oracle == "exact":
        sol = exact_solve(G, args.k)
    else:
        sol = approx_solve(ORACLES[args.oracle](), G)
        if sol.size > args.k:
            sol = None
    if sol is None:
        _emit({"yes": False, "deleted": None})
        return NO
    _emit({"yes": True, "deleted": sorted(sol.deleted)})
    return OK


def cmd_kernelize(args) -> int:
    G = read_edge_list(args.input)
    res = kernelize(G, args.k, ORACLES[args.oracle]())
    if args.trace:
        with open(args.trace, "w") as fh:
            fh.write(res.trace_json())
    stats = dict(res.stats, outcome=res.outcome)
    if res.reason:
        stats["reason"] = res.reason
    _emit(stats)
    if not res.is_kernel:
        return NO
    if args.output:
        write_edge_list(res.instance.graph, args.output)
    return OK


def cmd_gen(args) -> int:
    spec = GeneratorSpec()
    if args.spec:
        with open(args.spec) as fh:
            spec = GeneratorSpec.from_json(fh.read())
    if args.seed is not None:
        spec = replace(spec, seed=args.seed)
    G = gen_phca(spec)
    if args.output:
        write_edge_list(G, args.output)
    else:
        sys.stdout.write(format_edge_list(G))
    return OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="phcakernel", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("find-obstruction", help="print an obstruction as JSON")
    s.add_argument("--input", required=True)
    s.add_argument("--all-small", action="store_true", help="every obstruction on fewer than 12 vertices, one per line")
    s.set_defaults(func=cmd_find_obstruction)

    s = sub.add_parser("recognize", help="exit 0 if PHCA, 3 with a certificate otherwise")
    s.add_argument("--input", required=True)
    s.set_defaults(func=cmd_recognize)

    for name, func, help_ in (("solve", cmd_solve, "find a deletion set of size <= k"),
                              ("kernelize", cmd_kernelize, "reduce (G, k) to an equivalent kernel")):
        s = sub.add_parser(name, help=help_)
        s.add_argument("--input", required=True)
        s.add_argument("--k", type=int, required=True)
        s.add_argument("--oracle", choices=sorted(ORACLES), default="exact")
        if name == "kernelize":
            s.add_argument("--trace", help="write the rule trace as JSON")
            s.add_argument("--output", help="write the kernel graph as an edge list")
        s.set_defaults(func=func)

    s = sub.add_parser("gen", help="generate a random PHCA graph, optionally with noise")
    s.add_argument("--spec", help="generator spec JSON")
    s.add_argument("--seed", type=int)
    s.add_argument("--output")
    s.set_defaults(func=cmd_gen)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "k", 0) < 0:
        print("error: --k must be nonnegative", file=sys.stderr)
        return ERROR
    try:
        return args.func(args)
    except (GraphInputError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
