"""Command-line interface: ``ctxgraph <command> ...``.

Exit codes: 0 success, 1 input error, 2 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import config
from .census import DEFAULT_TARGETS, census, parse_target, table1_census
from .eprinciple import chain_report
from .errors import CtxGraphError, ResourceCapError
from .events import build_chsh_events, build_s_anticycle, build_s_cycle
from .graph import parse_graph_spec
from .orthorep import build_or_anticycle, build_or_cycle, handle_value, verify_faithful
from .report import analyze_or_partial

EXIT_OK, EXIT_INPUT, EXIT_CAP = 0, 1, 2

GRAMMAR = ('spec := cycle:N | anticycle:N | circulant:N:A,B,... | johnson:N:K | shrikhande'
           ' | complete:N | complement(spec) | product(spec,spec) | power(spec,M) | file:PATH')

CATALOG = [
    ("cycle:5", "KCBS exclusivity graph, the 5-cycle"),
    ("cycle:7", "odd hole on 7 vertices"),
    ("anticycle:7", "odd antihole on 7 vertices"),
    ("circulant:8:1,4", "CHSH exclusivity graph"),
    ("johnson:5:2", "Johnson graph J(5,2), complement of the Petersen graph"),
    ("shrikhande", "Shrikhande graph"),
    ("complement(shrikhande)", "Mermin-row exclusivity graph"),
    ("complete:4", "complete graph, a perfect example"),
    ("power(cycle:5,2)", "disjunctive square of the 5-cycle"),
]


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


def _fmt_num(x, digits=5):
    return "-" if x is None else f"{x:.{digits}f}"


def _graph(args):
    cap = config.max_product_vertices() if args.max_vertices is None else args.max_vertices
    return parse_graph_spec(args.spec, max_vertices=cap)


# -- commands ------------------------------------------------------------------


def cmd_analyze(args):
    g = _graph(args)
    try:
        budget = args.clique_budget_seconds
        r = analyze_or_partial(g, config.clique_budget_seconds() if budget is None else budget)
    except ResourceCapError as exc:
        if args.partial and exc.partial is not None:
            _emit(args, {"partial": True, **exc.partial.to_dict()}, _analysis_lines(exc.partial))
        raise
    problems = r.consistency_problems()
    for p in problems:
        print(f"warning: {p}", file=sys.stderr)
    _emit(args, r.to_dict(), _analysis_lines(r))
    return EXIT_OK


def _analysis_lines(r):
    lines = [f"graph            {r.label}  (n={r.n}, edges={r.edges})",
             f"alpha            {r.alpha if r.alpha is not None else '-'}",
             f"omega            {r.omega if r.omega is not None else '-'}",
             f"chi              {r.chi if r.chi is not None else '-'}"]
    if r.theta is not None:
        gap = f", gap {r.theta.certified_gap:.1e}" if r.theta.method == "sdp" else ""
        lines.append(f"theta            {_fmt_num(r.theta.value)}  ({r.theta.method}{gap})")
    lines.append(f"perfect          {r.perfect if r.perfect is not None else '-'}")
    lines.append(f"min. imperfect   {r.minimal_imperfect if r.minimal_imperfect is not None else '-'}")
    for name, w in (("odd hole", r.hole), ("odd antihole", r.antihole)):
        lines.append(f"{name:<17}{w.one_based() if w is not None else 'none'}")
    if r.classification is not None:
        c = r.classification
        lines.append(f"classification   {c.verdict}  (theta - alpha = {c.margin:.5f})")
    if r.dimension is not None:
        won = [t["term"] for t in r.dimension.provenance if t.get("winner")]
        lines.append(f"dimension bound  {r.dimension.bound}  (from {', '.join(won)})")
    return lines


def cmd_census(args):
    g = _graph(args)
    targets = [t.strip() for t in args.targets.split(",")] if args.targets else list(DEFAULT_TARGETS)
    for t in targets:
        parse_target(t)
    rep = census(g, targets, threads=args.threads)
    _emit(args, rep.to_dict(), [rep.graph] + [f"  {k:<6} {v}" for k, v in rep.counts.items()])
    return EXIT_OK


def cmd_table1(args):
    rows = table1_census(threads=args.threads)
    w = max(len(r.graph) for r in rows) + 2
    head = "graph".ljust(w) + "".join(t.rjust(7) for t in DEFAULT_TARGETS)
    lines = [head] + [r.graph.ljust(w) + "".join(str(r.counts[t]).rjust(7) for t in DEFAULT_TARGETS)
                      for r in rows]
    _emit(args, [r.to_dict() for r in rows], lines)
    return EXIT_OK


def cmd_orthorep(args):
    build = build_or_cycle if args.family == "cycle" else build_or_anticycle
    rep = build(args.n)
    check = verify_faithful(rep)
    value = handle_value(rep)
    payload = {"representation": json.loads(rep.to_json()), "handle_value": value,
               "verification": check.to_dict()}
    lines = [f"target           {rep.target.label}",
             f"dimension        {rep.dimension}",
             f"handle value     {value:.5f}",
             f"verify           {'pass' if check.ok else 'FAIL'}",
             f"max |<u,v>| on edges      {check.max_adjacent_residual:.2e}",
             f"min |<u,v>| on non-edges  {check.min_nonadjacent_magnitude:.3e}",
             f"max norm error            {check.max_norm_error:.2e}"]
    _emit(args, payload, lines)
    return EXIT_OK if check.ok else EXIT_INPUT


def cmd_inequality(args):
    if args.family == "chsh":
        inst = build_chsh_events()
    elif args.n is None:
        raise _usage(f"{args.family} needs an odd n")
    elif args.family == "s_cycle":
        inst = build_s_cycle(args.n)
    else:
        inst = build_s_anticycle(args.n)
    lines = [f"family           {inst.family}",
             f"events           {len(inst.events)}"]
    lines += [f"  {e}" for e in inst.events]
    lines += [f"nchv bound       {inst.nchv_bound}",
              f"quantum bound    {_fmt_num(inst.quantum_bound.value)}  ({inst.quantum_bound.method})"]
    _emit(args, inst.to_dict(), lines)
    return EXIT_OK


def cmd_eprinciple(args):
    g = _graph(args)
    chain = chain_report(g, args.max_m, extended=args.extended,
                         max_vertices=args.max_vertices, budget_seconds=args.clique_budget_seconds)
    lines = [f"graph            {chain.graph}",
             f"nchv             {chain.nchv}",
             f"quantum          {_fmt_num(chain.quantum, 4)}"]
    lines += [f"E{e.m:<15} {_fmt_num(e.value, 4)}  (p = {e.p})" for e in chain.e_series]
    lines += [f"skipped m={s['m']}: {s['reason']}" for s in chain.skipped]
    _emit(args, chain.to_dict(), lines)
    return EXIT_OK


def cmd_catalog(args):
    rows = []
    for spec, note in CATALOG:
        g = parse_graph_spec(spec)
        rows.append({"spec": spec, "n": g.n, "edges": g.num_edges,
                     "vertex_transitive": g.vertex_transitive, "description": note})
    lines = [f"{r['spec']:<24} n={r['n']:<4} edges={r['edges']:<5} {r['description']}" for r in rows]
    lines += ["", GRAMMAR]
    _emit(args, {"graphs": rows, "grammar": GRAMMAR}, lines)
    return EXIT_OK


# -- parser --------------------------------------------------------------------


class _UsageError(Exception):
    pass


def _usage(msg):
    return _UsageError(msg)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for resource caps here
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-vertices", type=int, default=None,
                        help="cap on graph/product size (env CTXGRAPH_MAX_VERTICES)")
    common.add_argument("--clique-budget-seconds", type=float, default=None,
                        help="time budget per clique search (env CTXGRAPH_CLIQUE_BUDGET_SECONDS)")
    common.add_argument("--threads", type=int, default=None,
                        help="worker processes for the census (default: available cores)")
    common.add_argument("--partial", action="store_true",
                        help="print the partial report when a cap is hit")

    p = _Parser(prog="ctxgraph", description="Graph-theoretic tools for quantum contextuality.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", parents=[common], help="all invariants of one graph")
    a.add_argument("spec")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("census", parents=[common], help="induced odd holes/antiholes count")
    c.add_argument("spec")
    c.add_argument("--targets", default=None, help="comma list such as C5,C7,C7bar")
    c.set_defaults(func=cmd_census)

    t = sub.add_parser("table1", parents=[common], help="census of the four inequality graphs")
    t.set_defaults(func=cmd_table1)

    o = sub.add_parser("orthorep", parents=[common], help="optimal orthonormal representation")
    o.add_argument("family", choices=("cycle", "anticycle"))
    o.add_argument("n", type=int)
    o.set_defaults(func=cmd_orthorep)

    i = sub.add_parser("inequality", parents=[common], help="events of an inequality family")
    i.add_argument("family", choices=("chsh", "s_cycle", "s_anticycle"))
    i.add_argument("n", type=int, nargs="?")
    i.set_defaults(func=cmd_inequality)

    e = sub.add_parser("eprinciple", parents=[common], help="E-principle bound chain")
    e.add_argument("spec")
    e.add_argument("--max-m", type=int, default=2)
    e.add_argument("--extended", action="store_true",
                   help="larger products and a longer clique budget")
    e.set_defaults(func=cmd_eprinciple)

    k = sub.add_parser("catalog", parents=[common], help="named graphs and the graph grammar")
    k.set_defaults(func=cmd_catalog)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    # flags override the environment; None keeps each module's own default
    if args.threads is None:
        args.threads = config.threads()
    try:
        return args.func(args)
    except ResourceCapError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (_UsageError, CtxGraphError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
