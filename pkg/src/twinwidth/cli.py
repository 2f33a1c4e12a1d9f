"""Command-line front end.

Exit codes: 0 claim verified / command succeeded, 2 claim violated,
1 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from twinwidth import generators, matrix, solver, witnesses
from twinwidth.core import Graph
from twinwidth.formats import (
    FormatError,
    detect_kind,
    read_graph,
    read_matrix,
    read_order,
    read_sequence,
    to_dot,
    write_graph,
    write_order,
    write_sequence,
)
from twinwidth.sequences import ContractionSequence, SequenceError, verify, verify_oriented

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_VIOLATED = 2


class UsageError(Exception):
    pass


@dataclass
class RunManifest:
    subcommand: str
    inputs: list[str]
    parameters: dict[str, Any]
    seed: int | None
    output: str | None
    wall_time: float = 0.0
    result: dict[str, Any] = field(default_factory=dict)


def _read(path: str) -> str:
    try:
        return sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc}") from exc


def _load_graph(path: str) -> Graph:
    return read_graph(_read(path))


def cmd_gen(args: argparse.Namespace) -> tuple[int, dict[str, Any]]:
    fam = args.family
    extra: dict[str, Any] = {}
    if fam == "gt":
        G_t = generators.build_gt(generators.GtParams(args.t, args.depth),
                                  max_vertices=args.max_vertices)
        G = G_t.graph
        if args.sequence_out:
            _write(args.sequence_out, write_sequence(witnesses.gt_oriented_sequence(G_t)))
        if args.order_out:
            _write(args.order_out, write_order(witnesses.gt_order(G_t)))
        extra = {"t": args.t, "depth": args.depth}
    elif fam == "paley":
        G = generators.build_paley(args.q)
    elif fam == "tree":
        G = generators.random_tree(args.n, args.seed)
        if args.sequence_out:
            _write(args.sequence_out, write_sequence(witnesses.tree_sequence(G)))
    elif fam == "kary":
        G = generators.build_kary_tree(args.arity, args.depth)
    elif fam == "fig1":
        G = generators.fig1_graph()
        if args.sequence_out:
            _write(args.sequence_out, write_sequence(generators.fig1_sequence()))
    elif fam == "random":
        G = generators.random_graph(args.n, args.p, args.seed)
    elif fam == "path":
        G = generators.path_graph(args.n)
    elif fam == "cycle":
        G = generators.cycle_graph(args.n)
    else:  # complete
        G = generators.complete_graph(args.n)
    _write(args.output, write_graph(G))
    return EXIT_OK, {"n": G.n, "m": G.m, **extra}


def _solver_config(args: argparse.Namespace) -> solver.SolverConfig:
    return solver.SolverConfig(max_width_probe=args.max_width_probe,
                               node_budget=args.node_budget,
                               memo_capacity=args.memo_capacity)


def cmd_tww(args: argparse.Namespace) -> tuple[int, dict[str, Any]]:
    G = _load_graph(args.graph)
    if args.greedy:
        res = solver.greedy_upper_bound(G)
        if args.oriented:
            width = verify_oriented(res.witness, full=True).width
            res = solver.SolveResult(width, res.witness, 0, False, 0, width)
    elif args.oriented:
        res = solver.exact_oriented_twinwidth(G, _solver_config(args))
    else:
        res = solver.exact_twinwidth(G, _solver_config(args))
    if args.witness:
        _write(args.witness, write_sequence(res.witness))
    summary = {"value": res.value, "exact": res.exact, "lower_bound": res.lower_bound,
               "upper_bound": res.upper_bound, "explored": res.explored,
               "oriented": args.oriented, "mode": "greedy" if args.greedy else "exact"}
    if not args.json:
        kind = "oriented twin-width" if args.oriented else "twin-width"
        if res.exact:
            print(f"{kind} = {res.value}")
        elif args.greedy:
            print(f"{kind} <= {res.value} (greedy upper bound)")
        else:
            print(f"{kind} in [{res.lower_bound}, {res.upper_bound}] (search budget exhausted)")
    return EXIT_OK, summary


def cmd_verify(args: argparse.Namespace) -> tuple[int, dict[str, Any]]:
    G = _load_graph(args.graph)
    try:
        seq = read_sequence(_read(args.sequence), G, oriented=args.oriented)
        report = (verify_oriented if args.oriented else verify)(seq, full=args.full)
    except SequenceError as exc:
        if not args.json:
            print(f"invalid sequence: {exc}")
        vertex = None if exc.vertex is None else exc.vertex + 1
        return EXIT_VIOLATED, {"valid": False, "step": exc.step, "vertex": vertex,
                               "error": str(exc)}
    summary: dict[str, Any] = {"valid": True, "width": report.width, "partial": report.partial,
                               "steps": len(seq.steps), "oriented": report.oriented}
    code = EXIT_OK
    if args.max_width is not None:
        bad = report.first_exceeding(args.max_width)
        if bad is not None:
            code = EXIT_VIOLATED
            summary.update(violation_step=bad.index, violation_vertex=bad.vertex + 1,
                           violation_degree=bad.max_red_degree)
    if not args.json:
        kind = "oriented width" if args.oriented else "width"
        state = "partial" if report.partial else "full"
        print(f"{kind} {report.width} ({state} sequence, {len(seq.steps)} steps)")
        if code == EXIT_VIOLATED:
            print(f"violation: after step {summary['violation_step']} vertex "
                  f"{summary['violation_vertex']} has red degree {summary['violation_degree']} "
                  f"> {args.max_width}")
    return code, summary


def cmd_matrix(args: argparse.Namespace) -> tuple[int, dict[str, Any]]:
    text = _read(args.input)
    kind = detect_kind(text)
    summary: dict[str, Any] = {}
    G = None
    if kind == "m":
        if args.order or args.gt_order:
            raise UsageError("orders apply to graph inputs only")
        M = read_matrix(text)
        sub = None
    elif kind == "g":
        G = read_graph(text)
        sub = None
        if args.gt_order:
            if args.t is None or args.depth is None:
                raise UsageError("--gt-order needs --t and --depth")
            G_t = generators.build_gt(generators.GtParams(args.t, args.depth))
            if G_t.graph != G:
                raise UsageError("graph file does not match G_t for the given --t/--depth")
            order = witnesses.gt_order(G_t)
            M = matrix.adjacency_matrix(G, order)
            apex_pos = [order.position[x] for x in G_t.apexes]
            sub = matrix.delete_rows_cols(M, apex_pos, apex_pos)
        elif args.order:
            M = matrix.adjacency_matrix(G, read_order(_read(args.order)))
        else:
            M = matrix.adjacency_matrix(G)
    else:
        raise UsageError(f"expected a graph or matrix file, found record {kind!r}")

    lines = []
    if args.grid is not None:
        div = matrix.find_grid_minor(M, args.grid)
        summary["grid"] = {"k": args.grid, "found": div is not None,
                           "division": asdict(div) if div else None}
        lines.append(f"{args.grid}-grid minor: {'yes' if div else 'no'}")
    if args.mixed is not None:
        div = matrix.find_mixed_minor(M, args.mixed)
        summary["mixed"] = {"k": args.mixed, "found": div is not None,
                            "division": asdict(div) if div else None}
        lines.append(f"{args.mixed}-mixed minor: {'yes' if div else 'no'}")
    if args.gridnum:
        summary["grid_number"] = matrix.grid_number(M)
        lines.append(f"grid number: {summary['grid_number']}")
    if args.mixednum:
        summary["mixed_number"] = matrix.mixed_number(M)
        lines.append(f"mixed number: {summary['mixed_number']}")
    if args.graph_gridnum or args.graph_mixednum:
        if G is None:
            raise UsageError("graph-level numbers need a graph input")
        if args.graph_gridnum:
            summary["graph_grid_number"] = matrix.graph_grid_number(G)
            lines.append(f"graph grid number: {summary['graph_grid_number']}")
        if args.graph_mixednum:
            summary["graph_mixed_number"] = matrix.graph_mixed_number(G)
            lines.append(f"graph mixed number: {summary['graph_mixed_number']}")
    if args.chain:
        summary["chain"] = matrix.longest_decreasing_chain(M)
        lines.append(f"longest decreasing chain: {summary['chain']}")
        if sub is not None:
            summary["tree_chain"] = matrix.longest_decreasing_chain(sub)
            summary["tree_chain_upper"] = matrix.longest_decreasing_chain(sub, "upper")
            summary["tree_chain_lower"] = matrix.longest_decreasing_chain(sub, "lower")
            lines.append(f"longest decreasing chain without apexes: {summary['tree_chain']} "
                         f"(upper triangle {summary['tree_chain_upper']}, "
                         f"lower triangle {summary['tree_chain_lower']})")
    if not lines:
        raise UsageError("choose at least one of --grid, --mixed, --gridnum, --mixednum, "
                         "--graph-gridnum, --graph-mixednum, --chain")
    if not args.json:
        print("\n".join(lines))
    return EXIT_OK, summary


def cmd_export(args: argparse.Namespace) -> tuple[int, dict[str, Any]]:
    G = _load_graph(args.graph)
    frames = None if args.frame is None else [args.frame]
    try:
        seq = read_sequence(_read(args.sequence), G) if args.sequence else ContractionSequence(G)
        dot = to_dot(seq, frames, oriented=args.oriented)
    except SequenceError as exc:
        print(f"invalid sequence: {exc}", file=sys.stderr)
        return EXIT_VIOLATED, {"error": str(exc), "step": exc.step}
    _write(args.output, dot)
    return EXIT_OK, {"frames": len(seq.steps) + 1 if frames is None else 1}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="twinwidth", description=__doc__.splitlines()[0])
    p.add_argument("--json", action="store_true", help="print a JSON report with the run manifest")
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="generate a graph file")
    g.add_argument("family", choices=["gt", "paley", "tree", "kary", "fig1", "random",
                                      "path", "cycle", "complete"])
    g.add_argument("--t", type=int, default=2)
    g.add_argument("--depth", type=int, default=2)
    g.add_argument("--q", type=int, default=5)
    g.add_argument("--n", type=int, default=10)
    g.add_argument("--arity", type=int, default=2)
    g.add_argument("--p", type=float, default=0.5)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--max-vertices", type=int, default=generators.DEFAULT_GT_CAP)
    g.add_argument("--sequence-out", help="also write the family's witness sequence (gt, tree, fig1)")
    g.add_argument("--order-out", help="also write the grid-number order (gt)")
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_gen)

    t = sub.add_parser("tww", help="compute (oriented) twin-width")
    t.add_argument("graph")
    mode = t.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="exact search (default)")
    mode.add_argument("--greedy", action="store_true", help="greedy upper bound only")
    t.add_argument("--oriented", action="store_true")
    t.add_argument("--node-budget", type=int, default=solver.SolverConfig.node_budget)
    t.add_argument("--memo-capacity", type=int, default=solver.SolverConfig.memo_capacity)
    t.add_argument("--max-width-probe", type=int, default=solver.SolverConfig.max_width_probe)
    t.add_argument("-w", "--witness", help="write the witness sequence here")
    t.set_defaults(func=cmd_tww)

    v = sub.add_parser("verify", help="replay a contraction sequence")
    v.add_argument("graph")
    v.add_argument("sequence")
    v.add_argument("--oriented", action="store_true")
    v.add_argument("--full", action="store_true", help="require the sequence to end at one vertex")
    v.add_argument("--max-width", type=int, help="claimed width; exceeding it exits with 2")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("matrix", help="grid/mixed minors of an ordered adjacency or 0/1 matrix")
    m.add_argument("input", help="graph file or matrix file")
    order = m.add_mutually_exclusive_group()
    order.add_argument("--order", help="vertex order file")
    order.add_argument("--gt-order", action="store_true", help="use the G_t layered order")
    m.add_argument("--t", type=int)
    m.add_argument("--depth", type=int)
    m.add_argument("--grid", type=int, metavar="K")
    m.add_argument("--mixed", type=int, metavar="K")
    m.add_argument("--gridnum", action="store_true")
    m.add_argument("--mixednum", action="store_true")
    m.add_argument("--graph-gridnum", action="store_true")
    m.add_argument("--graph-mixednum", action="store_true")
    m.add_argument("--chain", action="store_true")
    m.set_defaults(func=cmd_matrix)

    e = sub.add_parser("export", help="DOT snapshots of a sequence")
    e.add_argument("graph")
    e.add_argument("--sequence")
    e.add_argument("--frame", type=int)
    e.add_argument("--dot", action="store_true", help="DOT output (the only format)")
    e.add_argument("--oriented", action="store_true")
    e.add_argument("-o", "--output")
    e.set_defaults(func=cmd_export)
    return p


def _manifest(args: argparse.Namespace) -> RunManifest:
    skip = {"func", "command", "json", "graph", "sequence", "input", "order", "output",
            "witness", "sequence_out", "order_out"}
    params = {k: v for k, v in vars(args).items() if k not in skip}
    inputs = [getattr(args, k) for k in ("graph", "sequence", "input", "order")
              if getattr(args, k, None)]
    output = getattr(args, "output", None) or getattr(args, "witness", None)
    return RunManifest(args.command, inputs, params, getattr(args, "seed", None), output)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    manifest = _manifest(args)
    start = time.perf_counter()
    try:
        code, summary = args.func(args)
    except (UsageError, FormatError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    manifest.wall_time = round(time.perf_counter() - start, 6)
    manifest.result = summary
    if args.json:
        print(json.dumps({"exit_code": code, "manifest": asdict(manifest)}, indent=2, default=str))
    if manifest.output and manifest.output != "-":
        Path(manifest.output + ".manifest.json").write_text(
            json.dumps(asdict(manifest), indent=2, default=str) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
