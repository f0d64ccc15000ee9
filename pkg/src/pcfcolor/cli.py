"""Command-line interface: ``pcfcolor {construct,color,verify,oracle,check,reproduce}``.

Exit codes: 0 on verified success, 2 on a verification failure (or an
oracle run that hit its node budget), 3 when the input violates a
precondition or cannot be read.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from pathlib import Path

from .biconvex import BipartiteLayout, check_layout, pcf_color_biconvex
from .constructions import (
    FamilyInstance,
    build_cpn,
    build_gk,
    build_hk,
    complete_bipartite,
    cycle_instance,
    odd_color_hk,
    pcf_color_gk,
    random_biconvex,
    random_claw_free,
    random_graph,
    random_permutation,
)
from .errors import AlgorithmInvariantViolated, ColoringError, Exhausted, SideColorerContractViolated
from .graph import Coloring, Graph, Mode, is_connected, verify
from .io import coloring_from_json, coloring_to_json, dump_json, format_edge_list, read_graph
from .oracle import SearchMode, exact_chromatic
from .recolor import find_claw, is_quasi_line, pcf_color_claw_free, pcf_color_quasi_line
from .reduction import (
    PermutationRep,
    antichain_partition,
    check_circular_arcs,
    convex_round_product,
    pcf_color_permutation,
)
from .reproduce import DEFAULT_SEED, SUITES, format_table, run_suite
from .subdivision import full_subdivision, odd4_subdivision, pcf4_subdivision

EXIT_OK = 0
EXIT_FAILED = 2
EXIT_PRECONDITION = 3

ALGORITHMS = (
    "clawfree",
    "quasiline",
    "biconvex",
    "permutation",
    "convexround",
    "subdivision-pcf4",
    "subdivision-odd4",
    "gk",
    "hk",
)

FAMILIES = ("gk", "hk", "cpn", "cycle", "kmn", "random", "random-clawfree", "random-biconvex", "permutation")


@dataclass
class RunReport:
    command: list[str]
    instance: str
    algorithm: str
    colors_used: int
    bound: str | None
    bound_value: int | None
    verified: bool
    seconds: float
    seed: int
    extra: dict = field(default_factory=dict)

    @property
    def within_bound(self) -> bool:
        return self.bound_value is None or self.colors_used <= self.bound_value

    def to_json(self) -> dict:
        return asdict(self)

    def to_text(self) -> str:
        bound = "-" if self.bound is None else f"{self.bound} = {self.bound_value}"
        status = "verified" if self.verified and self.within_bound else "FAILED"
        return (
            f"{self.algorithm} on {self.instance}: {self.colors_used} colors "
            f"(bound {bound}), {status}, {self.seconds:.3f}s"
        )


class _Precondition(Exception):
    """Input problem detected by the CLI itself (missing flag, bad file)."""


# ---------------------------------------------------------------- helpers


def _load_json(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise _Precondition(f"cannot read JSON from {path}: {exc}") from None


def _load_graph(args) -> Graph:
    if not args.input:
        raise _Precondition("--input is required")
    try:
        return read_graph(args.input, args.format)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        if isinstance(exc, ColoringError):
            raise
        raise _Precondition(f"cannot read graph from {args.input}: {exc}") from None


def _parse_order(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.replace(",", " ").split())
    except ValueError:
        raise _Precondition(f"bad vertex order {text!r}") from None


def _circular_order(args, g: Graph) -> tuple[int, ...]:
    if args.circular_order:
        return _parse_order(args.circular_order)
    if args.order_file:
        try:
            return _parse_order(Path(args.order_file).read_text())
        except OSError as exc:
            raise _Precondition(f"cannot read order file: {exc}") from None
    return tuple(g.vertices())


def _base_coloring(args, g: Graph, limit: int) -> Coloring:
    if args.base:
        return coloring_from_json(_load_json(args.base))
    res = exact_chromatic(g, SearchMode.PROPER, max(limit, 1), args.budget_nodes)
    if res.value is None:
        raise _Precondition(f"graph is not {limit}-colorable")
    return res.certificate


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, indent=2) if args.json else text)


# ---------------------------------------------------------------- construct


def build_family(args) -> FamilyInstance:
    fam, seed = args.family, args.seed
    if fam == "gk":
        return build_gk(args.k)
    if fam == "hk":
        return build_hk(args.k)
    if fam == "cpn":
        return build_cpn(args.n)
    if fam == "cycle":
        return cycle_instance(args.n)
    if fam == "kmn":
        return complete_bipartite(args.m, args.n)
    if fam == "random":
        return FamilyInstance(random_graph(args.n, args.p, seed), f"G({args.n},{args.p})")
    if fam == "random-clawfree":
        return FamilyInstance(random_claw_free(args.n, args.p, seed), f"clawfree({args.n},{args.p})")
    if fam == "random-biconvex":
        return random_biconvex(args.m, args.n, seed)
    perm = random_permutation(args.n, seed)
    return FamilyInstance(perm.graph(), f"perm_{args.n}", permutation=perm)


def cmd_construct(args) -> int:
    inst = build_family(args)
    text = format_edge_list(inst.graph)
    aux = inst.aux_json()
    aux["n"] = inst.graph.vertex_count
    if args.output:
        Path(args.output).write_text(text)
        dump_json(aux, args.output + ".aux.json")
    summary = {
        "label": inst.label,
        "n": inst.graph.vertex_count,
        "m": inst.graph.edge_count,
        "max_degree": inst.graph.max_degree,
        "seed": args.seed,
        "output": args.output,
    }
    if args.json:
        print(json.dumps(dict(summary, aux=aux), indent=2))
    elif args.output:
        print(f"{inst.label}: n={summary['n']} m={summary['m']} -> {args.output}")
    else:
        sys.stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------- color


def _run_color(args) -> tuple[Graph, Coloring, Mode, str, str | None, int | None, dict]:
    """Return graph, coloring, verification mode, label, bound symbol/value, extras."""
    alg = args.algorithm
    if alg in ("gk", "hk"):
        if args.k is None:
            raise _Precondition(f"--k is required for {alg}")
        if alg == "gk":
            inst = build_gk(args.k)
            c = pcf_color_gk(args.k)
            on_a = len({c.colors[v] for v in inst.layout.side_a})
            return inst.graph, c, Mode.PCF, inst.label, "k+2", args.k + 2, {"colors_on_a": on_a}
        inst = build_hk(args.k)
        return inst.graph, odd_color_hk(args.k), Mode.ODD, inst.label, "4", 4, {}
    if alg == "biconvex":
        if not args.input:
            raise _Precondition("--input layout JSON is required")
        layout = BipartiteLayout.from_json(_load_json(args.input))
        c = pcf_color_biconvex(layout)
        extra = {
            "colors_on_a": len({c.colors[v] for v in layout.side_a}),
            "colors_on_b": len({c.colors[v] for v in layout.side_b}),
        }
        return layout.graph, c, Mode.PCF, Path(args.input).name, "6", 6, extra
    if alg == "permutation":
        if not args.input:
            raise _Precondition("--input permutation JSON is required")
        perm = PermutationRep.from_json(_load_json(args.input))
        h = len(antichain_partition(perm))
        c = pcf_color_permutation(perm)
        return perm.graph(), c, Mode.PCF, Path(args.input).name, "3*h(P)", 3 * h, {"height": h}
    g = _load_graph(args)
    label = Path(args.input).name
    if alg in ("clawfree", "quasiline"):
        fn, extra_colors = (pcf_color_claw_free, 6) if alg == "clawfree" else (pcf_color_quasi_line, 4)
        c, trace = fn(g)
        extra = {"steps": len(trace), "strictly_decreasing": trace.is_strictly_decreasing()}
        return g, c, Mode.PCF, label, f"Delta+{extra_colors}", g.max_degree + extra_colors, extra
    if alg == "convexround":
        mode = Mode(args.mode)
        pc = convex_round_product(g, _circular_order(args, g), mode)
        layers = max(pc.base, default=0)
        return g, pc.flattened, mode, label, "9*layers", 9 * layers, {"layers": layers}
    # subdivisions
    sg = full_subdivision(g)
    if alg == "subdivision-pcf4":
        c = pcf4_subdivision(g, _base_coloring(args, g, 3))
        mode = Mode.PCF
    else:
        c = odd4_subdivision(g, _base_coloring(args, g, 4))
        mode = Mode.ODD
    return sg.graph, c, mode, f"S({label})", "4", 4, {"original_n": g.vertex_count}


def cmd_color(args) -> int:
    start = time.perf_counter()
    g, c, mode, label, bound, bound_value, extra = _run_color(args)
    report = verify(g, c, mode)
    run = RunReport(
        command=list(args.argv),
        instance=label,
        algorithm=args.algorithm,
        colors_used=c.colors_used,
        bound=bound,
        bound_value=bound_value,
        verified=report.is_valid,
        seconds=time.perf_counter() - start,
        seed=args.seed,
        extra=dict(extra, mode=mode.value),
    )
    if args.output:
        dump_json(coloring_to_json(c), args.output)
        dump_json(dict(run.to_json(), verification=report.to_json()), args.output + ".report.json")
    _emit(args, dict(run.to_json(), coloring=list(c.colors)), run.to_text())
    return EXIT_OK if run.verified and run.within_bound else EXIT_FAILED


# ---------------------------------------------------------------- verify / oracle / check


def cmd_verify(args) -> int:
    g = _load_graph(args)
    if not args.coloring:
        raise _Precondition("--coloring is required")
    c = coloring_from_json(_load_json(args.coloring))
    report = verify(g, c, Mode(args.mode))
    payload = dict(report.to_json(), valid=report.is_valid)
    text = (
        f"{args.mode}: {'valid' if report.is_valid else 'INVALID'}, proper={report.is_proper}, "
        f"core={sorted(report.core)}, colors_used={report.colors_used}"
    )
    if args.output:
        dump_json(payload, args.output)
    _emit(args, payload, text)
    return EXIT_OK if report.is_valid else EXIT_FAILED


def cmd_oracle(args) -> int:
    g = _load_graph(args)
    mode = SearchMode(args.mode)
    max_t = args.max_colors if args.max_colors is not None else max(g.vertex_count, 1)
    try:
        res = exact_chromatic(g, mode, max_t, args.budget_nodes)
    except Exhausted as exc:
        payload = {
            "mode": mode.value,
            "value": None,
            "status": "exhausted",
            "lower_bound": exc.lower_bound,
            "nodes": exc.nodes_explored,
            "budget": exc.budget,
        }
        _emit(args, payload, f"exhausted after {exc.nodes_explored} nodes; value >= {exc.lower_bound}")
        return EXIT_FAILED
    payload = res.to_json()
    if args.output:
        dump_json(payload, args.output)
    if res.value is None:
        text = f"{mode.value}: no coloring with <= {max_t} colors ({res.nodes_explored} nodes)"
    else:
        text = f"{mode.value}: optimum {res.value} ({res.nodes_explored} nodes)"
    _emit(args, payload, text)
    return EXIT_OK


def cmd_check(args) -> int:
    result: dict = {}
    if args.layout:
        layout = BipartiteLayout.from_json(_load_json(args.layout))
        ok, bad = check_layout(layout)
        result["biconvex"] = {"ok": ok, "vertex": bad}
        g = layout.graph
    else:
        g = _load_graph(args)
    claw = find_claw(g)
    result["n"] = g.vertex_count
    result["max_degree"] = g.max_degree
    result["connected"] = is_connected(g)
    result["claw_free"] = claw is None
    if claw is not None:
        result["claw"] = [claw[0], list(claw[1])]
    result["quasi_line"] = claw is None and is_quasi_line(g)
    if args.circular_order or args.order_file:
        try:
            check_circular_arcs(g, _circular_order(args, g))
            result["convex_round"] = {"ok": True, "vertex": None}
        except ColoringError as exc:
            result["convex_round"] = {"ok": False, "vertex": getattr(exc, "vertex", None), "error": str(exc)}
    text = "\n".join(f"{key}: {value}" for key, value in result.items())
    _emit(args, result, text)
    return EXIT_OK


def cmd_reproduce(args) -> int:
    rows = run_suite(args.suite, args.seed)
    failed = [r for r in rows if not r.passed]
    payload = {"suite": args.suite, "seed": args.seed, "rows": [r.to_json() for r in rows], "failed": len(failed)}
    _emit(args, payload, format_table(rows))
    return EXIT_OK if not failed else EXIT_FAILED


# ---------------------------------------------------------------- parser


def _add_graph_input(p: argparse.ArgumentParser) -> None:
    p.add_argument("--input", help="graph file")
    p.add_argument("--format", choices=("edgelist", "graph6", "json"), default="edgelist")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable JSON on stdout")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--output", help="output path")

    p = argparse.ArgumentParser(prog="pcfcolor", description="Proper conflict-free and proper odd colorings.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("construct", parents=[common], help="build a named or random graph")
    c.add_argument("--family", choices=FAMILIES, required=True)
    c.add_argument("--k", type=int, default=2)
    c.add_argument("--n", type=int, default=4)
    c.add_argument("--m", type=int, default=4)
    c.add_argument("--p", type=float, default=0.3)
    c.set_defaults(func=cmd_construct)

    col = sub.add_parser("color", parents=[common], help="run a coloring algorithm and verify it")
    _add_graph_input(col)
    col.add_argument("--algorithm", choices=ALGORITHMS, required=True)
    col.add_argument("--mode", choices=("pcf", "odd"), default="pcf", help="witness mode for convexround")
    col.add_argument("--k", type=int)
    col.add_argument("--circular-order", help="vertex order, e.g. '0,2,1,3'")
    col.add_argument("--order-file", help="file holding the circular order on one line")
    col.add_argument("--base", help="coloring JSON used as the proper base for subdivision algorithms")
    col.add_argument("--budget-nodes", type=int, help="oracle budget when the base coloring is computed")
    col.set_defaults(func=cmd_color)

    v = sub.add_parser("verify", parents=[common], help="check a coloring")
    _add_graph_input(v)
    v.add_argument("--coloring", help="coloring JSON")
    v.add_argument("--mode", choices=("pcf", "odd"), default="pcf")
    v.set_defaults(func=cmd_verify)

    o = sub.add_parser("oracle", parents=[common], help="exact chromatic numbers by backtracking")
    _add_graph_input(o)
    o.add_argument("--mode", choices=("proper", "odd", "pcf"), default="pcf")
    o.add_argument("--max-colors", type=int)
    o.add_argument("--budget-nodes", type=int)
    o.set_defaults(func=cmd_oracle)

    ch = sub.add_parser("check", parents=[common], help="report structural properties")
    _add_graph_input(ch)
    ch.add_argument("--layout", help="bipartite layout JSON (replaces --input)")
    ch.add_argument("--circular-order")
    ch.add_argument("--order-file")
    ch.set_defaults(func=cmd_check)

    r = sub.add_parser("reproduce", parents=[common], help="run the desk-scale reproduction suites")
    r.add_argument("suite", choices=(*SUITES, "all"))
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    args.argv = argv
    try:
        return args.func(args)
    except (AlgorithmInvariantViolated, SideColorerContractViolated) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED
    except (_Precondition, ColoringError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except (KeyError, TypeError, ValueError) as exc:
        # malformed fields in a JSON input file
        print(f"error: malformed input: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
