"""Desk-scale reproduction suites and the instance corpora they run on.

Each suite returns :class:`Row` objects, one per checked statement (or per
aggregated corpus), with the measured value next to the bound it must
respect.  The corpora are deterministic functions of a seed.
"""

from __future__ import annotations

import gzip
import time
from dataclasses import asdict, dataclass
from importlib import resources
from pathlib import Path

from .biconvex import BipartiteLayout, pcf_color_biconvex
from .constructions import (
    FamilyInstance,
    build_cpn,
    build_gk,
    build_hk,
    complete_bipartite,
    cycle_instance,
    line_graph,
    odd_color_hk,
    pcf_color_gk,
    random_biconvex,
    random_claw_free,
    random_graph,
    random_permutation,
)
from .graph import Graph, Mode, verify
from .io import parse_graph6
from .oracle import SearchMode, WitnessKind, exact_chromatic, one_sided_feasible
from .recolor import is_quasi_line, pcf_color_claw_free, pcf_color_quasi_line
from .reduction import (
    PermutationRep,
    antichain_partition,
    convex_round_product,
    pcf_color_permutation,
)
from .subdivision import full_subdivision, odd4_subdivision, pcf4_subdivision

SUITES = (
    "clawfree",
    "quasiline",
    "biconvex",
    "permutation",
    "convexround",
    "subdivision",
    "gk",
    "hk",
    "cpn",
)

DEFAULT_SEED = 20240601


@dataclass
class Row:
    suite: str
    instance: str
    measured: str
    expected: str
    passed: bool
    seconds: float = 0.0

    def to_json(self) -> dict:
        return asdict(self)


# ---------------------------------------------------------------- corpora


def claw_free_corpus(seed: int = DEFAULT_SEED) -> list[tuple[str, Graph]]:
    """Line graphs of G(n, p) with n <= 20, CP_n for n <= 6, and rejection-sampled claw-free graphs."""
    out: list[tuple[str, Graph]] = []
    for i in range(160):
        n = 4 + i % 17
        p = (0.15, 0.25, 0.35, 0.5)[i % 4] if n <= 12 else (0.1, 0.15, 0.2)[i % 3]
        base = random_graph(n, p, seed + i)
        lg = line_graph(base)
        if lg.vertex_count:
            out.append((f"L(G({n},{p}),{seed + i})", lg))
    for n in range(2, 7):
        out.append((f"CP_{n}", build_cpn(n).graph))
    for i in range(60):
        n = 5 + i % 6
        p = 0.75 if i % 2 == 0 else 0.2
        out.append((f"clawfree({n},{p},{seed + i})", random_claw_free(n, p, seed + 1000 + i)))
    return out


def biconvex_corpus(seed: int = DEFAULT_SEED, count: int = 500) -> list[FamilyInstance]:
    out = [
        random_biconvex(1 + i % 10, 1 + (i * 7) % 10, seed + i) for i in range(count)
    ]
    out += [complete_bipartite(m, n) for m in range(1, 9) for n in range(1, 9)]
    return out


def permutation_corpus(seed: int = DEFAULT_SEED, count: int = 200) -> list[tuple[str, PermutationRep]]:
    out = [
        (f"perm({1 + i % 40},{seed + i})", random_permutation(1 + i % 40, seed + i))
        for i in range(count)
    ]
    out += [(f"CP_{n}", build_cpn(n).permutation) for n in range(2, 7)]
    return out


def convex_round_corpus() -> list[FamilyInstance]:
    out = [build_cpn(n) for n in range(2, 7)]
    out += [cycle_instance(n) for n in (3, 4, 5, 7, 9, 11, 13, 15)]
    out += [complete_bipartite(m, n) for m in range(1, 7) for n in range(1, 7)]
    return out


def connected_graphs_upto8() -> list[Graph]:
    """Every connected graph on 1..8 vertices up to isomorphism (12113 graphs)."""
    path = _data_path()
    with gzip.open(path, "rt") as fh:
        return [parse_graph6(line) for line in fh if line.strip()]


def _data_path() -> Path:
    path = Path(str(resources.files("pcfcolor"))) / "data" / "connected_upto8.g6.gz"
    if not path.exists():
        raise FileNotFoundError("connected graph corpus not found; run scripts/gen_connected_corpus.py")
    return path


# ---------------------------------------------------------------- suites


def _timed(fn):
    start = time.perf_counter()
    rows = fn()
    elapsed = time.perf_counter() - start
    for row in rows:
        row.seconds = row.seconds or elapsed / max(len(rows), 1)
    return rows


def _recolor_rows(suite: str, algorithm, extra: int, only_quasi: bool, seed: int) -> list[Row]:
    total = ok = 0
    worst = 0
    for _, g in claw_free_corpus(seed):
        if only_quasi and not is_quasi_line(g):
            continue
        total += 1
        c, trace = algorithm(g)
        report = verify(g, c, Mode.PCF)
        good = (
            report.is_valid
            and c.colors_used <= g.max_degree + extra
            and trace.is_strictly_decreasing()
            and len(trace) <= g.vertex_count
        )
        ok += good
        worst = max(worst, c.colors_used - g.max_degree)
    bound = f"Delta+{extra}"
    return [
        Row(suite, f"{total} instances", f"{ok} verified", f"{total} verified", ok == total),
        Row(suite, "max colors_used - Delta", str(worst), f"<= {extra} ({bound})", worst <= extra),
    ]


def suite_clawfree(seed: int = DEFAULT_SEED) -> list[Row]:
    return _recolor_rows("clawfree", pcf_color_claw_free, 6, False, seed)


def suite_quasiline(seed: int = DEFAULT_SEED) -> list[Row]:
    return _recolor_rows("quasiline", pcf_color_quasi_line, 4, True, seed)


def suite_biconvex(seed: int = DEFAULT_SEED) -> list[Row]:
    corpus = biconvex_corpus(seed)
    ok = 0
    for inst in corpus:
        c = pcf_color_biconvex(inst.layout)
        side_a = {c.colors[v] for v in inst.layout.side_a}
        side_b = {c.colors[v] for v in inst.layout.side_b}
        ok += verify(inst.graph, c, Mode.PCF).is_valid and len(side_a) <= 3 and len(side_b) <= 3
    return [Row("biconvex", f"{len(corpus)} layouts", f"{ok} verified", "all, <= 3 colors per side", ok == len(corpus))]


def suite_permutation(seed: int = DEFAULT_SEED) -> list[Row]:
    corpus = permutation_corpus(seed)
    ok = 0
    for _, perm in corpus:
        c = pcf_color_permutation(perm)
        h = len(antichain_partition(perm))
        ok += verify(perm.graph(), c, Mode.PCF).is_valid and c.colors_used <= 3 * h
    return [Row("permutation", f"{len(corpus)} permutations", f"{ok} verified", "all, <= 3 h(P)", ok == len(corpus))]


def suite_convexround(seed: int = DEFAULT_SEED) -> list[Row]:
    rows = []
    for inst in convex_round_corpus():
        pc = convex_round_product(inst.graph, inst.circular_order)
        layers = max(pc.base, default=0)
        used = pc.flattened.colors_used
        good = verify(inst.graph, pc.flattened, Mode.PCF).is_valid and used <= 9 * layers
        rows.append(Row("convexround", inst.label, f"{used} colors", f"<= 9*{layers}", good))
    return rows


def suite_subdivision(seed: int = DEFAULT_SEED) -> list[Row]:
    rows = []
    for m in (2, 4):
        g = complete_bipartite(m, m).graph
        sg = full_subdivision(g)
        res = exact_chromatic(sg.graph, SearchMode.ODD, 5)
        rows.append(Row("subdivision", f"chi_o(S(K_{m},{m}))", str(res.value), "4", res.value == 4))
    pcf_ok = pcf_total = odd_ok = odd_total = 0
    for g in connected_graphs_upto8():
        chi = exact_chromatic(g, SearchMode.PROPER, g.vertex_count)
        sg = full_subdivision(g)
        if chi.value <= 3:
            pcf_total += 1
            c = pcf4_subdivision(g, chi.certificate)
            pcf_ok += verify(sg.graph, c, Mode.PCF).is_valid and max(c.colors) <= 4
        if chi.value <= 4:
            odd_total += 1
            c = odd4_subdivision(g, chi.certificate)
            odd_ok += verify(sg.graph, c, Mode.ODD).is_valid and max(c.colors) <= 4
    rows.append(Row("subdivision", f"pcf4 on {pcf_total} graphs (chi<=3)", f"{pcf_ok} verified", "all", pcf_ok == pcf_total))
    rows.append(Row("subdivision", f"odd4 on {odd_total} graphs (chi<=4)", f"{odd_ok} verified", "all", odd_ok == odd_total))
    return rows


def suite_gk(seed: int = DEFAULT_SEED) -> list[Row]:
    from math import comb

    rows = []
    for k in (1, 2, 3):
        inst = build_gk(k)
        size = 2 ** (k + 1) + comb(2**k, 2)
        rows.append(Row("gk", f"|V(G_{k})|", str(inst.graph.vertex_count), str(size), inst.graph.vertex_count == size))
        c = pcf_color_gk(k)
        on_a = len({c.colors[v] for v in inst.layout.side_a})
        good = verify(inst.graph, c, Mode.PCF).is_valid and c.colors_used <= k + 2 and on_a <= k + 1
        rows.append(Row("gk", f"pcf_color_gk({k})", f"{c.colors_used} colors, {on_a} on A", f"<= {k + 2}, <= {k + 1} on A", good))
        low = one_sided_feasible(inst.layout, k, WitnessKind.ODD).feasible
        high = one_sided_feasible(inst.layout, k + 1, WitnessKind.ODD).feasible
        rows.append(Row("gk", f"one-sided odd, G_{k}", f"t={k}: {low}, t={k + 1}: {high}", "False, True", (low, high) == (False, True)))
    return rows


def suite_hk(seed: int = DEFAULT_SEED) -> list[Row]:
    rows = []
    for k in (1, 2, 3):
        inst = build_hk(k)
        size = 2 ** (k + 1) - 1
        rows.append(Row("hk", f"|V(H_{k})|", str(inst.graph.vertex_count), str(size), inst.graph.vertex_count == size))
        c = odd_color_hk(k)
        good = verify(inst.graph, c, Mode.ODD).is_valid and c.colors_used <= 4
        rows.append(Row("hk", f"odd_color_hk({k})", f"{c.colors_used} colors", "<= 4", good))
        low = one_sided_feasible(inst.layout, k, WitnessKind.UNIQUE).feasible
        high = one_sided_feasible(inst.layout, k + 1, WitnessKind.UNIQUE).feasible
        rows.append(Row("hk", f"one-sided unique, H_{k}", f"t={k}: {low}, t={k + 1}: {high}", "False, True", (low, high) == (False, True)))
    return rows


def suite_cpn(seed: int = DEFAULT_SEED, budget: int = 5_000_000) -> list[Row]:
    rows = []
    for n in (2, 3, 4):
        g = build_cpn(n).graph
        chi = exact_chromatic(g, SearchMode.PROPER, 2 * n, budget)
        odd = exact_chromatic(g, SearchMode.ODD, 2 * n, budget)
        rows.append(Row("cpn", f"chi(CP_{n})", str(chi.value), str(n), chi.value == n))
        rows.append(Row("cpn", f"chi_o(CP_{n})", str(odd.value), f">= {n + 2}", odd.value is not None and odd.value >= n + 2))
    return rows


SUITE_FUNCS = {
    "clawfree": suite_clawfree,
    "quasiline": suite_quasiline,
    "biconvex": suite_biconvex,
    "permutation": suite_permutation,
    "convexround": suite_convexround,
    "subdivision": suite_subdivision,
    "gk": suite_gk,
    "hk": suite_hk,
    "cpn": suite_cpn,
}


def run_suite(name: str, seed: int = DEFAULT_SEED) -> list[Row]:
    names = SUITES if name == "all" else (name,)
    rows: list[Row] = []
    for suite in names:
        rows += _timed(lambda suite=suite: SUITE_FUNCS[suite](seed))
    return rows


def format_table(rows: list[Row]) -> str:
    header = ("suite", "instance", "measured", "expected", "result")
    body = [(r.suite, r.instance, r.measured, r.expected, "PASS" if r.passed else "FAIL") for r in rows]
    widths = [max(len(str(x)) for x in col) for col in zip(header, *body)]
    lines = ["  ".join(str(x).ljust(w) for x, w in zip(line, widths)) for line in (header, *body)]
    return "\n".join(lines)
