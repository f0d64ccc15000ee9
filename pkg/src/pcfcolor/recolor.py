"""Core-shrinking recoloring for claw-free and quasi-line graphs.

Both algorithms start from a proper coloring inside a fixed palette
(``Delta + 6`` for claw-free graphs, ``Delta + 4`` for quasi-line graphs)
and repeatedly recolor one or two vertices so that the set of unhappy
vertices strictly shrinks.  Witnesses are computed in odd mode; on
claw-free graphs odd and conflict-free witnesses coincide.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations

from .errors import AlgorithmInvariantViolated, InvalidColor, NotClawFree, NotQuasiLineAt
from .graph import (
    Coloring,
    Graph,
    Mode,
    core_of,
    greedy_proper_coloring,
    is_proper,
    recolor_one,
    witness_set,
)


def find_claw(g: Graph) -> tuple[int, tuple[int, int, int]] | None:
    """Return ``(center, leaves)`` of an induced claw, or ``None`` if claw-free."""
    for v in g.vertices():
        nbrs = g.adjacency[v]
        if len(nbrs) < 3:
            continue
        for a, b in combinations(nbrs, 2):
            if g.has_edge(a, b):
                continue
            for x in nbrs:
                if x > b and not g.has_edge(a, x) and not g.has_edge(b, x):
                    return v, (a, b, x)
    return None


def is_claw_free(g: Graph) -> bool:
    return find_claw(g) is None


@dataclass(frozen=True)
class CliquePartition:
    side1: frozenset[int]
    side2: frozenset[int]


def clique_partition(g: Graph, v: int) -> CliquePartition:
    """Split ``N(v)`` into two cliques by 2-coloring the complement of ``G[N(v)]``."""
    nbrs = g.adjacency[v]
    side: dict[int, int] = {}
    for start in nbrs:
        if start in side:
            continue
        side[start] = 0
        stack = [start]
        while stack:
            x = stack.pop()
            for y in nbrs:
                if y == x or g.has_edge(x, y):
                    continue
                if y not in side:
                    side[y] = 1 - side[x]
                    stack.append(y)
                elif side[y] == side[x]:
                    raise NotQuasiLineAt(v)
    return CliquePartition(
        frozenset(x for x in nbrs if side[x] == 0),
        frozenset(x for x in nbrs if side[x] == 1),
    )


def is_quasi_line(g: Graph) -> bool:
    try:
        for v in g.vertices():
            clique_partition(g, v)
    except NotQuasiLineAt:
        return False
    return True


def is_critical(g: Graph, c: Coloring, w: int) -> bool:
    wset = witness_set(g.adjacency[w], c.colors, Mode.ODD)
    if len(wset) != 2:
        return False
    a, b = wset
    colors = c.colors
    firsts = [x for x in g.adjacency[w] if colors[x] == a]
    seconds = [x for x in g.adjacency[w] if colors[x] == b]
    return any(not g.has_edge(x, y) for x in firsts for y in seconds)


def safe_colors(g: Graph, c: Coloring, u: int) -> frozenset[int]:
    colors = c.colors
    closed = {colors[u]} | {colors[x] for x in g.adjacency[u]}
    candidates = [i for i in range(1, c.palette_size + 1) if i not in closed]
    if not candidates:
        return frozenset()
    blocked = set()
    cu = colors[u]
    for w in g.adjacency[u]:
        wset = witness_set(g.adjacency[w], colors, Mode.ODD)
        if len(wset) == 2 and cu in wset:
            blocked |= wset - {cu}
    return frozenset(i for i in candidates if i not in blocked)


@dataclass(frozen=True)
class RecolorStep:
    unhappy_vertex: int
    changes: tuple[tuple[int, int, int], ...]
    core_before: int
    core_after: int

    def to_json(self) -> dict:
        return {
            "v": self.unhappy_vertex,
            "changes": [list(ch) for ch in self.changes],
            "core_before": self.core_before,
            "core_after": self.core_after,
        }


@dataclass
class RecolorTrace:
    initial_core: int = 0
    steps: list[RecolorStep] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.steps)

    def is_strictly_decreasing(self) -> bool:
        sizes = [self.initial_core] + [s.core_after for s in self.steps]
        return all(b < a for a, b in zip(sizes, sizes[1:])) and all(
            s.core_after < s.core_before for s in self.steps
        )

    def to_jsonl(self) -> str:
        return "".join(json.dumps(s.to_json()) + "\n" for s in self.steps)


def _initial_coloring(g: Graph, palette: int, initial: Coloring | None) -> Coloring:
    if initial is None:
        base = greedy_proper_coloring(g, list(g.vertices()))
        return Coloring(base.colors, palette)
    if len(initial) != g.vertex_count or max(initial.colors, default=1) > palette:
        raise InvalidColor(f"initial coloring must be total and use colors in [1, {palette}]")
    if not is_proper(g, initial.colors):
        raise InvalidColor("initial coloring is not proper")
    return Coloring(initial.colors, palette)


def _smallest_missing(g: Graph, c: Coloring, u: int) -> int:
    closed = {c.colors[u]} | {c.colors[x] for x in g.adjacency[u]}
    for i in range(1, c.palette_size + 1):
        if i not in closed:
            return i
    raise AlgorithmInvariantViolated(f"no color outside c(N[{u}]) in the palette")


def _shrink_core(
    g: Graph, palette: int, hard_branch, initial: Coloring | None
) -> tuple[Coloring, RecolorTrace]:
    c = _initial_coloring(g, palette, initial)
    core = core_of(g, c.colors)
    trace = RecolorTrace(initial_core=len(core))
    while core:
        v = min(core)
        step = None
        for u in g.adjacency[v]:
            safe = safe_colors(g, c, u)
            if safe:
                i = min(safe)
                step = ((u, c.colors[u], i),)
                c = recolor_one(c, u, i)
                break
        if step is None:
            c, step = hard_branch(c, v)
        new_core = core_of(g, c.colors)
        if not new_core < core:
            raise AlgorithmInvariantViolated(
                f"core did not shrink at unhappy vertex {v}: {len(core)} -> {len(new_core)}"
            )
        trace.steps.append(RecolorStep(v, step, len(core), len(new_core)))
        core = new_core
    return c, trace


def pcf_color_claw_free(
    g: Graph, initial: Coloring | None = None
) -> tuple[Coloring, RecolorTrace]:
    """Proper conflict-free coloring of a claw-free graph with ``Delta + 6`` colors.

    ``initial`` may supply any proper starting coloring inside the palette;
    by default first-fit along the identity order is used.
    """
    claw = find_claw(g)
    if claw is not None:
        raise NotClawFree(claw)

    def hard_branch(c: Coloring, v: int):
        u = g.adjacency[v][0]
        i = _smallest_missing(g, c, u)
        c1 = recolor_one(c, u, i)
        for w in g.adjacency[u]:
            if w == v or not is_critical(g, c1, w):
                continue
            safe = safe_colors(g, c1, w)
            if safe:
                ell = min(safe)
                changes = ((u, c.colors[u], i), (w, c1.colors[w], ell))
                return recolor_one(c1, w, ell), changes
        raise AlgorithmInvariantViolated(
            f"no critical neighbor with a safe color next to {u} (unhappy vertex {v})"
        )

    return _shrink_core(g, g.max_degree + 6, hard_branch, initial)


def pcf_color_quasi_line(
    g: Graph, initial: Coloring | None = None
) -> tuple[Coloring, RecolorTrace]:
    """Proper conflict-free coloring of a quasi-line graph with ``Delta + 4`` colors."""
    partitions = [clique_partition(g, v) for v in g.vertices()]

    def hard_branch(c: Coloring, v: int):
        u = g.adjacency[v][0]
        i = _smallest_missing(g, c, u)
        c1 = recolor_one(c, u, i)
        part = partitions[u]
        far = part.side2 if v in part.side1 else part.side1
        for w in sorted(far):
            if not is_critical(g, c1, w):
                continue
            safe = safe_colors(g, c1, w)
            if safe:
                ell = min(safe)
                changes = ((u, c.colors[u], i), (w, c1.colors[w], ell))
                return recolor_one(c1, w, ell), changes
        raise AlgorithmInvariantViolated(
            f"no critical vertex with a safe color in the clique of N({u}) avoiding {v}"
        )

    return _shrink_core(g, g.max_degree + 4, hard_branch, initial)
