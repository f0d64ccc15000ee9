"""Exact backtracking solvers for small graphs.

``exact_chromatic`` finds the least number of colors admitting a proper,
odd, or proper conflict-free coloring.  ``one_sided_feasible`` decides
whether one side of a bipartite graph can be colored with ``t`` colors so
that every non-isolated vertex of the other side sees a unique (or an
odd) color.

Both searches use the same rules: a vertex may take at most one more than
the largest color used so far (color-permutation symmetry); a branch dies
as soon as some vertex has its whole neighborhood colored without a
witness; and every assignment tried counts as one node against an
optional node budget.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .biconvex import BipartiteLayout
from .errors import Exhausted, InvalidParameter
from .graph import Coloring, Graph


class SearchMode(enum.Enum):
    PROPER = "proper"
    ODD = "odd"
    PCF = "pcf"


class WitnessKind(enum.Enum):
    UNIQUE = "unique"
    ODD = "odd"


@dataclass(frozen=True)
class OracleResult:
    """``value`` is the optimum, or ``None`` when every ``t <= max_t`` was ruled out.

    ``infeasible_up_to`` is the largest palette size proven insufficient.
    """

    mode: SearchMode
    value: int | None
    certificate: Coloring | None
    nodes_explored: int
    budget: int | None
    infeasible_up_to: int

    def to_json(self) -> dict:
        return {
            "mode": self.mode.value,
            "value": self.value,
            "certificate": None if self.certificate is None else list(self.certificate.colors),
            "nodes": self.nodes_explored,
            "budget": self.budget,
            "status": "optimal" if self.value is not None else "infeasible",
            "infeasible_up_to": self.infeasible_up_to,
        }


@dataclass(frozen=True)
class OneSidedResult:
    feasible: bool
    certificate: dict[int, int] | None
    nodes_explored: int


class _OutOfBudget(Exception):
    pass


def degeneracy_order(g: Graph) -> list[int]:
    """Vertices in coloring order: reverse of repeated min-degree removal.

    Ties at removal go to the lowest degree in ``g`` and then the lowest
    index, so after reversal high-degree vertices come first among equals.
    """
    deg = [len(a) for a in g.adjacency]
    alive = set(g.vertices())
    removed: list[int] = []
    while alive:
        v = min(alive, key=lambda x: (deg[x], len(g.adjacency[x]), -x))
        removed.append(v)
        alive.remove(v)
        for x in g.adjacency[v]:
            if x in alive:
                deg[x] -= 1
    removed.reverse()
    return removed


def _happy(nbr_colors, unique: bool) -> bool:
    counts: dict[int, int] = {}
    for col in nbr_colors:
        counts[col] = counts.get(col, 0) + 1
    if unique:
        return any(m == 1 for m in counts.values())
    return any(m & 1 for m in counts.values())


class _Counter:
    def __init__(self, budget: int | None):
        self.nodes = 0
        self.budget = budget

    def tick(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise _OutOfBudget


def _search(
    g: Graph,
    order: list[int],
    t: int,
    proper: bool,
    watched,
    unique: bool,
    counter: _Counter,
) -> list[int] | None:
    """Color the vertices of ``order`` with ``1..t``.

    ``watched`` marks the vertices whose witness is required.  A watched
    vertex is checked the moment its last neighbor in ``order`` is colored.
    """
    adj = g.adjacency
    colors = [0] * g.vertex_count
    in_order = set(order)
    pending = [sum(1 for x in adj[v] if x in in_order) for v in g.vertices()]

    def rec(idx: int, top: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        taken = {colors[x] for x in adj[v]} if proper else ()
        for col in range(1, min(top + 1, t) + 1):
            if col in taken:
                continue
            counter.tick()
            colors[v] = col
            ok = True
            for w in adj[v]:
                pending[w] -= 1
            for w in adj[v]:
                if pending[w] == 0 and watched[w] and not _happy(
                    [colors[x] for x in adj[w]], unique
                ):
                    ok = False
                    break
            if ok and rec(idx + 1, max(top, col)):
                return True
            for w in adj[v]:
                pending[w] += 1
            colors[v] = 0
        return False

    return colors if rec(0, 0) else None


def exact_chromatic(
    g: Graph, mode: SearchMode, max_t: int, budget: int | None = None
) -> OracleResult:
    """Least ``t <= max_t`` with a valid ``mode``-coloring, tried in increasing order."""
    if max_t < 1:
        raise InvalidParameter(f"max_t must be at least 1, got {max_t}")
    counter = _Counter(budget)
    if g.vertex_count == 0:
        return OracleResult(mode, 0, Coloring((), 1), 0, budget, 0)
    order = degeneracy_order(g)
    watched = [mode is not SearchMode.PROPER and bool(a) for a in g.adjacency]
    unique = mode is SearchMode.PCF
    for t in range(1, max_t + 1):
        try:
            found = _search(g, order, t, True, watched, unique, counter)
        except _OutOfBudget:
            raise Exhausted(t, counter.nodes, budget) from None
        if found is not None:
            return OracleResult(mode, t, Coloring(tuple(found), t), counter.nodes, budget, t - 1)
    return OracleResult(mode, None, None, counter.nodes, budget, max_t)


def one_sided_feasible(
    source: Graph | BipartiteLayout,
    t: int,
    kind: WitnessKind,
    a_side=None,
    b_side=None,
    budget: int | None = None,
) -> OneSidedResult:
    """Can ``A`` be colored with ``t`` colors so every non-isolated ``B`` vertex has a witness?

    Pass a :class:`BipartiteLayout`, or a graph plus explicit ``a_side`` and
    ``b_side``.  With a layout, ``A`` is colored along ``order_a`` so that
    interval neighborhoods complete (and get checked) early.  Colors on
    ``A`` need not be proper; only ``B``'s neighborhoods inside ``A`` count.
    """
    if t < 1:
        raise InvalidParameter(f"t must be at least 1, got {t}")
    if isinstance(source, BipartiteLayout):
        g = source.graph
        order = list(source.order_a)
        b_set = set(source.order_b)
    else:
        if a_side is None or b_side is None:
            raise InvalidParameter("a_side and b_side are required with a bare graph")
        g = source
        order = sorted(a_side)
        b_set = set(b_side)
    a_set = set(order)
    for w in b_set:
        if any(x not in a_set for x in g.adjacency[w]):
            raise InvalidParameter(f"vertex {w} of B has a neighbor outside A")
    watched = [v in b_set and bool(g.adjacency[v]) for v in g.vertices()]
    counter = _Counter(budget)
    try:
        found = _search(g, order, t, False, watched, kind is WitnessKind.UNIQUE, counter)
    except _OutOfBudget:
        raise Exhausted(t, counter.nodes, budget) from None
    if found is None:
        return OneSidedResult(False, None, counter.nodes)
    return OneSidedResult(True, {v: found[v] for v in order}, counter.nodes)
