"""Product colorings built from bipartite layer pairs.

A proper coloring is first refined so that every vertex of layer ``i > 1``
has a neighbor in layer ``i - 1``.  A one-sided colorer then colors each
layer so that the next layer up sees a witness, and a second pass covers
the first layer.  The final color of a vertex is the triple
``(layer, h1, h2)``, flattened to an integer.

Two pipelines sit on top: permutation graphs (antichain layers, at most
``3 h(P)`` colors) and convex-round graphs (at most ``9`` colors per layer).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Protocol

from .biconvex import BipartiteLayout, check_layout, one_sided_witness_coloring
from .errors import (
    ImproperBase,
    InvalidOrder,
    InvalidParameter,
    LayoutDerivationFailed,
    NotConvexRound,
    SideColorerContractViolated,
)
from .graph import Coloring, Graph, Mode, build_graph, greedy_proper_coloring, is_proper


@dataclass(frozen=True)
class LayerPartition:
    """Ordered layers ``V_1, ..., V_k``; ``kind`` is ``"chromatic"`` or ``"antichain"``."""

    layers: tuple[tuple[int, ...], ...]
    kind: str

    def __len__(self) -> int:
        return len(self.layers)

    def layer_of(self) -> dict[int, int]:
        """Map each vertex to its 1-based layer index."""
        return {v: i + 1 for i, layer in enumerate(self.layers) for v in layer}


@dataclass(frozen=True)
class PermutationRep:
    """Element ``v`` sits at ``pos1[v]`` on one line and ``pos2[v]`` on the other.

    ``u < v`` in the poset iff both positions of ``u`` are smaller; the graph
    joins comparable pairs.
    """

    n: int
    pos1: tuple[int, ...]
    pos2: tuple[int, ...]

    def __post_init__(self) -> None:
        for name, pos in (("pos1", self.pos1), ("pos2", self.pos2)):
            if len(pos) != self.n or sorted(pos) != list(range(self.n)):
                raise InvalidParameter(f"{name} is not a permutation of [0, {self.n})")

    @classmethod
    def of(cls, pos1, pos2) -> PermutationRep:
        return cls(len(pos1), tuple(pos1), tuple(pos2))

    def less(self, u: int, v: int) -> bool:
        return self.pos1[u] < self.pos1[v] and self.pos2[u] < self.pos2[v]

    def graph(self) -> Graph:
        p1, p2 = self.pos1, self.pos2
        edges = [
            (u, v)
            for u in range(self.n)
            for v in range(u + 1, self.n)
            if (p1[u] - p1[v]) * (p2[u] - p2[v]) > 0
        ]
        return build_graph(edges, self.n)

    def to_json(self) -> dict:
        return {"n": self.n, "pos1": list(self.pos1), "pos2": list(self.pos2)}

    @classmethod
    def from_json(cls, data: dict) -> PermutationRep:
        return cls(int(data["n"]), tuple(data["pos1"]), tuple(data["pos2"]))


@dataclass(frozen=True)
class ProductColoring:
    base: tuple[int, ...]
    h1: tuple[int, ...]
    h2: tuple[int, ...]
    flattened: Coloring


class SideColorer(Protocol):
    """Colors ``a_side`` with ``1..max_colors`` so every non-isolated ``b_side`` vertex is happy."""

    max_colors: int

    def __call__(self, g: Graph, a_side, b_side) -> dict[int, int]: ...


def layered_refinement(g: Graph, base: Coloring) -> LayerPartition:
    """Greedy recoloring along increasing base color; layers are the new classes."""
    if len(base) != g.vertex_count or not is_proper(g, base.colors):
        raise ImproperBase("base coloring is not a proper coloring of the graph")
    order = sorted(g.vertices(), key=lambda v: (base.colors[v], v))
    refined = greedy_proper_coloring(g, order)
    k = max(refined.colors, default=0)
    layers = tuple(
        tuple(v for v in g.vertices() if refined.colors[v] == i) for i in range(1, k + 1)
    )
    return LayerPartition(layers, "chromatic")


def _check_layers(g: Graph, layers: LayerPartition) -> dict[int, int]:
    layer_of = layers.layer_of()
    if sorted(layer_of) != list(g.vertices()) or sum(map(len, layers.layers)) != g.vertex_count:
        raise InvalidParameter("layers must partition the vertex set")
    for u, v in g.edges():
        if layer_of[u] == layer_of[v]:
            raise InvalidParameter(f"layer {layer_of[u]} is not independent: edge ({u}, {v})")
    for v, i in layer_of.items():
        if i > 1 and not any(layer_of[x] == i - 1 for x in g.adjacency[v]):
            raise InvalidParameter(f"vertex {v} of layer {i} has no neighbor in layer {i - 1}")
    return layer_of


def _side_is_served(g: Graph, colors: dict[int, int], a_side, b_side, mode: Mode) -> int | None:
    """Return a ``b_side`` vertex left without a witness, or ``None``."""
    a_set = set(a_side)
    for w in b_side:
        seen = [colors[x] for x in g.adjacency[w] if x in a_set]
        if not seen:
            continue
        counts: dict[int, int] = {}
        for col in seen:
            counts[col] = counts.get(col, 0) + 1
        if mode is Mode.PCF:
            ok = any(m == 1 for m in counts.values())
        else:
            ok = any(m & 1 for m in counts.values())
        if not ok:
            return w
    return None


def _run_side_colorer(g: Graph, colorer: SideColorer, a_side, b_side, mode: Mode) -> dict[int, int]:
    colors = colorer(g, a_side, b_side)
    involved = sorted(set(a_side) | set(b_side))
    if set(colors) != set(a_side):
        raise SideColorerContractViolated("side colorer did not color exactly the A side", involved)
    bad = [v for v, col in colors.items() if not 1 <= col <= colorer.max_colors]
    if bad:
        raise SideColorerContractViolated(
            f"vertex {bad[0]} colored outside [1, {colorer.max_colors}]", involved
        )
    w = _side_is_served(g, colors, a_side, b_side, mode)
    if w is not None:
        raise SideColorerContractViolated(f"vertex {w} got no {mode.value} witness", involved)
    return colors


def compose_product_coloring(
    g: Graph, layers: LayerPartition, side_colorer: SideColorer, mode: Mode
) -> ProductColoring:
    layer_of = _check_layers(g, layers)
    n = g.vertex_count
    h1 = [1] * n
    h2 = [1] * n
    parts = layers.layers

    for i in range(1, len(parts)):
        for v, col in _run_side_colorer(g, side_colorer, parts[i - 1], parts[i], mode).items():
            h1[v] = col

    groups: dict[int, list[int]] = {}
    for v in parts[0] if parts else ():
        higher = [layer_of[x] for x in g.adjacency[v]]
        if higher:
            groups.setdefault(min(higher), []).append(v)
    for i in sorted(groups):
        b_side = groups[i]
        a_side = sorted({x for v in b_side for x in g.adjacency[v] if layer_of[x] == i})
        for v, col in _run_side_colorer(g, side_colorer, a_side, b_side, mode).items():
            h2[v] = col

    base = tuple(layer_of[v] for v in g.vertices())
    triples = [(base[v], h1[v], h2[v]) for v in g.vertices()]
    rank = {t: r + 1 for r, t in enumerate(sorted(set(triples)))}
    flat = tuple(rank[t] for t in triples)
    return ProductColoring(base, tuple(h1), tuple(h2), Coloring.of(flat))


def antichain_partition(perm: PermutationRep) -> LayerPartition:
    """Peel off the maxima repeatedly; the last layer holds the original maxima."""
    remaining = set(range(perm.n))
    peeled: list[tuple[int, ...]] = []
    while remaining:
        maxima = tuple(
            sorted(v for v in remaining if not any(perm.less(v, u) for u in remaining))
        )
        peeled.append(maxima)
        remaining -= set(maxima)
    return LayerPartition(tuple(reversed(peeled)), "antichain")


def _pos1_layout(
    g: Graph, perm: PermutationRep, a_side, b_side
) -> tuple[BipartiteLayout, list[int]]:
    sub = set(a_side) | set(b_side)
    h, old = g.induced(sub)
    new_of = {v: i for i, v in enumerate(old)}
    order_a = [new_of[v] for v in sorted(a_side, key=lambda v: perm.pos1[v])]
    order_b = [new_of[v] for v in sorted(b_side, key=lambda v: perm.pos1[v])]
    layout = BipartiteLayout.from_orders(h, order_a, order_b)
    ok, _ = check_layout(layout)
    if not ok:
        raise LayoutDerivationFailed("pos1 orders do not make the layer pair biconvex", sorted(sub))
    return layout, old


def pcf_color_permutation(perm: PermutationRep) -> Coloring:
    """Proper conflict-free coloring of a permutation graph with at most ``3 h(P)`` colors.

    Layer ``A_i`` (``i >= 2``) takes colors ``3i-2..3i`` and serves layer
    ``A_{i-1}``.  A maximal element whose lowest neighboring layer is ``A_j``
    is served by ``A_j`` as well, so every non-isolated vertex of the top
    layer is covered even when it has no neighbor in ``A_1``.
    """
    g = perm.graph()
    layers = antichain_partition(perm).layers
    h = len(layers)
    layer_of = {v: i + 1 for i, layer in enumerate(layers) for v in layer}
    colors = [1] * perm.n
    if h <= 1:
        return Coloring(tuple(colors), 1)

    top_served_by: dict[int, list[int]] = {}
    for y in layers[-1]:
        below = [layer_of[x] for x in g.adjacency[y]]
        if below:
            top_served_by.setdefault(min(below), []).append(y)

    for i in range(1, h + 1):
        a_side = layers[i - 1]
        b_side = list(layers[i - 2]) if i >= 2 else []
        b_side += top_served_by.get(i, [])
        layout, old = _pos1_layout(g, perm, a_side, b_side)
        for v, col in one_sided_witness_coloring(layout).items():
            colors[old[v]] = 3 * (i - 1) + col
    return Coloring(tuple(colors), 3 * h)


def _is_arc(positions: set[int], n: int) -> bool:
    if len(positions) in (0, n):
        return True
    starts = sum(1 for p in positions if (p - 1) % n not in positions)
    return starts == 1


def check_circular_arcs(g: Graph, circular_order) -> None:
    """Raise :class:`NotConvexRound` at the first vertex whose neighborhood is not an arc."""
    order = list(circular_order)
    if len(order) != g.vertex_count or sorted(order) != list(g.vertices()):
        raise InvalidOrder("circular order must list every vertex exactly once")
    pos = {v: i for i, v in enumerate(order)}
    for v in g.vertices():
        if not _is_arc({pos[x] for x in g.adjacency[v]}, g.vertex_count):
            raise NotConvexRound(v)


def _rotations(seq):
    for k in range(max(len(seq), 1)):
        yield seq[k:] + seq[:k]


class OrderedBiconvexColorer:
    """Side colorer that derives a biconvex layout from a fixed vertex order.

    Each side is ordered as in ``order``.  With ``circular=True`` every
    rotation of each side is tried until the neighborhoods of the other
    side are intervals; the two sides are searched independently.
    """

    max_colors = 3

    def __init__(self, order, circular: bool = False):
        self.rank = {v: i for i, v in enumerate(order)}
        self.circular = circular

    def __call__(self, g: Graph, a_side, b_side) -> dict[int, int]:
        sub = sorted(set(a_side) | set(b_side))
        h, old = g.induced(sub)
        new_of = {v: i for i, v in enumerate(old)}
        seq_a = [new_of[v] for v in sorted(a_side, key=self.rank.__getitem__)]
        seq_b = [new_of[v] for v in sorted(b_side, key=self.rank.__getitem__)]
        order_a = self._pick(h, seq_a, seq_b, sub)
        order_b = self._pick(h, seq_b, order_a, sub)
        layout = BipartiteLayout.from_orders(h, order_a, order_b)
        ok, _ = check_layout(layout)
        if not ok:
            raise LayoutDerivationFailed("no biconvex layout for this layer pair", sub)
        return {old[v]: col for v, col in one_sided_witness_coloring(layout).items()}

    def _pick(self, h: Graph, seq, other, sub) -> list[int]:
        """First rotation of ``seq`` in which every vertex of ``other`` sees an interval."""
        candidates = _rotations(seq) if self.circular else [seq]
        for cand in candidates:
            pos = {v: i for i, v in enumerate(cand)}
            if all(_contiguous([pos[x] for x in h.adjacency[w]]) for w in other):
                return cand
        raise LayoutDerivationFailed("no cut of the circular order gives intervals", sub)


def _contiguous(spots: list[int]) -> bool:
    return not spots or max(spots) - min(spots) + 1 == len(spots)


def pcf_color_convex_round(g: Graph, circular_order) -> Coloring:
    """Proper conflict-free coloring of a convex-round graph, at most 9 colors per layer."""
    return convex_round_product(g, circular_order).flattened


def convex_round_product(g: Graph, circular_order, mode: Mode = Mode.PCF) -> ProductColoring:
    check_circular_arcs(g, circular_order)
    base = greedy_proper_coloring(g, list(g.vertices()))
    layers = layered_refinement(g, base)
    colorer = OrderedBiconvexColorer(circular_order, circular=True)
    return compose_product_coloring(g, layers, colorer, mode)
