"""Graphs, colorings, witness sets and verification.

Vertices are dense 0-based integers; colors are positive integers.  A
*witness* of a vertex is a color that appears exactly once (``Mode.PCF``)
or an odd number of times (``Mode.ODD``) among its neighbors.  The *core*
of a coloring is the set of non-isolated vertices without a witness.
"""

from __future__ import annotations

import enum
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field

from .errors import InvalidColor, InvalidEdge, InvalidOrder, InvalidVertex, SelfLoop


class Mode(enum.Enum):
    PCF = "pcf"
    ODD = "odd"


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph stored as sorted adjacency tuples.

    Build instances with :func:`build_graph`, which validates and
    normalizes its input; the constructor itself trusts the caller.
    """

    vertex_count: int
    adjacency: tuple[tuple[int, ...], ...]
    _sets: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "_sets", tuple(frozenset(a) for a in self.adjacency))

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def neighbor_set(self, v: int) -> frozenset[int]:
        return self._sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._sets[u]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    @property
    def edge_count(self) -> int:
        return sum(len(a) for a in self.adjacency) // 2

    def vertices(self) -> range:
        return range(self.vertex_count)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u, nbrs in enumerate(self.adjacency):
            for v in nbrs:
                if u < v:
                    yield (u, v)

    def induced(self, vertices: Iterable[int]) -> tuple[Graph, list[int]]:
        """Induced subgraph on ``vertices`` relabeled to ``0..k-1`` in ascending order.

        Returns the subgraph and the list mapping new labels to old ones.
        """
        old = sorted(set(vertices))
        new_of = {v: i for i, v in enumerate(old)}
        adj = tuple(
            tuple(new_of[x] for x in self.adjacency[v] if x in new_of) for v in old
        )
        return Graph(len(old), adj), old


def build_graph(edge_list: Iterable[tuple[int, int]], n: int) -> Graph:
    """Validate an edge list and return the normalized graph on ``n`` vertices.

    Duplicate edges (in either orientation) are dropped silently.
    """
    if n < 0:
        raise InvalidEdge(f"vertex count must be non-negative, got {n}")
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in edge_list:
        if not (0 <= u < n and 0 <= v < n):
            raise InvalidEdge(f"edge ({u}, {v}) has an endpoint outside [0, {n})")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        adj[u].add(v)
        adj[v].add(u)
    return Graph(n, tuple(tuple(sorted(a)) for a in adj))


@dataclass(frozen=True)
class Coloring:
    colors: tuple[int, ...]
    palette_size: int

    def __post_init__(self) -> None:
        if self.palette_size < 1:
            raise InvalidColor(f"palette size must be positive, got {self.palette_size}")
        for v, col in enumerate(self.colors):
            if not 1 <= col <= self.palette_size:
                raise InvalidColor(
                    f"vertex {v} has color {col} outside [1, {self.palette_size}]"
                )

    @classmethod
    def of(cls, colors: Sequence[int], palette_size: int | None = None) -> Coloring:
        """Wrap a color sequence; the palette defaults to the largest color used."""
        colors = tuple(colors)
        top = max(colors, default=1)
        return cls(colors, max(top, palette_size or 1))

    def __len__(self) -> int:
        return len(self.colors)

    def __getitem__(self, v: int) -> int:
        return self.colors[v]

    @property
    def colors_used(self) -> int:
        return len(set(self.colors))


def _check_vertex(g: Graph, v: int) -> None:
    if not 0 <= v < g.vertex_count:
        raise InvalidVertex(f"vertex {v} outside [0, {g.vertex_count})")


def witness_set(
    neighbors: Iterable[int], colors: Sequence[int], mode: Mode
) -> frozenset[int]:
    """Witness colors over a raw neighbor list; used by hot loops."""
    counts: dict[int, int] = {}
    for x in neighbors:
        col = colors[x]
        counts[col] = counts.get(col, 0) + 1
    if mode is Mode.PCF:
        return frozenset(col for col, m in counts.items() if m == 1)
    return frozenset(col for col, m in counts.items() if m & 1)


def witnesses(g: Graph, c: Coloring, v: int, mode: Mode) -> frozenset[int]:
    _check_vertex(g, v)
    return witness_set(g.adjacency[v], c.colors, mode)


def core_of(g: Graph, colors: Sequence[int], mode: Mode = Mode.ODD) -> frozenset[int]:
    """Unhappy non-isolated vertices of a raw color sequence."""
    return frozenset(
        v
        for v in range(g.vertex_count)
        if g.adjacency[v] and not witness_set(g.adjacency[v], colors, mode)
    )


def is_proper(g: Graph, colors: Sequence[int]) -> bool:
    return all(colors[u] != colors[v] for u, v in g.edges())


@dataclass(frozen=True)
class VerificationReport:
    mode: Mode
    is_proper: bool
    witness_sets: tuple[frozenset[int], ...]
    core: frozenset[int]
    colors_used: int

    @property
    def is_valid(self) -> bool:
        return self.is_proper and not self.core

    def to_json(self) -> dict:
        return {
            "proper": self.is_proper,
            "mode": self.mode.value,
            "core": sorted(self.core),
            "witnesses": {str(v): sorted(w) for v, w in enumerate(self.witness_sets)},
            "colors_used": self.colors_used,
        }


def verify(g: Graph, c: Coloring, mode: Mode) -> VerificationReport:
    if len(c) != g.vertex_count:
        raise InvalidColor(
            f"coloring has {len(c)} entries for a graph on {g.vertex_count} vertices"
        )
    colors = c.colors
    wsets = tuple(witness_set(g.adjacency[v], colors, mode) for v in range(g.vertex_count))
    core = frozenset(v for v, w in enumerate(wsets) if not w and g.adjacency[v])
    return VerificationReport(
        mode=mode,
        is_proper=is_proper(g, colors),
        witness_sets=wsets,
        core=core,
        colors_used=c.colors_used,
    )


def recolor_one(c: Coloring, u: int, i: int) -> Coloring:
    if not 1 <= i <= c.palette_size:
        raise InvalidColor(f"color {i} outside palette [1, {c.palette_size}]")
    if not 0 <= u < len(c):
        raise InvalidVertex(f"vertex {u} outside [0, {len(c)})")
    if c.colors[u] == i:
        return c
    colors = list(c.colors)
    colors[u] = i
    return Coloring(tuple(colors), c.palette_size)


def greedy_proper_coloring(
    g: Graph, order: Sequence[int], palette_size: int | None = None
) -> Coloring:
    """First-fit coloring along ``order``.

    ``palette_size`` only widens the declared palette; it never restricts
    the colors first-fit is allowed to use.
    """
    n = g.vertex_count
    if len(order) != n or sorted(order) != list(range(n)):
        raise InvalidOrder("order must be a permutation of all vertices")
    colors = [0] * n
    for v in order:
        taken = {colors[x] for x in g.adjacency[v]}
        col = 1
        while col in taken:
            col += 1
        colors[v] = col
    return Coloring.of(colors, palette_size)


def degree_sequence(g: Graph) -> list[int]:
    return [len(a) for a in g.adjacency]


def is_connected(g: Graph) -> bool:
    if g.vertex_count == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for x in g.adjacency[v]:
            if x not in seen:
                seen.add(x)
                stack.append(x)
    return len(seen) == g.vertex_count


def complete_graph(n: int) -> Graph:
    return build_graph(((u, v) for u in range(n) for v in range(u + 1, n)), n)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InvalidEdge("a cycle needs at least three vertices")
    return build_graph(((v, (v + 1) % n) for v in range(n)), n)


def path_graph(n: int) -> Graph:
    return build_graph(((v, v + 1) for v in range(n - 1)), n)


def star_graph(leaves: int) -> Graph:
    return build_graph(((0, v) for v in range(1, leaves + 1)), leaves + 1)
