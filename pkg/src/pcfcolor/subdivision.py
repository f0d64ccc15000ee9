"""Full subdivisions and their 4-colorings.

``S(G)`` replaces every edge ``uv`` by a path ``u - s_uv - v``.  A proper
3-coloring of ``G`` yields a proper conflict-free 4-coloring of ``S(G)``
through a maximal matching, and a proper 4-coloring of a connected ``G``
yields an odd 4-coloring of ``S(G)`` through spanning-tree leaf peeling
and, when needed, induction over the blocks of ``G``.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import networkx as nx

from .errors import (
    AlgorithmInvariantViolated,
    GraphNotConnected,
    InvalidBaseColoring,
    NotSpanningTree,
)
from .graph import Coloring, Graph, build_graph, is_connected, is_proper

Edge = tuple[int, int]
PALETTE = (1, 2, 3, 4)


def _key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class SubdividedGraph:
    """``S(G)``: original vertices keep their labels, ``s_e`` for the ``i``-th edge is ``n + i``."""

    graph: Graph
    original_count: int
    edge_vertex: dict[Edge, int]

    def coloring(self, vertex_colors, s_colors: dict[Edge, int], palette: int = 4) -> Coloring:
        colors = list(vertex_colors) + [0] * len(self.edge_vertex)
        for e, idx in self.edge_vertex.items():
            colors[idx] = s_colors[e]
        return Coloring(tuple(colors), palette)

    def to_json(self) -> dict:
        return {
            "n": self.graph.vertex_count,
            "original_count": self.original_count,
            "edges": [list(e) for e in self.graph.edges()],
            "edge_vertex": [[u, v, idx] for (u, v), idx in sorted(self.edge_vertex.items())],
        }


def full_subdivision(g: Graph) -> SubdividedGraph:
    n = g.vertex_count
    edge_vertex = {e: n + i for i, e in enumerate(g.edges())}
    pairs = []
    for (u, v), s in edge_vertex.items():
        pairs += [(u, s), (v, s)]
    return SubdividedGraph(build_graph(pairs, n + len(edge_vertex)), n, edge_vertex)


def _check_base(g: Graph, c: Coloring, limit: int) -> list[int]:
    if len(c) != g.vertex_count:
        raise InvalidBaseColoring(f"coloring has {len(c)} entries for {g.vertex_count} vertices")
    if any(col > limit for col in c.colors):
        raise InvalidBaseColoring(f"base coloring uses a color above {limit}")
    if not is_proper(g, c.colors):
        raise InvalidBaseColoring("base coloring is not proper")
    return list(c.colors)


def maximal_matching(g: Graph) -> list[Edge]:
    """Greedy scan of the edges in index order."""
    covered: set[int] = set()
    matching = []
    for u, v in g.edges():
        if u not in covered and v not in covered:
            matching.append((u, v))
            covered |= {u, v}
    return matching


def pcf4_subdivision(g: Graph, c3: Coloring) -> Coloring:
    """Proper conflict-free 4-coloring of ``S(G)`` from a proper 3-coloring of ``G``.

    Matched vertices keep their color and see color 4 exactly once (on
    their matching edge).  Unmatched vertices take color 4 and see their
    own base color exactly once, on the edge to their lowest neighbor.
    """
    c = _check_base(g, c3, 3)
    sg = full_subdivision(g)
    matching = maximal_matching(g)
    covered = {x for e in matching for x in e}
    free = [v for v in g.vertices() if v not in covered]
    assert not any(g.has_edge(x, y) for x in free for y in free if x < y)

    vertex_colors = [c[v] if v in covered else 4 for v in g.vertices()]
    s: dict[Edge, int] = {e: 4 for e in matching}
    for u, v in g.edges():
        if (u, v) not in s and u in covered and v in covered:
            s[(u, v)] = min(col for col in (1, 2, 3) if col not in (c[u], c[v]))
    for x in free:
        for rank, y in enumerate(g.adjacency[x]):
            s[_key(x, y)] = c[x] if rank == 0 else min(
                col for col in (1, 2, 3) if col not in (c[x], c[y])
            )
    return sg.coloring(vertex_colors, s)


def _odd_colors(values) -> set[int]:
    counts: dict[int, int] = {}
    for col in values:
        counts[col] = counts.get(col, 0) + 1
    return {col for col, m in counts.items() if m & 1}


def _extend(
    g: Graph, c: list[int], tree_edges, nontree: dict[Edge, int], root: int
) -> dict[Edge, int]:
    """Leaf-peeling extension: every vertex but ``root`` ends up with an odd witness."""
    tree = {_key(*e) for e in tree_edges}
    all_edges = set(g.edges())
    if not tree <= all_edges:
        raise NotSpanningTree("tree uses an edge that is not in the graph")
    tree_graph = build_graph(tree, g.vertex_count)
    if len(tree) != g.vertex_count - 1 or not is_connected(tree_graph):
        raise NotSpanningTree("tree edges do not form a spanning tree")
    s = {_key(*e): col for e, col in nontree.items()}
    if set(s) != all_edges - tree:
        raise InvalidBaseColoring("non-tree colors must cover exactly the non-tree edges")
    for (u, v), col in s.items():
        if col not in PALETTE or col in (c[u], c[v]):
            raise InvalidBaseColoring(f"illegal color {col} on the subdivision vertex of ({u}, {v})")

    nbrs = {v: set(tree_graph.adjacency[v]) for v in g.vertices()}
    leaves = [v for v in g.vertices() if v != root and len(nbrs[v]) == 1]
    heapq.heapify(leaves)
    while leaves:
        v = heapq.heappop(leaves)
        (u,) = nbrs[v]
        a, b = sorted(col for col in PALETTE if col not in (c[u], c[v]))
        seen = [s[_key(v, x)] for x in g.adjacency[v] if x != u]
        s[_key(u, v)] = a if a not in _odd_colors(seen) else b
        nbrs[v].clear()
        nbrs[u].discard(v)
        if u != root and len(nbrs[u]) == 1:
            heapq.heappush(leaves, u)
    return s


def tree_extension(
    sg: SubdividedGraph, c4: Coloring, tree_edges, nontree_colors: dict[Edge, int], root: int
) -> Coloring:
    """Extend ``c4`` and the non-tree colors to a proper 4-coloring of ``S(G)``.

    Leaves of the tree other than ``root`` are peeled in increasing index
    order; each peeled subdivision vertex takes the smaller admissible
    color unless that color is already odd around the leaf.
    """
    g = _original_graph(sg)
    c = _check_base(g, c4, 4)
    return sg.coloring(c, _extend(g, c, tree_edges, nontree_colors, root))


def _original_graph(sg: SubdividedGraph) -> Graph:
    return build_graph(sg.edge_vertex.keys(), sg.original_count)


def dfs_tree(g: Graph, start: int, skip: int | None = None) -> list[Edge]:
    """Depth-first spanning tree from ``start``, neighbors in increasing order, avoiding ``skip``."""
    seen = {start}
    if skip is not None:
        seen.add(skip)
    edges = []
    stack = [(start, iter(g.adjacency[start]))]
    while stack:
        v, it = stack[-1]
        for x in it:
            if x not in seen:
                seen.add(x)
                edges.append((v, x))
                stack.append((x, iter(g.adjacency[x])))
                break
        else:
            stack.pop()
    return edges


def _smallest_legal(c: list[int], u: int, v: int, extra=()) -> int:
    return min(col for col in PALETTE if col not in (c[u], c[v], *extra))


def _cut_vertices(g: Graph) -> set[int]:
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices())
    nxg.add_edges_from(g.edges())
    return set(nx.articulation_points(nxg))


def _usable_root(g: Graph, c: list[int], cut: set[int]) -> int | None:
    """Lowest non-cut vertex of odd degree or with a non-monochromatic neighborhood."""
    for r in g.vertices():
        nbrs = g.adjacency[r]
        if r in cut or not nbrs:
            continue
        if len(nbrs) % 2 == 1 or len({c[x] for x in nbrs}) > 1:
            return r
    return None


def _rooted(g: Graph, c: list[int], r: int) -> dict[Edge, int]:
    """Spanning tree of ``G - r`` plus ``r`` as a leaf, then leaf peeling.

    An odd-degree root is happy under any coloring.  Otherwise the root
    hangs off ``p = min N(r)``, and ``s_rq`` for the lowest neighbor ``q``
    with ``c(q) != c(p)`` takes ``c(p)``; the other non-tree edges at
    ``r`` avoid ``c(p)`` so that ``c(p)`` stays unique around ``r``.
    """
    p = g.adjacency[r][0]
    tree = dfs_tree(g, p, skip=r) + [(p, r)]
    tree_set = {_key(*e) for e in tree}
    nontree: dict[Edge, int] = {}
    special = len(g.adjacency[r]) % 2 == 0
    q = None
    if special:
        q = next(x for x in g.adjacency[r] if c[x] != c[p])
    for u, v in g.edges():
        if (u, v) in tree_set:
            continue
        if special and r in (u, v):
            x = v if u == r else u
            nontree[(u, v)] = c[p] if x == q else _smallest_legal(c, u, v, (c[p],))
        else:
            nontree[(u, v)] = _smallest_legal(c, u, v)
    s = _extend(g, c, tree, nontree, r)
    if not _odd_colors(s[_key(r, x)] for x in g.adjacency[r]):
        raise AlgorithmInvariantViolated(f"root {r} has no odd witness after extension")
    return s


def _swap_search(g: Graph, c: list[int], cut: set[int]) -> tuple[list[int], int] | None:
    """Recolor a single vertex to create a usable root, if that is possible."""
    for v in g.vertices():
        around = {c[x] for x in g.adjacency[v]}
        for col in PALETTE:
            if col == c[v] or col in around:
                continue
            trial = list(c)
            trial[v] = col
            r = _usable_root(g, trial, cut)
            if r is not None:
                return trial, r
    return None


def _exhaustive_root(g: Graph, cut: set[int], node_cap: int = 200_000) -> tuple[list[int], int] | None:
    """Search proper 4-colorings for one that has a usable root."""
    order = list(g.vertices())
    c = [0] * g.vertex_count
    nodes = 0

    def rec(i: int):
        nonlocal nodes
        if i == len(order):
            r = _usable_root(g, c, cut)
            return (list(c), r) if r is not None else None
        v = order[i]
        for col in PALETTE:
            nodes += 1
            if nodes > node_cap:
                return None
            if all(c[x] != col for x in g.adjacency[v]):
                c[v] = col
                found = rec(i + 1)
                if found:
                    return found
                c[v] = 0
        return None

    return rec(0)


def _leaf_block(g: Graph, cut: set[int]) -> tuple[set[int], int]:
    nxg = nx.Graph()
    nxg.add_nodes_from(g.vertices())
    nxg.add_edges_from(g.edges())
    candidates = []
    for block in nx.biconnected_components(nxg):
        inner = block & cut
        if len(inner) == 1:
            candidates.append((sorted(block), next(iter(inner))))
    block, r = min(candidates)
    return set(block), r


def _odd4(g: Graph, c: list[int]) -> tuple[list[int], dict[Edge, int]]:
    if g.edge_count == 0:
        return list(c), {}
    cut = _cut_vertices(g)
    r = _usable_root(g, c, cut)
    if r is not None:
        return c, _rooted(g, c, r)
    swapped = _swap_search(g, c, cut)
    if swapped is not None:
        c2, r = swapped
        return c2, _rooted(g, c2, r)
    if cut:
        return _peel_leaf_block(g, c, cut)
    found = _exhaustive_root(g, cut)
    if found is None:
        raise AlgorithmInvariantViolated("no proper 4-coloring with a usable root was found")
    c2, r = found
    return c2, _rooted(g, c2, r)


def _peel_leaf_block(g: Graph, c: list[int], cut: set[int]) -> tuple[list[int], dict[Edge, int]]:
    """Color ``S(G - (B - r))`` recursively, then attach the leaf block ``B`` at ``r``."""
    block, r = _leaf_block(g, cut)
    rest = (set(g.vertices()) - block) | {r}
    h, old_h = g.induced(rest)
    ch, sh = _odd4(h, [c[v] for v in old_h])
    r_h = old_h.index(r)
    # rename colors of S(H) so that r keeps its base color
    swap = {ch[r_h]: c[r], c[r]: ch[r_h]}
    ch = [swap.get(col, col) for col in ch]
    sh = {e: swap.get(col, col) for e, col in sh.items()}

    vertex_colors = list(c)
    s: dict[Edge, int] = {}
    for i, v in enumerate(old_h):
        vertex_colors[v] = ch[i]
    for (i, j), col in sh.items():
        s[_key(old_h[i], old_h[j])] = col

    b = min(_odd_colors(sh[_key(r_h, x)] for x in h.adjacency[r_h]))
    for u in block:
        if u != r and g.has_edge(u, r):
            vertex_colors[u] = b
    bg, old_b = g.induced(block)
    cb = [vertex_colors[v] for v in old_b]
    if not is_proper(bg, cb):
        raise AlgorithmInvariantViolated(f"recolored leaf block at {r} is not proper")
    r_b = old_b.index(r)
    tree = dfs_tree(bg, r_b)
    tree_set = {_key(*e) for e in tree}
    nontree = {e: _smallest_legal(cb, *e) for e in bg.edges() if e not in tree_set}
    for (i, j), col in _extend(bg, cb, tree, nontree, r_b).items():
        s[_key(old_b[i], old_b[j])] = col
    return vertex_colors, s


def odd4_subdivision(g: Graph, c4: Coloring) -> Coloring:
    """Odd 4-coloring of ``S(G)`` for a connected ``G`` with a proper 4-coloring ``c4``.

    The original vertices may be recolored along the way (single-vertex
    swaps, and the neighbors of a cut vertex inside a peeled block), but
    they always keep a proper 4-coloring of ``G``.
    """
    c = _check_base(g, c4, 4)
    if not is_connected(g):
        raise GraphNotConnected("odd4_subdivision needs a connected graph; color components separately")
    sg = full_subdivision(g)
    vertex_colors, s = _odd4(g, c)
    return sg.coloring(vertex_colors, s)
