"""Graph families with their side structures, and seeded random generators.

Random generators draw from numpy's PCG64 bit generator (``numpy.random.
Generator(numpy.random.PCG64(seed))``), a 64-bit generator whose stream is
identical across platforms for a given seed and numpy release line.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .biconvex import BipartiteLayout, NestedFamily, check_layout, nested_three_coloring
from .errors import GenerationFailed, InvalidParameter
from .graph import Coloring, Graph, build_graph, cycle_graph
from .recolor import find_claw
from .reduction import PermutationRep


@dataclass(frozen=True)
class FamilyInstance:
    graph: Graph
    label: str
    layout: BipartiteLayout | None = None
    circular_order: tuple[int, ...] | None = None
    permutation: PermutationRep | None = None
    nested: NestedFamily | None = None
    params: dict = field(default_factory=dict, compare=False)

    def aux_json(self) -> dict:
        out: dict = {"label": self.label}
        if self.layout is not None:
            out["layout"] = self.layout.to_json()
        if self.circular_order is not None:
            out["circular_order"] = list(self.circular_order)
        if self.permutation is not None:
            out["permutation"] = self.permutation.to_json()
        if self.nested is not None:
            out["nested"] = self.nested.to_json()
        return out


def _rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def _interval_graph(size_a: int, intervals: list[tuple[int, int]]) -> Graph:
    """A-side ``0..size_a-1``; B-vertex ``size_a + j`` is joined to interval ``j`` (inclusive)."""
    edges = [
        (x, size_a + j) for j, (lo, hi) in enumerate(intervals) for x in range(lo, hi + 1)
    ]
    return build_graph(edges, size_a + len(intervals))


def _interval_instance(size_a: int, intervals, label: str, **params) -> FamilyInstance:
    intervals = sorted(intervals, key=lambda iv: (iv[0], iv[1] - iv[0]))
    g = _interval_graph(size_a, intervals)
    layout = BipartiteLayout.from_orders(
        g, range(size_a), range(size_a, size_a + len(intervals))
    )
    return FamilyInstance(g, label, layout=layout, params=dict(params, intervals=intervals))


def build_gk(k: int) -> FamilyInstance:
    """Every non-empty interval of ``A = [0, 2^k)`` is the neighborhood of one B-vertex."""
    if k < 1:
        raise InvalidParameter(f"k must be at least 1, got {k}")
    size = 2**k
    intervals = [(lo, hi) for lo in range(size) for hi in range(lo, size)]
    inst = _interval_instance(size, intervals, f"G_{k}", k=k)
    assert inst.graph.vertex_count == 2 ** (k + 1) + comb(size, 2)
    return inst


def _gk_colors(k: int) -> tuple[list[int], dict[tuple[int, int], int]]:
    """Colors of ``A`` and of each interval for the recursive ``k+2`` coloring.

    Invariants: ``A`` uses colors ``1..k+1``, B uses ``1..k+2``, and the
    color of the first A-vertex occurs nowhere else in ``A``.
    """
    if k == 1:
        return [1, 2], {(0, 0): 2, (0, 1): 3, (1, 1): 1}
    half = 2 ** (k - 1)
    a1, b1 = _gk_colors(k - 1)
    a2, b2 = _gk_colors(k - 1)
    # relabel the right half: its first vertex takes k+1 and the left
    # half's unique first color disappears from the right half
    x, y = a2[0], a1[0]
    perm = {x: k + 1}
    others = sorted(set(a2) - {x})
    targets = [col for col in range(1, k + 1) if col != y]
    perm.update(zip(others, targets))
    spare = [col for col in range(1, k + 2) if col not in perm.values()]
    perm.update(zip([col for col in range(1, k + 2) if col not in perm], spare))
    colors_a = a1 + [perm[col] for col in a2]
    colors_b = dict(b1)
    colors_b.update({(lo + half, hi + half): perm[col] for (lo, hi), col in b2.items()})
    for lo in range(half):
        for hi in range(half, 2 * half):
            colors_b[(lo, hi)] = k + 2
    return colors_a, colors_b


def pcf_color_gk(k: int) -> Coloring:
    """Proper conflict-free coloring of ``G_k`` with ``k+2`` colors, ``k+1`` of them on ``A``."""
    inst = build_gk(k)
    colors_a, colors_b = _gk_colors(k)
    size = 2**k
    colors = colors_a + [colors_b[iv] for iv in inst.params["intervals"]]
    assert len(colors) == inst.graph.vertex_count and size == len(colors_a)
    return Coloring(tuple(colors), k + 2)


def dyadic_intervals(k: int) -> list[tuple[int, int]]:
    return [
        (j * 2**i, (j + 1) * 2**i - 1) for i in range(1, k + 1) for j in range(2 ** (k - i))
    ]


def build_hk(k: int) -> FamilyInstance:
    """Dyadic intervals of lengths ``2, 4, ..., 2^k`` over ``A = [0, 2^k)``."""
    if k < 1:
        raise InvalidParameter(f"k must be at least 1, got {k}")
    inst = _interval_instance(2**k, dyadic_intervals(k), f"H_{k}", k=k)
    members = [tuple(range(lo, hi + 1)) for lo, hi in inst.params["intervals"]]
    return FamilyInstance(
        inst.graph,
        inst.label,
        layout=inst.layout,
        nested=NestedFamily.of(2**k, members),
        params=inst.params,
    )


def odd_color_hk(k: int) -> Coloring:
    """Odd 4-coloring of ``H_k``: nested 3-coloring on ``A``, B mostly color 4."""
    inst = build_hk(k)
    size = 2**k
    colors = list(nested_three_coloring(inst.nested).colors)
    for lo, hi in inst.params["intervals"]:
        if hi - lo == 1:
            used = {colors[lo], colors[hi]}
            colors.append(min(col for col in (1, 2, 3, 4) if col not in used))
        else:
            colors.append(4)
    assert len(colors) == inst.graph.vertex_count and size <= len(colors)
    return Coloring(tuple(colors), 4)


def build_cpn(n: int) -> FamilyInstance:
    """``K_{2n}`` minus the matching ``{2i, 2i+1}``, with circular order and permutation model."""
    if n < 2:
        raise InvalidParameter(f"n must be at least 2, got {n}")
    size = 2 * n
    g = build_graph(
        ((u, v) for u in range(size) for v in range(u + 1, size) if u // 2 != v // 2), size
    )
    # element 2i+1 precedes 2i on the second line, so each matched pair is incomparable
    pos2 = [v ^ 1 for v in range(size)]
    return FamilyInstance(
        g,
        f"CP_{n}",
        circular_order=tuple(range(size)),
        permutation=PermutationRep.of(list(range(size)), pos2),
        params={"n": n},
    )


def cycle_instance(n: int) -> FamilyInstance:
    """``C_n`` with a convex-round circular order when one exists (odd ``n`` or ``n = 4``)."""
    g = cycle_graph(n)
    if n == 4:
        order = (0, 2, 1, 3)
    elif n % 2 == 1:
        order = tuple((2 * i) % n for i in range(n))
    else:
        order = None
    return FamilyInstance(g, f"C_{n}", circular_order=order, params={"n": n})


def line_graph(g: Graph) -> Graph:
    """Vertices are the edges of ``g`` in :meth:`Graph.edges` order."""
    edges = list(g.edges())
    incident: list[list[int]] = [[] for _ in g.vertices()]
    for idx, (u, v) in enumerate(edges):
        incident[u].append(idx)
        incident[v].append(idx)
    pairs = [(a, b) for bucket in incident for i, a in enumerate(bucket) for b in bucket[i + 1:]]
    return build_graph(pairs, len(edges))


def complete_bipartite(m: int, n: int) -> FamilyInstance:
    if m < 0 or n < 0:
        raise InvalidParameter("part sizes must be non-negative")
    g = build_graph(((a, m + b) for a in range(m) for b in range(n)), m + n)
    layout = BipartiteLayout.from_orders(g, range(m), range(m, m + n))
    return FamilyInstance(
        g, f"K_{m},{n}", layout=layout, circular_order=tuple(range(m + n)), params={"m": m, "n": n}
    )


def permutation_instance(pos1, pos2) -> FamilyInstance:
    perm = PermutationRep.of(pos1, pos2)
    return FamilyInstance(perm.graph(), f"perm_{perm.n}", permutation=perm)


def random_permutation(n: int, seed: int) -> PermutationRep:
    rng = _rng(seed)
    return PermutationRep.of(list(range(n)), [int(x) for x in rng.permutation(n)])


def random_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p): each pair ``u < v`` in lexicographic order is kept when a uniform draw is below ``p``."""
    if n < 0 or not 0.0 <= p <= 1.0:
        raise InvalidParameter("need n >= 0 and p in [0, 1]")
    rng = _rng(seed)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    draws = rng.random(len(pairs))
    return build_graph((e for e, x in zip(pairs, draws) if x < p), n)


def random_claw_free(n: int, p: float, seed: int, max_tries: int = 1000) -> Graph:
    """Rejection sampling of G(n, p) until a claw-free graph appears."""
    rng = _rng(seed)
    for _ in range(max_tries):
        g = random_graph(n, p, int(rng.integers(2**63)))
        if find_claw(g) is None:
            return g
    raise GenerationFailed(f"no claw-free G({n}, {p}) in {max_tries} tries")


def random_biconvex(n_a: int, n_b: int, seed: int, max_tries: int = 1000) -> FamilyInstance:
    """Random non-empty interval per B-vertex, kept once some B order makes it biconvex.

    Candidate B orders sort the intervals by (left, right), (right, left),
    (left, -right) and (right, -left).  Sampling restarts, up to
    ``max_tries`` times, when none of them passes :func:`check_layout`.
    """
    if n_a < 1 or n_b < 0:
        raise InvalidParameter("need n_a >= 1 and n_b >= 0")
    rng = _rng(seed)
    keys = (
        lambda iv: (iv[0], iv[1]),
        lambda iv: (iv[1], iv[0]),
        lambda iv: (iv[0], -iv[1]),
        lambda iv: (iv[1], -iv[0]),
    )
    for _ in range(max_tries):
        ends = rng.integers(0, n_a, size=(n_b, 2))
        intervals = [(int(min(a, b)), int(max(a, b))) for a, b in ends]
        g = _interval_graph(n_a, intervals)
        for key in keys:
            order_b = [n_a + j for j in sorted(range(n_b), key=lambda j: (key(intervals[j]), j))]
            layout = BipartiteLayout.from_orders(g, range(n_a), order_b)
            if check_layout(layout)[0]:
                return FamilyInstance(
                    g,
                    f"biconvex_{n_a}_{n_b}_{seed}",
                    layout=layout,
                    params={"intervals": intervals, "seed": seed},
                )
    raise GenerationFailed(f"no biconvex sample with n_a={n_a}, n_b={n_b} in {max_tries} tries")
