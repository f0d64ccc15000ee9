"""Interval-structured bipartite colorings.

A :class:`BipartiteLayout` fixes a bipartition ``(A, B)`` together with a
linear order of each side.  When every neighborhood is an interval of the
opposite order the graph is biconvex, and side ``A`` can be 3-colored so
that every non-isolated vertex of ``B`` sees some color exactly once.
Running that routine on both sides with disjoint palettes gives a proper
conflict-free 6-coloring.

The module also colors the ground set of a nested set family with three
colors so that each member holds some color an odd number of times.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations

from .errors import AlgorithmInvariantViolated, InvalidLayout, InvalidParameter, NotNested
from .graph import Coloring, Graph, build_graph

Interval = tuple[int, int]


@dataclass(frozen=True)
class BipartiteLayout:
    """Bipartition ``(side_a, side_b)`` with a linear order of each side."""

    graph: Graph
    side_a: frozenset[int]
    side_b: frozenset[int]
    order_a: tuple[int, ...]
    order_b: tuple[int, ...]

    @classmethod
    def from_orders(cls, graph: Graph, order_a, order_b) -> BipartiteLayout:
        order_a, order_b = tuple(order_a), tuple(order_b)
        return cls(graph, frozenset(order_a), frozenset(order_b), order_a, order_b)

    def swapped(self) -> BipartiteLayout:
        return BipartiteLayout(self.graph, self.side_b, self.side_a, self.order_b, self.order_a)

    def interval_of(self, w: int) -> Interval | None:
        """Positions ``(lo, hi)`` of ``N(w)`` in ``order_a``; ``None`` if ``w`` is isolated.

        Only meaningful once :func:`check_layout` has accepted the layout.
        """
        pos = _positions(self.order_a)
        spots = [pos[x] for x in self.graph.adjacency[w]]
        if not spots:
            return None
        return min(spots), max(spots)

    def to_json(self) -> dict:
        return {
            "n": self.graph.vertex_count,
            "side_a": sorted(self.side_a),
            "side_b": sorted(self.side_b),
            "order_a": list(self.order_a),
            "order_b": list(self.order_b),
            "edges": [list(e) for e in self.graph.edges()],
        }

    @classmethod
    def from_json(cls, data: dict) -> BipartiteLayout:
        g = build_graph([tuple(e) for e in data["edges"]], int(data["n"]))
        layout = cls(
            g,
            frozenset(data.get("side_a", data["order_a"])),
            frozenset(data.get("side_b", data["order_b"])),
            tuple(data["order_a"]),
            tuple(data["order_b"]),
        )
        return layout


def layout_from_json_text(text: str) -> BipartiteLayout:
    return BipartiteLayout.from_json(json.loads(text))


def _positions(order) -> dict[int, int]:
    return {v: i for i, v in enumerate(order)}


def _is_contiguous(spots: list[int]) -> bool:
    return not spots or max(spots) - min(spots) + 1 == len(spots)


def _check_structure(layout: BipartiteLayout) -> tuple[bool, int | None]:
    g = layout.graph
    if layout.side_a & layout.side_b:
        return False, min(layout.side_a & layout.side_b)
    everything = layout.side_a | layout.side_b
    if everything != frozenset(g.vertices()):
        missing = set(g.vertices()) - everything
        return False, min(missing) if missing else max(everything)
    for order, side in ((layout.order_a, layout.side_a), (layout.order_b, layout.side_b)):
        if len(order) != len(side) or frozenset(order) != side:
            return False, min(side ^ frozenset(order), default=None)
    for u, v in g.edges():
        if (u in layout.side_a) == (v in layout.side_a):
            return False, u
    return True, None


def check_convex(layout: BipartiteLayout) -> tuple[bool, int | None]:
    """Interval property for ``side_b`` neighborhoods in ``order_a`` only."""
    ok, bad = _check_structure(layout)
    if not ok:
        return ok, bad
    pos = _positions(layout.order_a)
    for w in layout.order_b:
        if not _is_contiguous([pos[x] for x in layout.graph.adjacency[w]]):
            return False, w
    return True, None


def check_layout(layout: BipartiteLayout) -> tuple[bool, int | None]:
    """Full biconvexity check; returns ``(ok, first violating vertex or None)``."""
    ok, bad = check_convex(layout)
    if not ok:
        return ok, bad
    pos = _positions(layout.order_b)
    for v in layout.order_a:
        if not _is_contiguous([pos[x] for x in layout.graph.adjacency[v]]):
            return False, v
    return True, None


def minimal_restricted_intervals(intervals, target: Interval) -> list[Interval]:
    """Inclusion-minimal members of ``{J & target : J meets target}``, sorted by left end."""
    lo, hi = target
    cut = {
        (max(lo, a), min(hi, b))
        for a, b in intervals
        if max(lo, a) <= min(hi, b)
    }
    minimal = [
        (a, b)
        for a, b in cut
        if not any((c, d) != (a, b) and a <= c and d <= b for c, d in cut)
    ]
    return sorted(minimal)


def _disjoint_cover(intervals: list[Interval], length: int) -> list[Interval]:
    """Greedy inclusion-maximal family of pairwise disjoint intervals."""
    longest_from: dict[int, int] = {}
    for a, b in intervals:
        if b > longest_from.get(a, -1):
            longest_from[a] = b
    chosen: list[Interval] = []
    covered_until = -1
    for p in range(length):
        if p > covered_until and p in longest_from:
            chosen.append((p, longest_from[p]))
            covered_until = longest_from[p]
    return chosen


def one_sided_witness_coloring(layout: BipartiteLayout) -> dict[int, int]:
    """Color ``side_a`` with ``{1, 2, 3}`` so each non-isolated ``B`` vertex has a unique color.

    Returns a map from every vertex of ``side_a`` to its color.
    """
    ok, bad = check_layout(layout)
    if not ok:
        raise InvalidLayout(f"layout is not biconvex at vertex {bad}", bad)
    g = layout.graph
    raw = [layout.interval_of(w) for w in layout.order_b]
    intervals = sorted({iv for iv in raw if iv is not None})
    chosen = _disjoint_cover(intervals, len(layout.order_a))

    picked: set[int] = set()
    for target in chosen:
        minimal = minimal_restricted_intervals(intervals, target)
        if len(minimal) > 2:
            raise InvalidLayout(
                f"interval {target} has {len(minimal)} minimal restricted intervals",
                layout.order_a[target[0]],
            )
        # one representative per minimal interval: the outer ends of the outer ones
        picked.add(minimal[0][0])
        if len(minimal) == 2:
            picked.add(minimal[1][1])

    colors = {v: 3 for v in layout.order_a}
    for rank, p in enumerate(sorted(picked)):
        colors[layout.order_a[p]] = 1 + rank % 2

    for w in layout.order_b:
        seen = [colors[x] for x in g.adjacency[w]]
        if seen and not any(seen.count(col) == 1 for col in set(seen)):
            raise AlgorithmInvariantViolated(f"vertex {w} of side B has no unique color")
    return colors


def pcf_color_biconvex(layout: BipartiteLayout) -> Coloring:
    """Proper conflict-free 6-coloring: ``A`` from ``{1,2,3}``, ``B`` from ``{4,5,6}``."""
    colors_a = one_sided_witness_coloring(layout)
    colors_b = one_sided_witness_coloring(layout.swapped())
    colors = [0] * layout.graph.vertex_count
    for v, col in colors_a.items():
        colors[v] = col
    for v, col in colors_b.items():
        colors[v] = col + 3
    return Coloring(tuple(colors), 6)


@dataclass(frozen=True)
class NestedFamily:
    ground_size: int
    members: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, ground_size: int, members) -> NestedFamily:
        return cls(ground_size, tuple(tuple(sorted(set(m))) for m in members))

    def to_json(self) -> dict:
        return {"ground": self.ground_size, "members": [list(m) for m in self.members]}

    @classmethod
    def from_json(cls, data: dict) -> NestedFamily:
        return cls.of(int(data["ground"]), data["members"])


def check_nested(family: NestedFamily) -> None:
    sets = [frozenset(m) for m in family.members]
    for idx, m in enumerate(family.members):
        if not m:
            raise InvalidParameter(f"member {idx} is empty")
        if m[0] < 0 or m[-1] >= family.ground_size:
            raise InvalidParameter(f"member {idx} leaves the ground set [0, {family.ground_size})")
    for i in range(len(sets)):
        for j in range(i + 1, len(sets)):
            s, t = sets[i], sets[j]
            if s & t and not (s <= t or t <= s):
                raise NotNested((i, j))


@dataclass(frozen=True)
class NestedColoring:
    """Ground coloring plus the ``(odd color, even color)`` pair designated per member."""

    coloring: Coloring
    designations: tuple[tuple[int, int], ...]


def _parity(elements, colors: list[int]) -> tuple[int, int, int]:
    counts = [0, 0, 0]
    for x in elements:
        counts[colors[x] - 1] += 1
    return counts[0] & 1, counts[1] & 1, counts[2] & 1


def _designate(parity) -> tuple[int, int]:
    odd = next(k + 1 for k in range(3) if parity[k])
    even = next(k + 1 for k in range(3) if not parity[k])
    return odd, even


def nested_three_coloring_with_designations(family: NestedFamily) -> NestedColoring:
    """Bottom-up coloring over the inclusion forest of a nested family.

    Each member's children are its maximal proper sub-members.  Children
    are recolored by permutations of ``{1, 2, 3}`` that send their odd
    color to 1 and their even color to 2; elements of a member outside
    every child get color 3.  If that leaves the member with no odd or no
    even color, the permutation of the last child is replaced by the first
    one (lexicographically) that repairs the parity vector.  A minimal
    member gets 1 on its smallest element and 3 elsewhere.
    """
    check_nested(family)
    distinct = sorted({frozenset(m) for m in family.members}, key=lambda s: (len(s), sorted(s)))
    children: list[list[int]] = [[] for _ in distinct]
    for i, s in enumerate(distinct):
        parent = None
        for j in range(i + 1, len(distinct)):
            t = distinct[j]
            if s < t and (parent is None or len(t) < len(distinct[parent])):
                parent = j
        if parent is not None:
            children[parent].append(i)

    colors = [3] * family.ground_size
    designation: list[tuple[int, int]] = [(0, 0)] * len(distinct)

    def relabel(elements, perm) -> None:
        for x in elements:
            colors[x] = perm[colors[x] - 1]

    def perm_for(odd: int, even: int, order) -> tuple[int, int, int]:
        perm = [0, 0, 0]
        perm[odd - 1], perm[even - 1] = order[0], order[1]
        third = 6 - odd - even
        perm[third - 1] = order[2]
        return tuple(perm)

    # distinct is sorted by size, so children are finished before parents
    for i, s in enumerate(distinct):
        kids = sorted(children[i], key=lambda k: min(distinct[k]))
        if not kids:
            ordered = sorted(s)
            colors[ordered[0]] = 1
            for x in ordered[1:]:
                colors[x] = 3
        else:
            inside = set()
            for k in kids:
                inside |= distinct[k]
            for x in s - inside:
                colors[x] = 3
            for k in kids:
                relabel(distinct[k], perm_for(*designation[k], (1, 2, 3)))
            if _parity(s, colors) in ((0, 0, 0), (1, 1, 1)):
                last = kids[-1]
                odd, even = designation[last]
                current = perm_for(odd, even, (1, 2, 3))
                inverse = [0, 0, 0]
                for src, dst in enumerate(current):
                    inverse[dst - 1] = src + 1
                relabel(distinct[last], tuple(inverse))
                for order in permutations((1, 2, 3)):
                    trial = perm_for(odd, even, order)
                    relabel(distinct[last], trial)
                    if _parity(s, colors) not in ((0, 0, 0), (1, 1, 1)):
                        break
                    back = [0, 0, 0]
                    for src, dst in enumerate(trial):
                        back[dst - 1] = src + 1
                    relabel(distinct[last], tuple(back))
                else:
                    raise AlgorithmInvariantViolated("no permutation repairs the member parity")
        designation[i] = _designate(_parity(s, colors))

    # ancestors relabel their descendants, so read designations off the final colors
    final = tuple(_designate(_parity(frozenset(m), colors)) for m in family.members)
    for m, (odd, even) in zip(family.members, final):
        if odd == even:
            raise AlgorithmInvariantViolated(f"member {m} lacks an odd or an even color")
    return NestedColoring(Coloring(tuple(colors), 3), final)


def nested_three_coloring(family: NestedFamily) -> Coloring:
    return nested_three_coloring_with_designations(family).coloring
