import json
from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import pcfcolor.biconvex as biconvex
from pcfcolor.biconvex import (
    BipartiteLayout,
    NestedFamily,
    check_convex,
    check_layout,
    check_nested,
    layout_from_json_text,
    minimal_restricted_intervals,
    nested_three_coloring,
    nested_three_coloring_with_designations,
    one_sided_witness_coloring,
    pcf_color_biconvex,
)
from pcfcolor.constructions import build_gk, build_hk, complete_bipartite, random_biconvex
from pcfcolor.errors import AlgorithmInvariantViolated, InvalidLayout, InvalidParameter, NotNested
from pcfcolor.graph import Mode, build_graph, cycle_graph, verify


def _interval_layout(size_a, intervals):
    edges = [(x, size_a + j) for j, (lo, hi) in enumerate(intervals) for x in range(lo, hi + 1)]
    g = build_graph(edges, size_a + len(intervals))
    return BipartiteLayout.from_orders(g, range(size_a), range(size_a, size_a + len(intervals)))


def _unique_witness_everywhere(layout, colors):
    for w in layout.order_b:
        seen = Counter(colors[x] for x in layout.graph.adjacency[w])
        if seen and 1 not in seen.values():
            return False
    return True


def test_check_layout_examples():
    assert check_layout(build_gk(1).layout) == (True, None)
    c6 = BipartiteLayout.from_orders(cycle_graph(6), (0, 2, 4), (1, 3, 5))
    ok, bad = check_layout(c6)
    assert not ok and bad is not None
    for m in range(1, 5):
        for n in range(1, 5):
            assert check_layout(complete_bipartite(m, n).layout)[0]


def test_check_layout_structural_failures():
    g = build_graph([(0, 1), (1, 2)], 3)
    assert not check_layout(BipartiteLayout.from_orders(g, (0, 1), (2,)))[0]  # edge inside A
    assert not check_layout(BipartiteLayout.from_orders(g, (0, 2), ()))[0]  # vertex 1 missing


def test_gk_is_convex_not_biconvex():
    assert check_convex(build_gk(2).layout)[0]
    assert not check_layout(build_gk(2).layout)[0]


def test_one_sided_k22():
    colors = one_sided_witness_coloring(complete_bipartite(2, 2).layout)
    assert colors == {0: 1, 1: 3}


def test_one_sided_g1_path():
    layout = build_gk(1).layout
    assert one_sided_witness_coloring(layout) == {0: 1, 1: 2}
    c = pcf_color_biconvex(layout)
    assert c.colors == (1, 2, 6, 4, 6)
    assert verify(layout.graph, c, Mode.PCF).is_valid
    assert len({c.colors[v] for v in layout.side_a}) <= 2


def test_six_coloring_examples():
    k33 = complete_bipartite(3, 3)
    c = pcf_color_biconvex(k33.layout)
    assert c.colors == (1, 3, 3, 4, 6, 6)
    assert verify(k33.graph, c, Mode.PCF).is_valid
    assert pcf_color_biconvex(complete_bipartite(1, 1).layout).colors == (1, 4)


def test_s_choice_counterexample():
    # [1,4] restricted to itself has minimal intervals [1,2] and [3,4]; taking
    # both ends of each would color 1,2,3,4 alternately and leave [1,4] with
    # every color twice.
    layout = _interval_layout(5, [(0, 2), (1, 4), (3, 4)])
    assert check_layout(layout)[0]
    assert minimal_restricted_intervals([(0, 2), (1, 4), (3, 4)], (1, 4)) == [(1, 2), (3, 4)]
    colors = one_sided_witness_coloring(layout)
    assert _unique_witness_everywhere(layout, colors)
    assert verify(layout.graph, pcf_color_biconvex(layout), Mode.PCF).is_valid


def test_invalid_layout_raises():
    c6 = BipartiteLayout.from_orders(cycle_graph(6), (0, 2, 4), (1, 3, 5))
    with pytest.raises(InvalidLayout):
        one_sided_witness_coloring(c6)
    with pytest.raises(InvalidLayout):
        pcf_color_biconvex(c6)


def test_isolated_vertices():
    g = build_graph([(0, 2)], 4)  # 1 isolated in A, 3 isolated in B
    layout = BipartiteLayout.from_orders(g, (0, 1), (2, 3))
    c = pcf_color_biconvex(layout)
    assert c.colors[1] == 3 and verify(g, c, Mode.PCF).is_valid


def test_contract_post_check(monkeypatch):
    monkeypatch.setattr(biconvex, "_disjoint_cover", lambda intervals, length: [])
    with pytest.raises(AlgorithmInvariantViolated):
        one_sided_witness_coloring(complete_bipartite(2, 3).layout)


def test_layout_json_round_trip():
    layout = random_biconvex(5, 4, 3).layout
    again = layout_from_json_text(json.dumps(layout.to_json()))
    assert again == layout


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 9), st.integers(0, 9), st.integers(0, 10**6))
def test_random_biconvex_six_coloring(n_a, n_b, seed):
    inst = random_biconvex(n_a, n_b, seed)
    c = pcf_color_biconvex(inst.layout)
    assert verify(inst.graph, c, Mode.PCF).is_valid
    assert {c.colors[v] for v in inst.layout.side_a} <= {1, 2, 3}
    assert {c.colors[v] for v in inst.layout.side_b} <= {4, 5, 6}
    picked = [one_sided_witness_coloring(inst.layout)[v] for v in inst.layout.order_a]
    s = [col for col in picked if col != 3]
    assert s == [1 + k % 2 for k in range(len(s))]  # alternation along order_a


def test_nested_examples():
    assert nested_three_coloring(NestedFamily.of(1, [(0,)])).colors == (1,)
    chain = NestedFamily.of(4, [(0, 1), (0, 1, 2, 3)])
    nc = nested_three_coloring_with_designations(chain)
    assert nc.coloring.colors == (1, 3, 3, 3)
    assert nc.designations == ((1, 2), (1, 2))
    assert nested_three_coloring(build_hk(3).nested).colors == (2, 3, 2, 1, 3, 2, 3, 1)


def _check_member_parities(family, nc):
    for member, (odd, even) in zip(family.members, nc.designations):
        counts = Counter(nc.coloring.colors[x] for x in member)
        assert counts[odd] % 2 == 1 and counts[even] % 2 == 0 and odd != even


def test_nested_even_number_of_children():
    # two children under one parent: the parity step needs the last-child fix-up
    family = NestedFamily.of(4, [(0, 1), (2, 3), (0, 1, 2, 3)])
    nc = nested_three_coloring_with_designations(family)
    _check_member_parities(family, nc)
    family = NestedFamily.of(9, [(0,), (1, 2), (3,), (4, 5), tuple(range(9))])
    _check_member_parities(family, nested_three_coloring_with_designations(family))


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 12), st.data())
def test_random_nested_families(size, data):
    # build a laminar family by recursive splitting
    members = []

    def split(lo, hi):
        if data.draw(st.booleans()):
            members.append(tuple(range(lo, hi)))
        if hi - lo >= 2 and data.draw(st.booleans()):
            cuts = sorted(set(data.draw(st.lists(st.integers(lo + 1, hi - 1), min_size=1, max_size=3))))
            bounds = [lo, *cuts, hi]
            for a, b in zip(bounds, bounds[1:]):
                split(a, b)

    split(0, size)
    if not members:
        members.append(tuple(range(size)))
    family = NestedFamily.of(size, members)
    _check_member_parities(family, nested_three_coloring_with_designations(family))


def test_nested_errors():
    with pytest.raises(NotNested) as err:
        check_nested(NestedFamily.of(3, [(0, 1), (1, 2)]))
    assert err.value.pair == (0, 1)
    with pytest.raises(InvalidParameter):
        check_nested(NestedFamily.of(3, [()]))
    with pytest.raises(InvalidParameter):
        check_nested(NestedFamily.of(3, [(2, 3)]))
    with pytest.raises(NotNested):
        nested_three_coloring(NestedFamily.of(3, [(0, 1), (1, 2)]))


def test_nested_json_round_trip():
    fam = build_hk(2).nested
    assert NestedFamily.from_json(json.loads(json.dumps(fam.to_json()))) == fam
