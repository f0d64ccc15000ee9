import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pcfcolor.errors import InvalidColor, InvalidEdge, InvalidOrder, InvalidVertex, SelfLoop
from pcfcolor.graph import (
    Coloring,
    Mode,
    build_graph,
    complete_graph,
    cycle_graph,
    degree_sequence,
    greedy_proper_coloring,
    is_connected,
    path_graph,
    recolor_one,
    verify,
    witnesses,
)
from pcfcolor.constructions import random_graph


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(1, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True) if pairs else st.just([]))
    return build_graph(chosen, n)


def test_build_path():
    g = build_graph([(0, 1), (1, 2)], 3)
    assert degree_sequence(g) == [1, 2, 1]
    assert g.adjacency == ((1,), (0, 2), (1,))


def test_build_single_vertex():
    g = build_graph([], 1)
    assert g.vertex_count == 1 and g.max_degree == 0


def test_build_cp2_is_c4():
    g = build_graph([(0, 2), (0, 3), (1, 2), (1, 3)], 4)
    assert degree_sequence(g) == [2, 2, 2, 2]
    assert is_connected(g)


def test_build_dedups_and_sorts():
    g = build_graph([(2, 0), (0, 2), (1, 0)], 3)
    assert g.adjacency == ((1, 2), (0,), (0,))
    assert g.edge_count == 2


def test_build_errors():
    with pytest.raises(InvalidEdge):
        build_graph([(0, 3)], 3)
    with pytest.raises(SelfLoop):
        build_graph([(1, 1)], 3)


def test_witnesses_examples():
    p3 = path_graph(3)
    assert witnesses(p3, Coloring((1, 2, 1), 3), 1, Mode.ODD) == frozenset()
    assert witnesses(p3, Coloring((1, 2, 3), 3), 1, Mode.PCF) == {1, 3}
    c4 = cycle_graph(4)
    for v in range(4):
        assert witnesses(c4, Coloring((1, 2, 1, 2), 2), v, Mode.ODD) == frozenset()
    with pytest.raises(InvalidVertex):
        witnesses(p3, Coloring((1, 2, 1), 3), 5, Mode.ODD)


def test_isolated_vertex_has_no_witness_and_is_happy():
    g = build_graph([(0, 1)], 3)
    c = Coloring((1, 2, 1), 2)
    assert witnesses(g, c, 2, Mode.PCF) == frozenset()
    assert verify(g, c, Mode.PCF).core == frozenset()


def test_verify_examples():
    r = verify(complete_graph(3), Coloring((1, 2, 3), 3), Mode.PCF)
    assert r.is_proper and r.core == frozenset() and r.is_valid
    r = verify(cycle_graph(4), Coloring((1, 2, 1, 2), 2), Mode.ODD)
    assert r.is_proper and r.core == {0, 1, 2, 3}
    r = verify(cycle_graph(4), Coloring((1, 2, 3, 4), 4), Mode.PCF)
    assert r.is_valid and r.colors_used == 4


def test_verify_improper():
    r = verify(path_graph(2), Coloring((1, 1), 1), Mode.PCF)
    assert not r.is_proper and not r.is_valid


def test_verify_length_mismatch():
    with pytest.raises(InvalidColor):
        verify(path_graph(3), Coloring((1, 2), 2), Mode.PCF)


def test_recolor_one_examples():
    assert recolor_one(Coloring((1, 2, 1), 3), 2, 3).colors == (1, 2, 3)
    c = Coloring((1, 2, 3), 3)
    assert recolor_one(c, 0, 1) == c
    p3 = path_graph(3)
    after = recolor_one(Coloring((1, 2, 1), 3), 2, 3)
    assert witnesses(p3, after, 1, Mode.ODD) == {1, 3}
    with pytest.raises(InvalidColor):
        recolor_one(c, 0, 4)


def test_coloring_palette_checked():
    with pytest.raises(InvalidColor):
        Coloring((1, 5), 3)
    with pytest.raises(InvalidColor):
        Coloring((0, 1), 3)


def test_greedy_examples():
    assert greedy_proper_coloring(complete_graph(3), [0, 1, 2]).colors == (1, 2, 3)
    assert greedy_proper_coloring(cycle_graph(4), [0, 1, 2, 3]).colors == (1, 2, 1, 2)
    assert greedy_proper_coloring(cycle_graph(5), [0, 1, 2, 3, 4]).colors == (1, 2, 1, 2, 3)
    with pytest.raises(InvalidOrder):
        greedy_proper_coloring(cycle_graph(4), [0, 1, 1, 2])


@settings(max_examples=200, deadline=None)
@given(graphs())
def test_symmetry(g):
    for v in g.vertices():
        for u in g.adjacency[v]:
            assert v in g.adjacency[u]
        assert list(g.adjacency[v]) == sorted(set(g.adjacency[v]))
        assert v not in g.adjacency[v]


@settings(max_examples=200, deadline=None)
@given(graphs(), st.randoms(use_true_random=False))
def test_parity_law(g, rnd):
    order = list(g.vertices())
    rnd.shuffle(order)
    c = greedy_proper_coloring(g, order)
    report = verify(g, c, Mode.ODD)
    for v in g.vertices():
        assert len(report.witness_sets[v]) % 2 == g.degree(v) % 2


@settings(max_examples=200, deadline=None)
@given(graphs(), st.randoms(use_true_random=False))
def test_greedy_layer_property(g, rnd):
    order = list(g.vertices())
    rnd.shuffle(order)
    base = greedy_proper_coloring(g, order)
    sorted_order = sorted(g.vertices(), key=lambda v: (base.colors[v], v))
    c = greedy_proper_coloring(g, sorted_order)
    assert c.colors_used <= base.colors_used
    for v in g.vertices():
        if c.colors[v] > 1:
            assert any(c.colors[x] == c.colors[v] - 1 for x in g.adjacency[v])


@settings(max_examples=200, deadline=None)
@given(graphs(), st.data())
def test_recolor_round_trip(g, data):
    c = greedy_proper_coloring(g, list(g.vertices()), palette_size=g.max_degree + 3)
    u = data.draw(st.integers(0, g.vertex_count - 1))
    i = data.draw(st.integers(1, c.palette_size))
    assert recolor_one(recolor_one(c, u, i), u, c.colors[u]) == c


def test_pcf_equals_odd_witnesses_on_claw_free():
    from pcfcolor.constructions import line_graph

    for seed in range(30):
        g = line_graph(random_graph(8, 0.4, seed))
        c = greedy_proper_coloring(g, list(g.vertices()))
        pcf, odd = verify(g, c, Mode.PCF), verify(g, c, Mode.ODD)
        assert pcf.witness_sets == odd.witness_sets
