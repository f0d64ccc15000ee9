import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import pcfcolor.reduction as reduction
from pcfcolor.biconvex import pcf_color_biconvex
from pcfcolor.constructions import build_cpn, complete_bipartite, cycle_instance, random_graph, random_permutation
from pcfcolor.errors import (
    ImproperBase,
    InvalidOrder,
    InvalidParameter,
    LayoutDerivationFailed,
    NotConvexRound,
    SideColorerContractViolated,
)
from pcfcolor.graph import Coloring, Mode, complete_graph, cycle_graph, greedy_proper_coloring, path_graph, verify
from pcfcolor.oracle import SearchMode, exact_chromatic
from pcfcolor.reduction import (
    LayerPartition,
    OrderedBiconvexColorer,
    PermutationRep,
    antichain_partition,
    check_circular_arcs,
    compose_product_coloring,
    convex_round_product,
    layered_refinement,
    pcf_color_convex_round,
    pcf_color_permutation,
)


def test_layered_refinement_examples():
    assert layered_refinement(cycle_graph(4), Coloring((1, 2, 1, 2), 2)).layers == ((0, 2), (1, 3))
    assert layered_refinement(complete_graph(3), Coloring((1, 2, 3), 3)).layers == ((0,), (1,), (2,))
    with pytest.raises(ImproperBase):
        layered_refinement(path_graph(2), Coloring((1, 1), 1))


def test_layered_refinement_with_optimal_base():
    for seed in range(25):
        g = random_graph(9, 0.35, seed)
        base = exact_chromatic(g, SearchMode.PROPER, 9).certificate
        layers = layered_refinement(g, base)
        assert len(layers) <= base.colors_used
        layer_of = layers.layer_of()
        for v, i in layer_of.items():
            assert i == 1 or any(layer_of[x] == i - 1 for x in g.adjacency[v])


def test_antichain_partition_examples():
    assert antichain_partition(PermutationRep.of([0, 1, 2], [0, 1, 2])).layers == ((0,), (1,), (2,))
    assert antichain_partition(PermutationRep.of([0, 1, 2], [2, 1, 0])).layers == ((0, 1, 2),)
    for n in range(2, 7):
        assert len(antichain_partition(build_cpn(n).permutation)) == n


def test_permutation_rep_validation_and_json():
    with pytest.raises(InvalidParameter):
        PermutationRep.of([0, 1], [0, 0])
    perm = random_permutation(7, 1)
    assert PermutationRep.from_json(json.loads(json.dumps(perm.to_json()))) == perm


def test_cpn_permutation_graph_matches():
    for n in range(2, 6):
        inst = build_cpn(n)
        assert inst.permutation.graph() == inst.graph


def test_permutation_chain_is_clique():
    perm = PermutationRep.of(list(range(5)), list(range(5)))
    c = pcf_color_permutation(perm)
    assert verify(complete_graph(5), c, Mode.PCF).is_valid and c.palette_size == 15


def test_permutation_regression_poset():
    # elements a b c d1 d2 y; L1 = a b c d1 d2 y, L2 = d2 d1 y a b c.
    # The maximum y has its only lower neighbors in the middle layer, so it
    # must be served by that layer rather than by the bottom one.
    perm = PermutationRep.of([0, 1, 2, 3, 4, 5], [3, 4, 5, 1, 0, 2])
    assert antichain_partition(perm).layers == ((0,), (1, 3, 4), (2, 5))
    c = pcf_color_permutation(perm)
    assert c.colors == (1, 4, 7, 5, 6, 8)
    assert verify(perm.graph(), c, Mode.PCF).is_valid


def test_permutation_cp4_frozen():
    c = pcf_color_permutation(build_cpn(4).permutation)
    assert c.colors == (1, 3, 4, 6, 7, 9, 10, 12) and c.palette_size == 12


def test_permutation_antichain_single_layer():
    c = pcf_color_permutation(PermutationRep.of([0, 1, 2], [2, 1, 0]))
    assert c.colors == (1, 1, 1)


def test_layout_derivation_failure_is_loud(monkeypatch):
    monkeypatch.setattr(reduction, "check_layout", lambda layout: (False, 0))
    with pytest.raises(LayoutDerivationFailed) as err:
        pcf_color_permutation(build_cpn(3).permutation)
    assert err.value.subgraph_vertices


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 30), st.integers(0, 10**6))
def test_random_permutations(n, seed):
    perm = random_permutation(n, seed)
    c = pcf_color_permutation(perm)
    assert verify(perm.graph(), c, Mode.PCF).is_valid
    assert c.colors_used <= 3 * len(antichain_partition(perm))


def test_compose_on_bipartite_two_layers():
    inst = complete_bipartite(3, 4)
    layers = LayerPartition(((0, 1, 2), (3, 4, 5, 6)), "chromatic")
    pc = compose_product_coloring(inst.graph, layers, OrderedBiconvexColorer(range(7)), Mode.PCF)
    assert verify(inst.graph, pc.flattened, Mode.PCF).is_valid
    assert pc.flattened.colors_used <= 9 * 2


def test_compose_triangle_singletons():
    layers = LayerPartition(((0,), (1,), (2,)), "chromatic")
    pc = compose_product_coloring(complete_graph(3), layers, OrderedBiconvexColorer(range(3)), Mode.PCF)
    assert pc.flattened.colors == (1, 2, 3)


def test_compose_rejects_bad_layers():
    colorer = OrderedBiconvexColorer(range(3))
    with pytest.raises(InvalidParameter):
        compose_product_coloring(complete_graph(3), LayerPartition(((0, 1), (2,)), "chromatic"), colorer, Mode.PCF)
    with pytest.raises(InvalidParameter):
        compose_product_coloring(path_graph(3), LayerPartition(((0,), (2,), (1,)), "chromatic"), colorer, Mode.PCF)


class _Lazy:
    max_colors = 3

    def __call__(self, g, a_side, b_side):
        return {v: 1 for v in a_side}


def test_side_colorer_contract_violation():
    g = complete_bipartite(2, 2).graph
    layers = LayerPartition(((0, 1), (2, 3)), "chromatic")
    with pytest.raises(SideColorerContractViolated) as err:
        compose_product_coloring(g, layers, _Lazy(), Mode.PCF)
    assert tuple(err.value.subgraph_vertices) == (0, 1, 2, 3)


def test_convex_round_frozen_cp3():
    pc = convex_round_product(build_cpn(3).graph, range(6))
    assert pc.base == (1, 1, 2, 2, 3, 3)
    assert pc.flattened.colors == (1, 2, 3, 4, 5, 5)


def test_convex_round_families():
    for inst in [build_cpn(n) for n in range(2, 7)] + [cycle_instance(n) for n in (3, 4, 5, 9)]:
        c = pcf_color_convex_round(inst.graph, inst.circular_order)
        layers = len(layered_refinement(inst.graph, greedy_proper_coloring(inst.graph, list(inst.graph.vertices()))))
        assert verify(inst.graph, c, Mode.PCF).is_valid
        assert c.colors_used <= 9 * layers
    for m in range(1, 5):
        for n in range(1, 5):
            inst = complete_bipartite(m, n)
            c = pcf_color_convex_round(inst.graph, inst.circular_order)
            assert verify(inst.graph, c, Mode.PCF).is_valid and c.colors_used <= 18


def test_convex_round_odd_mode():
    inst = build_cpn(4)
    pc = convex_round_product(inst.graph, inst.circular_order, Mode.ODD)
    assert verify(inst.graph, pc.flattened, Mode.ODD).is_valid


def test_circular_arc_errors():
    with pytest.raises(NotConvexRound):
        check_circular_arcs(cycle_graph(6), (0, 2, 4, 1, 3, 5))
    with pytest.raises(InvalidOrder):
        check_circular_arcs(cycle_graph(4), (0, 1, 2))
    check_circular_arcs(cycle_graph(4), (0, 2, 1, 3))
    check_circular_arcs(cycle_graph(5), (0, 2, 4, 1, 3))
