"""Proper conflict-free and proper odd graph colorings with exact oracles."""

from .biconvex import (
    BipartiteLayout,
    NestedFamily,
    check_layout,
    nested_three_coloring,
    one_sided_witness_coloring,
    pcf_color_biconvex,
)
from .constructions import (
    FamilyInstance,
    build_cpn,
    build_gk,
    build_hk,
    complete_bipartite,
    cycle_instance,
    line_graph,
    odd_color_hk,
    pcf_color_gk,
    random_biconvex,
    random_claw_free,
    random_graph,
    random_permutation,
)
from .errors import ColoringError
from .graph import Coloring, Graph, Mode, VerificationReport, build_graph, core_of, verify
from .oracle import SearchMode, WitnessKind, exact_chromatic, one_sided_feasible
from .recolor import (
    clique_partition,
    find_claw,
    is_claw_free,
    is_quasi_line,
    pcf_color_claw_free,
    pcf_color_quasi_line,
)
from .reduction import (
    PermutationRep,
    antichain_partition,
    compose_product_coloring,
    convex_round_product,
    layered_refinement,
    pcf_color_convex_round,
    pcf_color_permutation,
)
from .subdivision import full_subdivision, odd4_subdivision, pcf4_subdivision

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
