"""Exact machinery for induced-subgraph counting under graph parameters."""

from .errors import InvariantError, PreconditionError
from .graphs import (
    CanonicalGraph,
    Graph,
    HColoring,
    canonical_form,
    canonical_key,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    difference_graph,
    disjoint_union,
    edge_subgraph,
    enumerate_canonical_graphs,
    identity_coloring,
    independent_set,
    induced_subgraph,
    inhabited_graph,
    join,
    lexicographic_product,
    make_graph,
    path_graph,
    star_graph,
)
from .params import (
    GraphParameter,
    IndicatorParameter,
    builtin_parameter,
    evaluate,
    image_on,
    indicator_decomposition,
    is_edge_monotone_on,
    is_nontrivial_on,
    normalize_codomain,
    standard_parameters,
    table_parameter,
)
from .enumerator import (
    SubBasisDecomposition,
    alternating_enumerator,
    alternating_enumerator_mod_p,
    check_nonvanishing_criterion,
    subbasis_coefficients,
)
from .counting import (
    count_cliques,
    count_cp_indsub,
    count_cphom,
    count_hom,
    count_indsub,
    count_sub,
    fpt_indsub,
)
from .sylow import (
    FixedPointLattice,
    PermutationGroup,
    SylowFixedPoint,
    find_nonvanishing_fixed_point,
    orbit_partition,
    product_lattice,
    sylow_generators,
    sylow_lattice,
)
from .reductions import (
    Classification,
    LiftSpec,
    OracleHandle,
    classify_concentrated_reducible,
    clique_to_cphom_instance,
    count_cliques_via_indsub,
    cphom_from_cpindsub_oracle,
    cpindsub_from_indsub_oracle,
    lift_instance,
    lift_parameter,
    scatter_membership,
)
from .modular import (
    Cnf3,
    ColoringGadget,
    coloring_to_clique_graph,
    divisibility_oracle,
    mod_p_clique_via_indsub,
    numclique_from_modclique,
    residue_oracle,
    sat_to_coloring_graph,
)

__version__ = "0.1.0"
