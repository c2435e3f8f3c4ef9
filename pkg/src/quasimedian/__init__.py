"""Combinatorics of quasi-median graphs.

Recognition, hyperplane structure, generators, cubulation, graph
products with word normal forms, relative hyperbolicity of graph
products, and the graph of wreaths over a median host.
"""

from .errors import (
    AmalgamError,
    CapExceeded,
    DisconnectedError,
    DomainError,
    InfiniteGroupError,
    NotMedianError,
    SchemaError,
    SingleVertexError,
)
from .graphs import (
    Graph,
    cartesian_product,
    connected_components,
    find_forbidden_subgraph,
    find_induced_embedding,
    find_isomorphism,
    graph_from_json,
    graph_to_json,
    induced_subgraph,
    interval,
    is_isomorphic,
    maximal_cliques,
    to_dot,
)
from .recognition import (
    Status,
    Verdict,
    check_quadrangle_condition,
    check_triangle_condition,
    is_median,
    is_quasi_median,
    replay_witness,
)
from .hyperplanes import (
    CarrierReport,
    GateResult,
    HyperplaneDecomposition,
    are_transverse,
    compute_hyperplanes,
    crossing_graph,
    gate,
    is_gated,
    is_geodesic,
    separating_hyperplanes,
    separation_counts,
    verify_carrier_decomposition,
)
from .generators import (
    SplitMix64,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    gated_amalgam,
    hypercube,
    path_graph,
    prism,
    random_quasi_median,
)
from .graph_products import (
    INFINITE,
    CayleyBall,
    CayleyGraph,
    FiniteGroup,
    GraphProductPresentation,
    cayley_ball,
    format_word,
    full_cayley_graph,
    inverse_word,
    multiply_words,
    presentation_from_json,
    reduce_word,
    syllable_length,
    vertex_group_cosets,
    word_equal,
)
from .relhyp import (
    LabelledGamma,
    PeripheralCollection,
    RelHypVerdict,
    classify,
    compute_peripherals,
    is_vast,
    labelled_from_presentation,
    labelled_gamma_from_json,
    large_joins,
)
from .cubulation import (
    Cubulation,
    Wallspace,
    all_consistent_orientations,
    cubulate,
    principal_orientation,
    quasi_isometry_report,
    walls_from_graph,
)
from .wreaths import (
    Wreath,
    WreathConfig,
    WreathGraphResult,
    build_wreath_graph,
    enumerate_convex_supports,
    trivial_group,
    wreath_config_from_json,
    wreath_edge,
)

__version__ = "0.1.0"
