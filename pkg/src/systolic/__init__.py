"""Triangulated complexes for two-generator Artin groups and their assemblies.

The package builds the subdivided-and-diagonalized complex on which the
dihedral Artin group ``<a, b | aba... = bab...>`` acts, computes vertex
links, decides six-largeness with explicit witnesses, recognizes model
graphs and prisms, and assembles and certifies the link structure for
arbitrary labeled defining graphs of almost large type.
"""

from .complexes import (
    BallComplex,
    Cell,
    InteriorVertex,
    Intersection,
    RealVertex,
    VertexId,
    ZigzagPairClass,
    adjacent,
    base_cell,
    boundary_vertex_element,
    build_ball,
    cell_at,
    classify_pair,
    complex_dimension,
    find_unsystolized_five_cycle,
    identity_link,
    interior_link,
    interior_link_partition,
    link_of,
    max_simplex_dimension,
    neighbors,
    precell_intersection,
    real_link_partition,
    vertex_link,
    zigzag_edges,
)
from .errors import DefiningGraphError, ExactRegionError, ResourceBudgetError
from .gamma import (
    AlmostLargeCheck,
    AssembledLink,
    LabeledDefiningGraph,
    LabeledEdge,
    SystolicityReport,
    assemble_real_link,
    certify_systolic_links,
    check_almost_large,
    parse_defining_graph,
)
from .links import (
    ModelGraphPartition,
    PrismOrder,
    SimplicialGraph,
    check_model_graph,
    find_full_short_cycle,
    is_6_large,
    link_distance,
    max_clique_size,
    recognize_prism,
)
from .words import (
    CanonicalForm,
    ProbeReport,
    alternating,
    canonicalize,
    delta,
    equal,
    generator,
    identity,
    inverse_word,
    lower_word,
    monoid_injectivity_probe,
    positive_equal_classes,
    upper_word,
)

__all__ = [name for name in dir() if not name.startswith("_")]
