"""Zigzags (Petrie circuits) of thin chamber complexes, Coxeter complexes
and regular abstract polytopes."""
from .complex import (
    AdjacencyGraph,
    Complex,
    ThinChamberComplex,
    adjacency_graph,
    bipyramid,
    build_complex,
    builtin,
    cross_polytope,
    format_cplx,
    is_k_neighborly,
    join,
    parse_cplx,
    path_distance,
    read_cplx,
    simplex,
    thin_chamber,
    validate_thin_chamber,
    write_cplx,
)
from .coxeter import (
    CoxeterMatrix,
    coxeter_complex,
    coxeter_number,
    distinct_reduced_expression_exists,
    enumerate_group,
    left_multiplication,
    length,
    named_matrix,
    parabolic_cosets,
    verify_prop_3_5,
)
from .errors import InputError, VerificationError, ZigzagError
from .geodesic import (
    are_z_connected,
    is_distance_normal_geodesic,
    is_distance_normal_pair,
    section_4_3_report,
    weakly_adjacent,
    zigzags_through_geodesic,
)
from .polytope import (
    AbstractPolytope,
    flag_complex,
    generalized_zigzag,
    named_polytope,
    polytope_from_complex,
    prop_3_6_check,
    regular_polytope_from_string,
    sigma_p,
)
from .zigzag import (
    Shadow,
    Zigzag,
    enumerate_zigzags,
    reconstruct_from_shadow,
    reverse_flag,
    shadow,
    sigma,
    t_step,
    zigzag_from_flag,
    zigzag_from_vertex_sequence,
    zigzag_predicates,
)

__version__ = "0.1.0"
