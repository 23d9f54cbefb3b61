"""Algebraic connectivity of cubic bipartite graphs: the extremal chain graph
H_2n, spectra and Fiedler vectors, the connectivity-decreasing edge swap,
exhaustive certification at small sizes, and perfect-matching counts."""

from .canon import canonical_form
from .descent import (
    DescentStep,
    DescentTrace,
    SwapCandidate,
    descend,
    equality_case_certificate,
    find_equality_candidates,
    find_qualifying_swaps,
    random_cubic_bipartite,
    scored_candidates,
    swap_edges,
)
from .enumeration import (
    CertificationError,
    EnumerationRecord,
    EquivalenceCertificate,
    MinimizerCertificate,
    OracleResult,
    SpotCheckReport,
    build_records,
    certify_equivalence,
    certify_minimizer,
    enumerate_cubic_bipartite,
    enumerate_cubic_bipartite_bruteforce,
    oracle_graphs,
    records_to_csv,
    records_to_json,
    structural_spot_checks,
)
from .graph6 import Graph6Error, decode_graph6, encode_graph6
from .graphs import (
    BipartiteGraph,
    Graph,
    GraphError,
    IndependentEdgePair,
    as_graph,
    bipartite_cycle,
    bipartite_from_json,
    bipartite_to_json,
    bridges,
    build_h2n,
    complement,
    complete_bipartite,
    cycle_graph,
    has_cut_edge,
    independent_edge_pairs,
    is_connected,
    path_graph,
    relabel_bipartite,
)
from .matchings import (
    Biadjacency,
    MatchingProfile,
    count_perfect_matchings,
    count_perfect_matchings_bruteforce,
    find_linear_recurrence,
    h2n_matching_profile,
)
from .spectral import (
    SolverError,
    SpectralResult,
    adjacency_matrix,
    algebraic_connectivity,
    laplacian,
    path_fiedler_closed_form,
    path_fiedler_vector,
    path_laplacian_eigenvalues,
    rayleigh_quotient,
    spectral_gap,
    symmetric_eigen,
    symmetric_fiedler_h2n,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
