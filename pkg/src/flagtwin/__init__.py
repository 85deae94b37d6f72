"""flagtwin: random clique-pair complexes, their free-involution double
covers, exact homology and spectral certificates, and a seeded Monte Carlo
laboratory around them."""

from .graphs import (
    BipartitionedGraph,
    Graph,
    common_neighbor_graph,
    complement,
    sample_gnp,
    sample_h,
    sample_h_q,
    sample_two_param,
)
from .complexes import (
    Complex,
    Involution,
    bidegree_subcomplex,
    check_construction_equivalence,
    expected_face_count,
    f_vector,
    flag_complex,
    link,
    quotient_by_free_involution,
    separated_deleted_join,
    two_clique_complex,
)
from .homology import (
    BoundaryMatrix,
    HomologyGroup,
    betti_profile,
    betti_q,
    boundary_matrix,
    integer_homology,
)
from .spectral import (
    GarlandCertificate,
    SpectralReport,
    bipartite_gap_lower_bound,
    discrepancy_probe,
    edge_discrepancy,
    garland_check,
    spectral_report,
)
from .collapse import CollapseTrace, collapse_greedy, lifted_collapse, replay_trace
from .radon import (
    Embedding,
    RadonWitness,
    hulls_intersect,
    nonadjacent_clique_pairs,
    radon_witness,
    sample_embedding,
    verify_witness,
)
from .experiments import ExperimentConfig, TrialRecord, run_experiment, summarize
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = [
    "BipartitionedGraph",
    "BoundaryMatrix",
    "CollapseTrace",
    "Complex",
    "Embedding",
    "ExperimentConfig",
    "GarlandCertificate",
    "Graph",
    "HomologyGroup",
    "Involution",
    "KERNEL_BACKEND",
    "RadonWitness",
    "SpectralReport",
    "TrialRecord",
    "bidegree_subcomplex",
    "betti_profile",
    "betti_q",
    "bipartite_gap_lower_bound",
    "boundary_matrix",
    "check_construction_equivalence",
    "collapse_greedy",
    "common_neighbor_graph",
    "complement",
    "discrepancy_probe",
    "edge_discrepancy",
    "expected_face_count",
    "f_vector",
    "flag_complex",
    "garland_check",
    "hulls_intersect",
    "integer_homology",
    "lifted_collapse",
    "link",
    "nonadjacent_clique_pairs",
    "quotient_by_free_involution",
    "radon_witness",
    "replay_trace",
    "run_experiment",
    "sample_embedding",
    "sample_gnp",
    "sample_h",
    "sample_h_q",
    "sample_two_param",
    "separated_deleted_join",
    "spectral_report",
    "summarize",
    "two_clique_complex",
    "verify_witness",
]
