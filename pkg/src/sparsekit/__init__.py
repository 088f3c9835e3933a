"""sparsekit: spectral graph sparsification toolkit.

Spanner-packing and resistance-based sparsifiers, a sketch oracle for
effective resistances, Laplacian/SDD solvers that route through
sparsifiers, generators for hard (hidden-sparsifier) instances, and a
query-cost ledger that reports both classical counts and the modeled cost
of search-based implementations.
"""

from .errors import (
    BadEpsilon,
    BadEstimate,
    BadNodeId,
    BadShape,
    BadWeight,
    ComponentMismatch,
    DifferentComponents,
    Disconnected,
    EpsilonTooSmallWarning,
    IndexOutOfRange,
    LengthMismatch,
    NoConvergenceWarning,
    NotSDD,
    NotSDDM,
    RejectedEdge,
    SparsekitError,
    TooLargeForDense,
    UnbalancedDemand,
)
from .graph import (
    WeightedGraph,
    build_graph,
    complete_graph,
    cut_value,
    dense_laplacian,
    gnp_random_graph,
    laplacian_quadratic,
    random_m_edge_graph,
    sparse_laplacian,
)
from .hardgen import (
    HiddenGraph,
    HiddenInput,
    audit_sparsifier_recovery,
    build_hidden_graph,
    gen_b_eps,
    gen_valid_input,
    matching_edges,
)
from .oracle import (
    CostLedger,
    KWiseBits,
    QueryOracle,
    UniformBits,
    grover_cost,
    implicit_weight,
)
from .resistance import (
    ResistanceOracle,
    build_resistance_oracle,
    commute_time,
    dissipated_power,
    exact_resistance,
    load_oracle,
    query_resistance,
    save_oracle,
)
from .shortest_paths import ShortestPathTree, dijkstra, minfind, spt_partitioned
from .solver import (
    SddSystem,
    SolveResult,
    bottom_eigs,
    gremban_reduce,
    min_cut_approx,
    sdd_solve,
    sddm_sparsify,
    solve_laplacian,
    solve_via_sparsifier,
    stoer_wagner,
)
from .spanner import Spanner, SpannerPacking, build_spanner, spanner_packing
from .sparsify import (
    Sparsifier,
    SpectralReport,
    half_sparsify,
    ks_sparsify,
    refined_sparsify,
    resistance_sample,
    verify_cuts,
    verify_spectral,
)

__version__ = "0.1.0"
