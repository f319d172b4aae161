"""Motif identification in gene regulatory networks.

Candidate motif occurrences are enumerated as subgraph embeddings, encoded
as a penalized edge-selection objective over binary variables, and solved
with a simulated QAOA circuit, a greedy baseline, or an exact independent-set
search. Includes synthetic benchmark generation and z-score significance
against shuffled null models.
"""

from ._version import __version__
from .embedding import (
    Embedding,
    EmbeddingSet,
    VerifyResult,
    enumerate_embeddings,
    repair_to_feasible,
    verify_edge_decomposition,
)
from .graph import (
    DisconnectedMotif,
    EmptyNetwork,
    MotifPattern,
    MotifTooSmall,
    ParseError,
    RegulatoryNetwork,
    Relation,
    builtin_motifs,
    canonicalize_motif,
    load_motif,
    load_network,
    parse_motif,
    parse_network,
    serialize_motif,
    serialize_network,
)
from .pbo import (
    PolynomialBlowup,
    PseudoBooleanPolynomial,
    QubitCapExceeded,
    VariableMap,
    assemble_objective,
    assemble_objective_parts,
    build_h_polynomial,
    objective_table,
)
from .pipeline import (
    MotifLargerThanCap,
    RunConfig,
    SolutionReport,
    partition_network,
    run_identification,
)
from .qaoa import (
    OptimizerConfig,
    QaoaParams,
    expectation,
    initial_state,
    optimize_params,
    run_circuit,
    sample_and_decode,
)
from .solvers import (
    EmbeddingCapExceeded,
    SolverResult,
    baseline_greedy,
    build_conflict_graph,
    exact_mis,
)
from .stats import ZScoreReport, shuffle_edges, zscore
from .synthgen import InfeasibleSpec, SynthSpec, generate

__all__ = [
    "__version__",
    "Relation", "RegulatoryNetwork", "MotifPattern",
    "ParseError", "EmptyNetwork", "MotifTooSmall", "DisconnectedMotif",
    "parse_network", "load_network", "serialize_network",
    "parse_motif", "load_motif", "serialize_motif",
    "builtin_motifs", "canonicalize_motif",
    "Embedding", "EmbeddingSet", "VerifyResult",
    "enumerate_embeddings", "verify_edge_decomposition", "repair_to_feasible",
    "PseudoBooleanPolynomial", "VariableMap",
    "build_h_polynomial", "assemble_objective", "assemble_objective_parts",
    "objective_table", "PolynomialBlowup", "QubitCapExceeded",
    "QaoaParams", "OptimizerConfig", "initial_state", "run_circuit",
    "expectation", "optimize_params", "sample_and_decode",
    "SolverResult", "build_conflict_graph", "baseline_greedy", "exact_mis",
    "EmbeddingCapExceeded",
    "RunConfig", "SolutionReport", "MotifLargerThanCap",
    "partition_network", "run_identification",
    "SynthSpec", "generate", "InfeasibleSpec",
    "ZScoreReport", "shuffle_edges", "zscore",
]
