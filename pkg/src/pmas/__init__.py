"""Population monotonic allocation schemes for matching games.

A matching game lives on an edge-weighted graph: players are vertices and a
coalition is worth the maximum weight of a matching inside it. This package
decides whether such a game admits a population monotonic allocation scheme
(every component a double-star whose centers form a dominant pair), returns
machine-checkable witnesses and counterexample certificates, constructs an
explicit scheme when one exists, and cross-validates the decision against an
exact linear-feasibility oracle.
"""

from .certificates import (
    DoubleStarWitness,
    ForbiddenSubgraph,
    Lemma,
    LemmaViolation,
    Pattern,
    PmDecision,
    StructuralFailure,
)
from .characterization import (
    candidate_center_pairs,
    decide_population_monotonic,
    is_dominant_pair,
    scan_forbidden_subgraphs,
    scan_weight_lemmas,
)
from .errors import (
    CapacityError,
    ConflictError,
    DomainError,
    IncompleteSchemeError,
    NotPopulationMonotonicError,
    ParseError,
    PmasError,
)
from .graph import (
    Coalition,
    WeightedGraph,
    connected_components,
    induced_subgraph,
    parse_graph,
    serialize_graph,
)
from .matching import (
    GammaTable,
    characteristic_value,
    double_star_gamma,
    gamma_table,
    max_weight_matching,
)
from .oracle import (
    FeasibilitySystem,
    build_feasibility_system,
    equivalence_harness,
    pmas_feasibility,
    random_weighted_graph,
)
from .schemes import (
    Allocation,
    AllocationScheme,
    allocate,
    construct_scheme,
    is_core_allocation,
    local_sigma,
    scheme_from_json,
    scheme_to_json,
    verify_scheme,
)

__all__ = [
    "Allocation",
    "AllocationScheme",
    "CapacityError",
    "Coalition",
    "ConflictError",
    "DomainError",
    "DoubleStarWitness",
    "FeasibilitySystem",
    "ForbiddenSubgraph",
    "GammaTable",
    "IncompleteSchemeError",
    "Lemma",
    "LemmaViolation",
    "NotPopulationMonotonicError",
    "ParseError",
    "Pattern",
    "PmDecision",
    "PmasError",
    "StructuralFailure",
    "WeightedGraph",
    "allocate",
    "build_feasibility_system",
    "candidate_center_pairs",
    "characteristic_value",
    "connected_components",
    "construct_scheme",
    "decide_population_monotonic",
    "double_star_gamma",
    "equivalence_harness",
    "gamma_table",
    "induced_subgraph",
    "is_core_allocation",
    "is_dominant_pair",
    "local_sigma",
    "max_weight_matching",
    "parse_graph",
    "pmas_feasibility",
    "random_weighted_graph",
    "scan_forbidden_subgraphs",
    "scan_weight_lemmas",
    "scheme_from_json",
    "scheme_to_json",
    "serialize_graph",
    "verify_scheme",
]
