"""Endpoint census for random walks on directed metric graphs.

Exact counts of the points a walker can occupy at time T, the matching
jump stream and polynomial asymptotics for one-way Sperner graphs, and an
independent brute-force oracle that works on any strongly connected
digraph.  An HTTP service and a thin CLI sit on top.
"""

from .census import (
    CensusReport,
    JumpEvent,
    asymptotic_coefficient,
    census_report,
    check_identities,
    exact_count,
    handshake_sum,
    jump_stream,
)
from .errors import (
    ArgumentError,
    ClassError,
    CountRangeError,
    ModelError,
    StructureError,
    WalkCensusError,
)
from .generators import build_example, circle_chords, path_cycle, star_loops, truncated_surd
from .graphs import (
    DegreePair,
    Edge,
    MetricDigraph,
    SpernerCertificate,
    back_edge_order,
    degrees,
    formula_subgraph,
    simple_chain,
    validate_sperner,
)
from .lattice import (
    DEFAULT_EPSILON,
    CountingProblem,
    EpsilonGuard,
    count,
    count_inclusion_exclusion,
    count_two_term,
)
from .oracle import (
    EndpointKey,
    count_endpoints,
    count_endpoints_many,
    endpoint_positions,
    enumerate_endpoints,
)
from .routes import (
    Chain,
    CollisionWarning,
    Cycle,
    CycleBasis,
    TimeVector,
    build_cycle_basis,
    edge_sum_identity_holds,
    evaluate,
    general_position_audit,
    realized_times,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "CensusReport",
    "Chain",
    "ClassError",
    "CollisionWarning",
    "CountRangeError",
    "CountingProblem",
    "Cycle",
    "CycleBasis",
    "DEFAULT_EPSILON",
    "DegreePair",
    "Edge",
    "EndpointKey",
    "EpsilonGuard",
    "JumpEvent",
    "MetricDigraph",
    "ModelError",
    "SpernerCertificate",
    "StructureError",
    "TimeVector",
    "WalkCensusError",
    "asymptotic_coefficient",
    "back_edge_order",
    "build_cycle_basis",
    "build_example",
    "census_report",
    "check_identities",
    "circle_chords",
    "count",
    "count_endpoints",
    "count_endpoints_many",
    "count_inclusion_exclusion",
    "count_two_term",
    "degrees",
    "edge_sum_identity_holds",
    "endpoint_positions",
    "enumerate_endpoints",
    "evaluate",
    "exact_count",
    "formula_subgraph",
    "general_position_audit",
    "handshake_sum",
    "jump_stream",
    "path_cycle",
    "realized_times",
    "simple_chain",
    "star_loops",
    "truncated_surd",
    "validate_sperner",
]
