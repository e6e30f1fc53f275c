"""Exact extremal computations around the 2-density Turan problem."""

__version__ = "0.1.0"

from .graph import (
    Graph,
    GraphError,
    complement,
    complete_graph,
    cycle_graph,
    disjoint_union,
    empty_graph,
    from_edges,
    parse_graph6,
    path_graph,
    petersen_graph,
    to_graph6,
)
from .canon import are_isomorphic, canonical_form
from .invariants import (
    clique_count,
    clique_number,
    degeneracy,
    independence_number,
    local_independence_number,
)
from .subgraph import contains_subgraph, find_embedding
from .density import (
    DensityError,
    ForbiddenFamily,
    d2,
    forbidden_family,
    is_strictly_2_balanced,
    m2,
    m2_with_witness,
    max_edges_at_size,
    reduce_to_strictly_2_balanced,
)
from .constructions import ConstructionSpec, build, expected_stats, odd_optimal_parameter
from .enumeration import (
    SearchOutcome,
    count_classes,
    enumerate_alpha_bounded,
    min_edges_under_m2_cap,
    min_m2,
)
from .sampler import ExperimentReport, SampleParams, experiment, sample_lll, verify_local
from .verify import CHECKS, CheckReport
