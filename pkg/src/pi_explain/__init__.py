"""Minimal sufficient subgraph explanations for reaction feasibility classifiers.

The pipeline: a reaction instance (a transition-state graph superimposing
reactants and products) is turned into a rooted search space via its line
graph; the extension DAG over that space organizes every connected subgraph
containing the reaction center; a pruned traversal driven by a black-box
decision function finds the minimal subgraphs whose every extension keeps the
classifier's verdict. Brute-force oracles, candidate generation by rule
application, a rating protocol, and a complexity benchmark round things out.
"""

from .bench import BenchRow, bench_extensions, bench_one, random_connected_graph
from .classifier import (
    DecisionFunction,
    ExternalClassifier,
    PatternClassifier,
    SizeClassifier,
    TableClassifier,
    classify_batch,
    decide,
    make_classifier,
    parse_pattern_spec,
)
from .errors import (
    CapExceededError,
    GraphError,
    NotExplainedError,
    ScoringError,
    ValidationError,
)
from .evaluation import (
    Rating,
    StatsSummary,
    best_rating,
    rate_explanation,
    summarize,
)
from .extension_dag import (
    EnumState,
    ExtensionDag,
    brute_force_dag,
    build_extension_dag,
    count_rooted_connected,
    dag_to_dot,
    enumerate_rooted_connected,
    is_existing_extension,
    is_valid_extension,
)
from .graphs import (
    GraphMapping,
    LabeledGraph,
    NodeLabel,
    contract,
    edge_subgraph,
    induced_subgraph,
    is_connected,
    line_graph,
)
from .io import (
    canonical_key,
    its_to_dot,
    parse_graph,
    parse_its,
    parse_rule,
    serialize_graph,
    serialize_its,
)
from .match import are_isomorphic, find_subgraph_isomorphisms, iter_embeddings
from .pi_search import (
    Explanation,
    SearchReport,
    brute_force_pi,
    compute_pi_explanations,
    explain_instance,
)
from .reaction import (
    BondPair,
    ItsGraph,
    ReactionRule,
    RootedSearchSpace,
    apply_rule,
    build_search_space,
    compose_its,
    decompose_its,
    expand_explanation,
    reaction_center,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
