import itertools
import random

import pytest

from pi_explain.classifier import PatternClassifier, SizeClassifier
from pi_explain.errors import NotExplainedError
from pi_explain.extension_dag import brute_force_dag, build_extension_dag
from pi_explain.graphs import LabeledGraph, NodeLabel, edge_subgraph
from pi_explain.pi_search import (
    brute_force_pi,
    compute_pi_explanations,
    explain_instance,
)
from pi_explain.reaction import BondPair, ItsGraph, reaction_center

from conftest import cycle_graph, path_graph, random_connected, random_its, star_graph


def table_decide(table):
    return lambda s: table[s]


def test_chain_dag_single_survivor():
    dag = build_extension_dag(path_graph(3), 0)
    a, ab, abc = frozenset({0}), frozenset({0, 1}), frozenset({0, 1, 2})
    decide = table_decide({abc: 1, ab: 1, a: 0})
    report = compute_pi_explanations(dag, decide)
    assert report.sink_sets == [ab]
    assert report.dag_nodes_pruned == 1
    assert brute_force_pi(dag, decide) == {ab}


def test_all_positive_returns_root():
    dag = build_extension_dag(cycle_graph(4), 0)
    report = compute_pi_explanations(dag, lambda s: 1)
    assert report.sink_sets == [frozenset({0})]
    assert report.classifier_calls == dag.n_nodes
    assert report.dag_nodes_pruned == 0


def test_star_dag_leaf_condition():
    dag = build_extension_dag(star_graph(3), 0)
    decide = lambda s: 1 if 2 in s else 0
    report = compute_pi_explanations(dag, decide)
    assert report.sink_sets == [frozenset({0, 2})]
    # {0}, {0,1}, {0,3}, {0,1,3}  are all pruned
    assert report.dag_nodes_pruned == 4
    assert brute_force_pi(dag, decide) == {frozenset({0, 2})}


def test_source_negative_raises():
    dag = build_extension_dag(path_graph(2), 0)
    with pytest.raises(NotExplainedError):
        compute_pi_explanations(dag, lambda s: 0)
    # the brute force simply finds nothing
    assert brute_force_pi(dag, lambda s: 0) == set()


def all_tables(dag):
    nodes = sorted(dag.node_sets, key=lambda s: (len(s), sorted(s)))
    for bits in itertools.product((0, 1), repeat=len(nodes)):
        yield dict(zip(nodes, bits))


def check_equivalence(dag, decide):
    source_positive = decide(dag.source) == 1
    oracle = brute_force_pi(dag, decide)
    if not source_positive:
        with pytest.raises(NotExplainedError):
            compute_pi_explanations(dag, decide)
        assert oracle == set()
        return
    report = compute_pi_explanations(dag, decide)
    assert set(report.sink_sets) == oracle
    # accounting: survivors are exactly the positive decisions
    positives = sum(1 for v in report.decisions.values() if v == 1)
    assert report.dag_nodes_pruned == dag.n_nodes - positives
    assert report.classifier_calls == len(report.decisions) <= dag.n_nodes


def test_exhaustive_tables_tiny_bases():
    for base, root in [
        (path_graph(3), 0),
        (path_graph(4), 1),
        (star_graph(3), 0),
        (cycle_graph(4), 0),
    ]:
        dag = build_extension_dag(base, root)
        assert dag.n_nodes <= 10
        for table in all_tables(dag):
            check_equivalence(dag, table_decide(table))


def test_random_tables_on_random_bases():
    rng = random.Random(42)
    for _ in range(120):
        g = random_connected(rng.randint(2, 8), rng)
        root = rng.choice(g.node_ids)
        dag = build_extension_dag(g, root)
        table = {s: rng.randint(0, 1) for s in dag.node_sets}
        check_equivalence(dag, table_decide(table))


def test_monotone_decide_gives_minimal_elements_of_upset():
    rng = random.Random(5)
    for _ in range(40):
        g = random_connected(rng.randint(2, 7), rng)
        root = rng.choice(g.node_ids)
        dag = build_extension_dag(g, root)
        nodes = sorted(dag.node_sets, key=lambda s: (len(s), sorted(s)))
        seeds = rng.sample(nodes, k=min(len(nodes), rng.randint(1, 3)))
        positives = {s for s in nodes if any(seed <= s for seed in seeds)}
        decide = lambda s: 1 if s in positives else 0
        # independent computation: minimal elements of the up-closed set
        minimal = {
            s for s in positives if not any(t < s for t in positives)
        }
        report = compute_pi_explanations(dag, decide)
        assert set(report.sink_sets) == minimal == brute_force_pi(dag, decide)


def test_batch_size_does_not_change_results():
    dag = build_extension_dag(cycle_graph(5), 0)
    rng = random.Random(3)
    table = {s: rng.randint(0, 1) for s in dag.node_sets}
    table[dag.source] = 1
    decide = table_decide(table)

    def batched(width):
        calls = []

        def decide_batch(sets):
            calls.append(len(sets))
            return [decide(s) for s in sets]

        return compute_pi_explanations(dag, decide, decide_batch=decide_batch)

    reports = [batched(w) for w in (1, 2, 7, 1024)]
    first = reports[0]
    for rep in reports[1:]:
        assert rep.explanations == first.explanations
        assert rep.classifier_calls == first.classifier_calls
        assert rep.dag_nodes_pruned == first.dag_nodes_pruned


def test_each_node_scored_at_most_once():
    dag = build_extension_dag(cycle_graph(5), 0)
    seen = []

    def decide(s):
        seen.append(s)
        return 1

    compute_pi_explanations(dag, decide)
    assert len(seen) == len(set(seen)) == dag.n_nodes


# end-to-end pipeline ----------------------------------------------------------


def ester_its():
    """Carbonyl ester with incoming amine: O double bond gives context."""
    return ItsGraph(
        [
            (0, NodeLabel("C")),
            (1, NodeLabel("C")),
            (2, NodeLabel("O")),
            (3, NodeLabel("O")),
            (4, NodeLabel("N")),
        ],
        [
            (0, 1, BondPair(1, 1)),
            (1, 2, BondPair(2, 2)),
            (1, 3, BondPair(1, 0)),
            (1, 4, BondPair(0, 1)),
        ],
    )


def test_explain_accept_all_returns_center():
    its = ester_its()
    report = explain_instance(its, SizeClassifier(0), threshold=0.5)
    assert report.label == 1
    assert report.explanation_edge_sets == [reaction_center(its)]


def test_explain_accept_only_full_instance():
    its = ester_its()
    report = explain_instance(its, SizeClassifier(its.n_edges), threshold=0.5)
    assert report.explanation_edge_sets == [its.edge_set()]


def test_explain_feasible_context_pattern():
    # the classifier needs the second oxygen next to the reacting carbon:
    # every explanation must then contain the carbonyl edge
    its = ester_its()
    clf = PatternClassifier("O1-C1,C1-O2")
    report = explain_instance(its, clf, threshold=0.5)
    assert report.label == 1
    assert report.explanations
    for edges in report.explanation_edge_sets:
        assert (1, 2) in edges
    # oracle audit on the same decide function
    from pi_explain.reaction import build_search_space, expand_explanation

    space = build_search_space(its)
    dag = build_extension_dag(space.base, space.root)
    decide = lambda s: 1 if clf.score(edge_subgraph(its, expand_explanation(space, s))) >= 0.5 else 0
    oracle = brute_force_pi(dag, decide)
    assert {
        frozenset(expand_explanation(space, s)) for s in oracle
    } == set(map(frozenset, report.explanation_edge_sets))


def test_explain_negative_instance_is_explained_symmetrically():
    # no carbonyl oxygen anywhere: the pattern never matches, the instance is
    # negative, and every subgraph agrees with that verdict
    its = ItsGraph(
        [
            (0, NodeLabel("C")),
            (1, NodeLabel("C")),
            (2, NodeLabel("O")),
            (3, NodeLabel("N")),
        ],
        [
            (0, 1, BondPair(1, 1)),
            (1, 2, BondPair(1, 0)),
            (1, 3, BondPair(0, 1)),
        ],
    )
    clf = PatternClassifier("O1-C1,C1-O2")
    report = explain_instance(its, clf, threshold=0.5)
    assert report.label == 0
    assert report.explanation_edge_sets == [reaction_center(its)]


def test_explain_random_instances_sound(rng):
    # every reported explanation contains the center, is connected, and all
    # its rooted connected supersets decide the same way
    from pi_explain.graphs import is_connected
    from pi_explain.reaction import build_search_space, expand_explanation

    for _ in range(10):
        its = random_its(rng)
        clf = SizeClassifier(rng.randint(0, its.n_edges))
        report = explain_instance(its, clf, threshold=0.5)
        center = reaction_center(its)
        space = build_search_space(its)
        dag = build_extension_dag(space.base, space.root)
        for exp in report.explanations:
            edges = exp.its_edges
            assert center <= edges
            assert is_connected(edge_subgraph(its, edges))
            for sup in dag.node_sets:
                if exp.dag_node <= sup:
                    assert report.decisions.get(sup) == 1


def test_explain_batch_width_invariance():
    its = ester_its()
    clf = PatternClassifier("O1-C1,C1-O2")
    reports = [
        explain_instance(its, clf, threshold=0.5, max_batch=w) for w in (1, 3, 1024)
    ]
    assert all(r.explanations == reports[0].explanations for r in reports)
    assert all(r.classifier_calls == reports[0].classifier_calls for r in reports)
