import random

import pytest

from pi_explain.errors import GraphError
from pi_explain.evaluation import (
    DistSummary,
    Rating,
    best_rating,
    histogram,
    rate_explanation,
    stats_csv_rows,
    summarize,
)
from pi_explain.graphs import LabeledGraph, NodeLabel
from pi_explain.pi_search import SearchReport


def mol(spec_nodes, edges):
    return LabeledGraph(
        [(i, NodeLabel(e)) for i, e in enumerate(spec_nodes)],
        [(u, v, 1.0) for u, v in edges],
    )


EXPECTED = mol("CON", [(0, 1), (0, 2)])


def with_pendant_atoms(g, elements):
    """Attach each extra element to node 0 by a single bond."""
    nodes = list(g.nodes())
    edges = [(u, v, lab) for u, v, lab in g.edges()]
    nid = max(g.node_ids) + 1
    for element in elements:
        nodes.append((nid, NodeLabel(element)))
        edges.append((0, nid, 1.0))
        nid += 1
    return LabeledGraph(nodes, edges)


def test_isomorphic_is_perfect():
    relabeled = LabeledGraph(
        [(5, NodeLabel("O")), (9, NodeLabel("C")), (7, NodeLabel("N"))],
        [(9, 5, 1.0), (9, 7, 1.0)],
    )
    rating = rate_explanation(relabeled, EXPECTED)
    assert rating.value == 1
    assert rating.subgraph_witness is not None


def test_two_extra_carbons_is_good():
    rating = rate_explanation(with_pendant_atoms(EXPECTED, "CC"), EXPECTED)
    assert rating.value == 2
    assert (rating.extra_carbons, rating.extra_heteroatoms) == (2, 0)


def test_missing_expected_atom_is_not_an_explanation():
    obtained = mol("CO", [(0, 1)])  # no nitrogen at all
    rating = rate_explanation(obtained, EXPECTED)
    assert rating.value == 6
    assert rating.subgraph_witness is None


def test_category_boundaries():
    cases = [
        ("CCC", 2),  # 3 extra C, no heteroatoms
        ("CCCC", 3),  # 4 extra C pushes past category 2
        ("O", 3),  # one extra heteroatom
        ("CCCCCC", 4),  # 6 extra C
        ("OO", 4),  # two heteroatoms
        ("CCCCCCCCC", 5),  # 9 extra C
        ("OOO", 5),  # three heteroatoms
    ]
    for extras, expected_value in cases:
        obtained = with_pendant_atoms(EXPECTED, extras)
        rating = rate_explanation(obtained, EXPECTED)
        assert rating.value == expected_value, (extras, rating)


def test_any_other_element_counts_against_heteroatom_budget():
    rating = rate_explanation(with_pendant_atoms(EXPECTED, "S"), EXPECTED)
    assert rating.value == 3
    assert rating.extra_heteroatoms == 1


def test_rating_of_self_is_one():
    for g in (EXPECTED, mol("C", []), mol("NN", [(0, 1)])):
        assert rate_explanation(g, g).value == 1


def test_monotone_degradation_under_pendant_carbons():
    obtained = EXPECTED
    previous = rate_explanation(obtained, EXPECTED).value
    for _ in range(10):
        obtained = with_pendant_atoms(obtained, "C")
        value = rate_explanation(obtained, EXPECTED).value
        assert value >= previous
        previous = value


def test_rating_invariant_under_relabeling(rng):
    obtained = with_pendant_atoms(EXPECTED, "CO")
    perm = list(obtained.node_ids)
    rng.shuffle(perm)
    relabel = dict(zip(obtained.node_ids, perm))
    shuffled = LabeledGraph(
        [(relabel[i], lab) for i, lab in obtained.nodes()],
        [(relabel[u], relabel[v], lab) for u, v, lab in obtained.edges()],
    )
    a = rate_explanation(obtained, EXPECTED)
    b = rate_explanation(shuffled, EXPECTED)
    assert (a.value, a.extra_carbons, a.extra_heteroatoms) == (
        b.value,
        b.extra_carbons,
        b.extra_heteroatoms,
    )


def test_value_six_iff_no_embedding(rng):
    from pi_explain.match import has_embedding

    for _ in range(30):
        n = rng.randint(1, 5)
        from conftest import random_connected

        shape = random_connected(n, rng)
        labels = [NodeLabel(rng.choice("CNO")) for _ in range(n)]
        obtained = LabeledGraph(
            [(i, labels[i]) for i in range(n)],
            [(u, v, 1.0) for u, v, _ in shape.edges()],
        )
        rating = rate_explanation(obtained, EXPECTED)
        assert (rating.value == 6) == (not has_embedding(EXPECTED, obtained))


def test_rating_validation():
    with pytest.raises(GraphError):
        Rating(0)
    with pytest.raises(GraphError):
        Rating(7)


def test_best_rating():
    iso = mol("CON", [(0, 1), (0, 2)])
    good = with_pendant_atoms(EXPECTED, "C")
    rating, chosen = best_rating([good, iso], EXPECTED)
    assert rating.value == 1 and chosen == iso

    bad1 = mol("CC", [(0, 1)])
    bad2 = mol("CCC", [(0, 1), (1, 2)])
    rating2, chosen2 = best_rating([bad2, bad1], EXPECTED)
    assert rating2.value == 6 and chosen2 == bad1  # tie broken by size

    mixed = [with_pendant_atoms(EXPECTED, "OOO"), good]
    rating3, _ = best_rating(mixed, EXPECTED)
    assert rating3.value == 2

    with pytest.raises(GraphError):
        best_rating([], EXPECTED)


def make_report(n_explanations, calls):
    return SearchReport(
        explanations=tuple(),
        classifier_calls=calls,
        dag_nodes_total=calls,
        dag_nodes_pruned=0,
        decisions={},
    )


def test_summarize_single_instance():
    from pi_explain.pi_search import Explanation

    report = SearchReport(
        explanations=tuple(
            Explanation(dag_node=frozenset({i})) for i in range(5)
        ),
        classifier_calls=12,
        dag_nodes_total=20,
        dag_nodes_pruned=3,
        decisions={},
    )
    summary = summarize([report])
    assert summary.explanations_per_instance.median == 5
    assert summary.explanations_per_instance.max_value == 5
    assert summary.classifier_calls.median == 12


def test_summarize_empty():
    summary = summarize([])
    assert summary.n_instances == 0
    assert summary.explanations_per_instance.median == 0
    assert all(count == 0 for _, count in summary.classifier_calls.bins)


def test_histogram_bins():
    bins = dict(histogram([0, 1, 1, 3, 9, 2000]))
    assert bins["0"] == 1
    assert bins["1"] == 2
    assert bins["2-3"] == 1
    assert bins["8-15"] == 1
    assert bins["1024+"] == 1


def test_stats_rows_shape():
    rows = stats_csv_rows(summarize([make_report(3, 7)]))
    metrics = {r[0] for r in rows}
    assert metrics == {
        "explanations_per_instance",
        "top_rated_size",
        "classifier_calls",
    }
    kinds = {r[1] for r in rows}
    assert kinds == {"summary", "histogram"}
