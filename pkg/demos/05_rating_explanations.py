"""Rate obtained explanations against an expected one on the 1..6 scale.

1 is a perfect (isomorphic) match; 2..5 admit growing budgets of extra atoms
around an embedded copy of the expected subgraph, counting carbons separately
from heteroatoms; 6 means the expected explanation is not even contained.
"""

from pi_explain import (
    LabeledGraph,
    NodeLabel,
    best_rating,
    rate_explanation,
    summarize,
)
from pi_explain.evaluation import stats_csv_rows

expected = LabeledGraph(
    [(0, NodeLabel("C")), (1, NodeLabel("O")), (2, NodeLabel("N"))],
    [(0, 1, 1.0), (0, 2, 1.0)],
)


def grown(extra_elements):
    nodes = list(expected.nodes())
    edges = [(u, v, lab) for u, v, lab in expected.edges()]
    nid = 3
    for element in extra_elements:
        nodes.append((nid, NodeLabel(element)))
        edges.append((0, nid, 1.0))
        nid += 1
    return LabeledGraph(nodes, edges)


for extras in ("", "CC", "CCCC", "O", "OO", "OOO"):
    rating = rate_explanation(grown(extras), expected)
    print(
        f"extras {extras or '(none)':8s} -> category {rating.value} "
        f"(+{rating.extra_carbons} C, +{rating.extra_heteroatoms} hetero)"
    )

unrelated = LabeledGraph(
    [(0, NodeLabel("C")), (1, NodeLabel("C"))], [(0, 1, 1.0)]
)
print("unrelated graph -> category", rate_explanation(unrelated, expected).value)

pool = [grown("CCCCCC"), grown("C"), unrelated]
rating, chosen = best_rating(pool, expected)
print("\nbest of the pool: category", rating.value, "with", chosen.n_edges, "edges")

# aggregate view, as emitted in CSV form by the command line
from pi_explain.pi_search import Explanation, SearchReport

reports = [
    SearchReport(
        explanations=tuple(Explanation(dag_node=frozenset({i})) for i in range(k)),
        classifier_calls=calls,
        dag_nodes_total=calls,
        dag_nodes_pruned=0,
        decisions={},
    )
    for k, calls in [(3, 17), (8, 41), (1, 5)]
]
summary = summarize(reports, best=[(rating, chosen)] * 3)
print("\nlong-format statistics rows:")
for row in stats_csv_rows(summary):
    print("  ", row)
