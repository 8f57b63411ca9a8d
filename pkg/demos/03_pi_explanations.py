"""Compute minimal sufficient subgraph explanations for a black-box verdict.

The search space roots every candidate subgraph at the reaction center: the
line graph turns edge selection into node selection, the center collapses to
a single root node, and the extension DAG is walked from the full instance
downward. Wherever the classifier flips its verdict, the whole descendant
cone is pruned; the sinks of what survives are the explanations.
"""

from pi_explain import (
    ItsGraph,
    BondPair,
    NodeLabel,
    PatternClassifier,
    SizeClassifier,
    explain_instance,
)

its = ItsGraph(
    [
        (0, NodeLabel("C")),
        (1, NodeLabel("C")),
        (2, NodeLabel("O")),
        (3, NodeLabel("O")),
        (4, NodeLabel("N")),
    ],
    [
        (0, 1, BondPair(1, 1)),
        (1, 2, BondPair(2, 2)),   # carbonyl, untouched
        (1, 3, BondPair(1, 0)),   # breaking C-O
        (1, 4, BondPair(0, 1)),   # forming N-C
    ],
)

# this classifier deems a subgraph feasible only when the reacting carbon
# still carries its second oxygen: the carbonyl edge is the needed context
clf = PatternClassifier("O1-C1,C1-O2")
report = explain_instance(its, clf, threshold=0.5)
print("explained label:", report.label)
print("classifier calls:", report.classifier_calls,
      "of", report.dag_nodes_total, "candidate subgraphs",
      f"({report.dag_nodes_pruned} pruned)")
for exp in report.explanations:
    print("  explanation edges:", sorted(exp.its_edges))

# an accept-everything classifier needs no context at all: the minimal
# explanation collapses to the reaction center itself
trivial = explain_instance(its, SizeClassifier(0), threshold=0.5)
print("\naccept-all classifier -> center only:",
      [sorted(e.its_edges) for e in trivial.explanations])

# negative verdicts are explained the same way: here the pattern never
# matches, the instance is predicted infeasible, and every subgraph agrees
plain = ItsGraph(
    [(0, NodeLabel("C")), (1, NodeLabel("C")), (2, NodeLabel("O")), (3, NodeLabel("N"))],
    [(0, 1, BondPair(1, 1)), (1, 2, BondPair(1, 0)), (1, 3, BondPair(0, 1))],
)
negative = explain_instance(plain, clf, threshold=0.5)
print("\nnegative instance label:", negative.label)
print("its explanation:", [sorted(e.its_edges) for e in negative.explanations])
