"""Enumerate rooted connected subgraphs and inspect the extension DAG.

Every connected node set containing the root is generated exactly once, and
the extension DAG arranges those sets by inclusion: the full graph is the
unique source, the root singleton the unique sink, and each edge drops one
node. A brute-force subset filter provides the ground truth.
"""

from pi_explain import (
    LabeledGraph,
    NodeLabel,
    brute_force_dag,
    build_extension_dag,
    dag_to_dot,
    enumerate_rooted_connected,
)

# a 5-cycle with one chord
base = LabeledGraph(
    [(i, NodeLabel("C")) for i in range(5)],
    [(0, 1, 1.0), (1, 2, 1.0), (2, 3, 1.0), (3, 4, 1.0), (0, 4, 1.0), (1, 4, 1.0)],
)

print("streaming all rooted connected subgraphs (root 0):")
for s in enumerate_rooted_connected(base, 0):
    print("  ", sorted(s))

dag = build_extension_dag(base, 0)
print(f"\nextension DAG: {dag.n_nodes} node sets, {dag.n_edges} cover edges")
print("source:", sorted(dag.source), " sink:", sorted(dag.sink))

oracle = brute_force_dag(base, 0)
print("agrees with the brute-force subset filter:",
      dag.node_sets == oracle.node_sets and dag.edges == oracle.edges)

# closed forms worth remembering: paths give n sets, complete graphs 2^(n-1)
path = LabeledGraph([(i, NodeLabel("C")) for i in range(6)],
                    [(i, i + 1, 1.0) for i in range(5)])
print("\npath P6 rooted at an end:", sum(1 for _ in enumerate_rooted_connected(path, 0)))

k5 = LabeledGraph([(i, NodeLabel("C")) for i in range(5)],
                  [(i, j, 1.0) for i in range(5) for j in range(i + 1, 5)])
print("complete K5:", sum(1 for _ in enumerate_rooted_connected(k5, 0)))

print("\nDOT rendering of the DAG:")
print(dag_to_dot(dag))
