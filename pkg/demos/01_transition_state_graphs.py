"""Build a transition-state graph from reactants and products.

The running example is an ester reacting with an amine: the C-O bridge
breaks while a new N-C bond forms. Superimposing both sides gives one graph
whose edge labels carry (reactant order, product order); the edges where the
two orders differ are the reaction center.
"""

from pi_explain import (
    LabeledGraph,
    NodeLabel,
    compose_its,
    decompose_its,
    edge_subgraph,
    its_to_dot,
    reaction_center,
    serialize_its,
)

# methyl acetate skeleton plus ammonia nitrogen; hydrogens stay implicit
atoms = [
    (0, NodeLabel("C")),  # methyl
    (1, NodeLabel("C")),  # carbonyl carbon
    (2, NodeLabel("O")),  # carbonyl oxygen
    (3, NodeLabel("O")),  # ester bridge oxygen
    (4, NodeLabel("C")),  # methoxy methyl
    (5, NodeLabel("N")),  # incoming amine
]

reactants = LabeledGraph(
    atoms,
    [(0, 1, 1.0), (1, 2, 2.0), (1, 3, 1.0), (3, 4, 1.0)],
)

# after the substitution the bridge oxygen left with its methyl, and the
# nitrogen is bonded to the carbonyl carbon
products = LabeledGraph(
    atoms,
    [(0, 1, 1.0), (1, 2, 2.0), (3, 4, 1.0), (1, 5, 1.0)],
)

its = compose_its(reactants, products, {i: i for i, _ in atoms})
print("transition-state graph:", its)
for u, v, pair in its.edges():
    marker = "  <- changes" if pair.changed else ""
    print(f"  {u}-{v}: {pair.reactant_order} -> {pair.product_order}{marker}")

center = reaction_center(its)
print("\nreaction center edges:", sorted(center))
print("center subgraph:", edge_subgraph(its, center))

back_r, back_p = decompose_its(its)
print("\nround trip recovers the inputs:", back_r == reactants, back_p == products)

print("\ncanonical document:")
print(serialize_its(its, name="ester-aminolysis"))

print("GraphViz form (dotted = breaking, dashed = forming):")
print(its_to_dot(its))
