"""Generate candidate reactions by embedding a rewrite rule into reactants.

The rule swaps an oxygen for a nitrogen at a carbon: the C-O single bond
breaks and an N-C single bond forms. Each embedding of the rule's left side
into the reactant graph yields one candidate transition-state graph; matches
that are symmetric produce isomorphic candidates and are deduplicated.
"""

from pi_explain import (
    LabeledGraph,
    NodeLabel,
    ReactionRule,
    apply_rule,
    edge_subgraph,
    reaction_center,
    serialize_its,
)

rule = ReactionRule(
    nodes=((0, NodeLabel("C")), (1, NodeLabel("O")), (2, NodeLabel("N"))),
    left={(0, 1): 1.0},   # bond present before
    right={(0, 2): 1.0},  # bond present after
)
print("rule changes:", rule.changed_pairs())

# an ester has two C-O single bonds, so the rule matches twice and the two
# candidates are genuinely different molecules
ester_and_amine = LabeledGraph(
    [
        (0, NodeLabel("C")),
        (1, NodeLabel("C")),
        (2, NodeLabel("O")),
        (3, NodeLabel("O")),
        (4, NodeLabel("C")),
        (5, NodeLabel("N")),
    ],
    [(0, 1, 1.0), (1, 2, 2.0), (1, 3, 1.0), (3, 4, 1.0)],
)
candidates = apply_rule(rule, ester_and_amine)
print(f"\n{len(candidates)} candidates from the ester:")
for its in candidates:
    center = sorted(reaction_center(its))
    print("  center:", center)

# a symmetric ether gives two embeddings but only one distinct candidate
ether = LabeledGraph(
    [(0, NodeLabel("C")), (1, NodeLabel("O")), (2, NodeLabel("C")), (3, NodeLabel("N"))],
    [(0, 1, 1.0), (1, 2, 1.0)],
)
sym = apply_rule(rule, ether)
print(f"\nsymmetric ether: {len(sym)} candidate after deduplication")
print(serialize_its(sym[0], name="ether-substitution"))

print("every candidate embeds the rule's changing bonds as its center:",
      all(
          reaction_center(c) and edge_subgraph(c, reaction_center(c)).n_edges == 2
          for c in candidates + sym
      ))
