"""Reaction semantics over transition-state graphs.

A transition-state graph superimposes the reactant and product molecular
graphs of a reaction: every edge carries a :class:`BondPair` giving the bond
order on each side, and the edges whose two orders differ form the reaction
center. This module builds such graphs from reactant/product pairs, splits
them back apart, applies rewrite rules to generate reaction candidates, and
constructs the rooted search space in which subgraph explanations live.

Hydrogens are implicit throughout: they are never materialized as nodes.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .errors import GraphError, ValidationError
from .graphs import (
    Edge,
    GraphMapping,
    LabeledGraph,
    NodeLabel,
    contract,
    edge_subgraph,
    is_connected,
    line_graph,
    ordered_edge,
)
from .match import are_isomorphic, iter_embeddings

#: Bond orders a molecular graph may carry; 1.5 encodes aromatic bonds.
ALLOWED_ORDERS = (0.0, 1.0, 1.5, 2.0, 3.0)


def _norm_order(value) -> float:
    v = float(value)
    if v not in ALLOWED_ORDERS:
        raise ValidationError([f"bond order {value!r} not in {sorted(ALLOWED_ORDERS)}"])
    return v


@dataclass(frozen=True, order=True)
class BondPair:
    """Edge label of a transition-state graph: (reactant order, product order)."""

    reactant_order: float
    product_order: float

    def __post_init__(self):
        object.__setattr__(self, "reactant_order", _norm_order(self.reactant_order))
        object.__setattr__(self, "product_order", _norm_order(self.product_order))
        if self.reactant_order == 0.0 and self.product_order == 0.0:
            raise ValidationError(["bond pair (0, 0) is not a bond"])

    @property
    def changed(self) -> bool:
        return self.reactant_order != self.product_order


class ItsGraph(LabeledGraph):
    """Labeled graph whose every edge label is a :class:`BondPair`.

    Structural validity (bond pairs, no (0,0) edges) is enforced here; being a
    usable reaction instance additionally requires connectivity and a nonempty
    reaction center, which the pipeline entry points check.
    """

    def __init__(self, nodes, edges=()):
        super().__init__(nodes, edges)
        for u, v, lab in self.edges():
            if not isinstance(lab, BondPair):
                raise ValidationError(
                    [f"edge ({u}, {v}) label {lab!r} is not a bond order pair"]
                )


#: Atom-atom map: bijection from reactant node ids to product node ids.
AtomAtomMap = Mapping[int, int]


def compose_its(
    reactants: LabeledGraph, products: LabeledGraph, atom_map: AtomAtomMap
) -> ItsGraph:
    """Superimpose reactant and product graphs along a label-preserving bijection.

    The result lives on the reactant node ids. An edge is present when either
    side has it; its bond pair takes the order from each side, with 0 standing
    for absence.
    """
    violations = []
    if sorted(atom_map.keys()) != list(reactants.node_ids):
        violations.append("atom map domain differs from reactant nodes")
    values = list(atom_map.values())
    if sorted(values) != list(products.node_ids) or len(set(values)) != len(values):
        violations.append("atom map is not a bijection onto product nodes")
    if not violations:
        for r, p in atom_map.items():
            if reactants.label(r) != products.label(p):
                violations.append(f"atom map does not preserve the label of node {r}")
    if violations:
        raise ValidationError(violations)

    edges: dict[Edge, BondPair] = {}
    for u, v, order in reactants.edges():
        pu, pv = atom_map[u], atom_map[v]
        if products.has_edge(pu, pv):
            pair = BondPair(order, products.edge_label(pu, pv))
        else:
            pair = BondPair(order, 0.0)
        edges[ordered_edge(u, v)] = pair
    inverse = {p: r for r, p in atom_map.items()}
    for pu, pv, order in products.edges():
        e = ordered_edge(inverse[pu], inverse[pv])
        if e not in edges:
            edges[e] = BondPair(0.0, order)
    return ItsGraph(
        list(reactants.nodes()), [(u, v, lab) for (u, v), lab in edges.items()]
    )


def decompose_its(its: ItsGraph) -> tuple[LabeledGraph, LabeledGraph]:
    """Split a transition-state graph back into (reactants, products).

    Both sides keep the full node set; each keeps the edges with a positive
    order on its side, labeled with that order.
    """
    nodes = list(its.nodes())
    r_edges = [
        (u, v, lab.reactant_order) for u, v, lab in its.edges() if lab.reactant_order > 0
    ]
    p_edges = [
        (u, v, lab.product_order) for u, v, lab in its.edges() if lab.product_order > 0
    ]
    return LabeledGraph(nodes, r_edges), LabeledGraph(nodes, p_edges)


def reaction_center(its: LabeledGraph) -> frozenset[Edge]:
    """The edges whose reactant and product bond orders differ."""
    return frozenset(
        ordered_edge(u, v) for u, v, lab in its.edges() if lab.changed
    )


def require_reaction_instance(its: ItsGraph) -> frozenset[Edge]:
    """Check instance-level validity and return the reaction center edges."""
    center = reaction_center(its)
    violations = []
    if not center:
        violations.append("no reaction: every bond pair is unchanged")
    if not is_connected(its) or its.n_nodes == 0:
        violations.append("reaction instance must be a connected nonempty graph")
    if violations:
        raise ValidationError(violations)
    return center


@dataclass(frozen=True)
class ReactionRule:
    """Rewrite rule over a shared node set: bond orders before and after.

    ``left`` and ``right`` map node pairs to positive bond orders; a pair
    present on one side only is a breaking or forming bond. Node labels may
    use the wildcard element ``"*"``.
    """

    nodes: tuple[tuple[int, NodeLabel], ...]
    left: Mapping[Edge, float]
    right: Mapping[Edge, float]

    def __post_init__(self):
        ids = {nid for nid, _ in self.nodes}
        left = {ordered_edge(u, v): _norm_order(o) for (u, v), o in self.left.items()}
        right = {ordered_edge(u, v): _norm_order(o) for (u, v), o in self.right.items()}
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        for side in (left, right):
            for (u, v), o in side.items():
                if u not in ids or v not in ids:
                    raise ValidationError([f"rule edge ({u}, {v}) references unknown node"])
                if o <= 0:
                    raise ValidationError([f"rule edge ({u}, {v}) needs a positive order"])
        if not self.changed_pairs():
            raise ValidationError(["rule changes no bond"])

    def changed_pairs(self) -> list[Edge]:
        pairs = set(self.left) | set(self.right)
        return sorted(
            p for p in pairs if self.left.get(p, 0.0) != self.right.get(p, 0.0)
        )

    def left_graph(self) -> LabeledGraph:
        """The pattern to embed into reactants: all rule nodes, left-side edges."""
        return LabeledGraph(
            self.nodes, [(u, v, o) for (u, v), o in sorted(self.left.items())]
        )

    def center_graph(self) -> ItsGraph:
        """The changing bonds as a graph, for comparing against reaction centers."""
        pairs = {
            p: BondPair(self.left.get(p, 0.0), self.right.get(p, 0.0))
            for p in self.changed_pairs()
        }
        touched = sorted({n for p in pairs for n in p})
        labels = dict(self.nodes)
        return ItsGraph(
            [(n, labels[n]) for n in touched],
            [(u, v, lab) for (u, v), lab in pairs.items()],
        )


def apply_rule(
    rule: ReactionRule,
    reactants: LabeledGraph,
    max_candidates: int | None = None,
) -> list[ItsGraph]:
    """Generate candidate reactions by embedding the rule into the reactants.

    Every monomorphism of the rule's left side (exact element, charge, and
    bond-order match; forming pairs must land on non-adjacent atoms) yields a
    candidate: unmatched reactant bonds keep their order on both sides, while
    matched pairs take the rule's before/after orders. Candidates must come
    out connected, and isomorphic duplicates are dropped. Order of results is
    deterministic.
    """
    pattern = rule.left_graph()
    keys = sorted(nid for nid, _ in rule.nodes)
    embeddings = sorted(
        iter_embeddings(pattern, reactants),
        key=lambda m: tuple(m[k] for k in keys),
    )
    forming = [
        p for p in rule.changed_pairs() if rule.left.get(p, 0.0) == 0.0
    ]
    out: list[ItsGraph] = []
    for m in embeddings:
        if any(reactants.has_edge(m[u], m[v]) for u, v in forming):
            continue
        mapped: dict[Edge, Edge] = {}
        for p in set(rule.left) | set(rule.right):
            u, v = p
            mapped[ordered_edge(m[u], m[v])] = p
        edges: list[tuple[int, int, BondPair]] = []
        for u, v, order in reactants.edges():
            p = mapped.get(ordered_edge(u, v))
            if p is None:
                edges.append((u, v, BondPair(order, order)))
            else:
                edges.append((u, v, BondPair(rule.left.get(p, 0.0), rule.right.get(p, 0.0))))
        for p in forming:
            u, v = p
            edges.append((m[u], m[v], BondPair(0.0, rule.right[p])))
        candidate = ItsGraph(list(reactants.nodes()), edges)
        if not is_connected(candidate) or candidate.n_nodes == 0:
            continue  # spectator components cannot join a reaction instance
        if any(are_isomorphic(candidate, seen) for seen in out):
            continue
        out.append(candidate)
        if max_candidates is not None and len(out) >= max_candidates:
            break
    return out


@dataclass(frozen=True)
class RootedSearchSpace:
    """Node-induced search space equivalent to edge-induced search on the instance.

    ``base`` is the line graph of the instance with the reaction-center nodes
    contracted into ``root``; ``back_map`` sends every base node to the
    instance edge (or, for the root, edge set) it represents.
    """

    its: ItsGraph
    base: LabeledGraph
    root: int
    back_map: GraphMapping
    center_edges: frozenset[Edge]


def build_search_space(its: ItsGraph) -> RootedSearchSpace:
    """Line-graph construction: rooted node sets of ``base`` are explanations.

    Every connected node set of ``base`` containing ``root`` corresponds to a
    connected edge set of the instance containing the whole reaction center.
    """
    center = require_reaction_instance(its)
    lg, line_map = line_graph(its)
    edge_to_node = {e: n for n, e in line_map.node_map.items()}
    center_nodes = frozenset(edge_to_node[e] for e in center)
    try:
        base, cmap = contract(lg, center_nodes)
    except GraphError as exc:
        raise GraphError(
            "reaction center does not induce a connected subgraph; "
            "multi-component centers are not supported"
        ) from exc
    (root,) = [n for n, src in cmap.node_map.items() if len(src) > 1 or src == center_nodes]
    node_map: dict[int, object] = {}
    for n, src in cmap.node_map.items():
        if n == root:
            node_map[n] = center
        else:
            (line_node,) = src
            node_map[n] = line_map.node_map[line_node]
    return RootedSearchSpace(
        its=its,
        base=base,
        root=root,
        back_map=GraphMapping(node_map=node_map, edge_map={}),
        center_edges=center,
    )


def expand_explanation(space: RootedSearchSpace, node_set: Iterable[int]) -> frozenset[Edge]:
    """Map a rooted search-space node set back to the instance edge set it names."""
    s = frozenset(node_set)
    if space.root not in s:
        raise GraphError("search-space node set must contain the root")
    edges = set(space.center_edges)
    for n in s:
        if n == space.root:
            continue
        edges.add(space.back_map.node_map[n])
    return frozenset(edges)
