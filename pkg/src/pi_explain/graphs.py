"""Labeled undirected graph substrate.

Simple graphs (no self-loops, no parallel edges) with hashable node and edge
labels. Molecular graphs label nodes with :class:`NodeLabel` and edges with a
bond order; derived graphs (line graphs, contractions) carry composite labels.
Graphs are immutable after construction and safe to share across threads; all
operations here are pure functions.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Hashable, Iterable, Iterator

from .errors import GraphError

Edge = tuple[int, int]


def ordered_edge(u: int, v: int) -> Edge:
    """Normalize an undirected edge to its (min, max) representation."""
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True, order=True)
class NodeLabel:
    """Atom label: chemical element symbol plus formal charge.

    The element ``"*"`` is a wildcard that matches any element, meaningful
    only in pattern graphs.
    """

    element: str
    charge: int = 0

    def __post_init__(self):
        if not self.element:
            raise GraphError("element symbol must be nonempty")

    def matches(self, other: "NodeLabel", *, ignore_charge: bool = False) -> bool:
        """Pattern match against a concrete label; ``self`` may be a wildcard."""
        if self.element != "*" and self.element != other.element:
            return False
        return ignore_charge or self.charge == other.charge


@dataclass(frozen=True)
class LineNodeLabel:
    """Label of a line-graph node: the source edge's label plus both endpoint labels."""

    edge_label: Any
    endpoint_labels: tuple

    @staticmethod
    def of(edge_label, label_a, label_b) -> "LineNodeLabel":
        ends = tuple(sorted((label_a, label_b), key=repr))
        return LineNodeLabel(edge_label, ends)


@dataclass(frozen=True)
class ContractedNodeLabel:
    """Label of a node produced by contracting a connected node set."""

    merged_labels: tuple


class LabeledGraph:
    """Undirected simple graph with labels on nodes and edges.

    Node ids are small integers, unique but not necessarily dense. Edges are
    stored once in (min, max) orientation.
    """

    __slots__ = ("_labels", "_adj", "_edge_labels", "_node_ids")

    def __init__(
        self,
        nodes: Iterable[tuple[int, Hashable]],
        edges: Iterable[tuple[int, int, Hashable]] = (),
    ):
        labels: dict[int, Hashable] = {}
        for nid, lab in nodes:
            if nid in labels:
                raise GraphError(f"duplicate node id {nid}")
            labels[int(nid)] = lab
        edge_labels: dict[Edge, Hashable] = {}
        adj: dict[int, set[int]] = {nid: set() for nid in labels}
        for u, v, lab in edges:
            if u == v:
                raise GraphError(f"self-loop at node {u}")
            if u not in labels or v not in labels:
                raise GraphError(f"edge ({u}, {v}) references unknown node")
            e = ordered_edge(u, v)
            if e in edge_labels:
                raise GraphError(f"parallel edge ({u}, {v})")
            edge_labels[e] = lab
            adj[u].add(v)
            adj[v].add(u)
        self._labels = labels
        self._edge_labels = edge_labels
        self._adj = {nid: tuple(sorted(nb)) for nid, nb in adj.items()}
        self._node_ids = tuple(sorted(labels))

    # construction helpers ------------------------------------------------

    def _replace(self, nodes, edges) -> "LabeledGraph":
        """Build a graph of the same class from explicit node/edge iterables."""
        return type(self)(nodes, edges)

    # basic accessors ------------------------------------------------------

    @property
    def node_ids(self) -> tuple[int, ...]:
        return self._node_ids

    @property
    def n_nodes(self) -> int:
        return len(self._labels)

    @property
    def n_edges(self) -> int:
        return len(self._edge_labels)

    def label(self, nid: int) -> Hashable:
        try:
            return self._labels[nid]
        except KeyError:
            raise GraphError(f"unknown node id {nid}") from None

    def has_node(self, nid: int) -> bool:
        return nid in self._labels

    def neighbors(self, nid: int) -> tuple[int, ...]:
        try:
            return self._adj[nid]
        except KeyError:
            raise GraphError(f"unknown node id {nid}") from None

    def degree(self, nid: int) -> int:
        return len(self.neighbors(nid))

    def has_edge(self, u: int, v: int) -> bool:
        return ordered_edge(u, v) in self._edge_labels

    def edge_label(self, u: int, v: int) -> Hashable:
        try:
            return self._edge_labels[ordered_edge(u, v)]
        except KeyError:
            raise GraphError(f"unknown edge ({u}, {v})") from None

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self._edge_labels)

    def edges(self) -> Iterator[tuple[int, int, Hashable]]:
        for (u, v) in sorted(self._edge_labels):
            yield u, v, self._edge_labels[(u, v)]

    def nodes(self) -> Iterator[tuple[int, Hashable]]:
        for nid in self._node_ids:
            yield nid, self._labels[nid]

    # equality is structural: same ids, labels and labeled edges
    def __eq__(self, other):
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return (
            self._labels == other._labels and self._edge_labels == other._edge_labels
        )

    def __hash__(self):
        return hash(
            (
                tuple(sorted(self._labels.items(), key=lambda kv: kv[0])),
                tuple(sorted(self._edge_labels.items(), key=lambda kv: kv[0])),
            )
        )

    def __repr__(self):
        return f"{type(self).__name__}(|V|={self.n_nodes}, |E|={self.n_edges})"


@dataclass(frozen=True)
class GraphMapping:
    """Correspondence between a derived graph and its source.

    ``node_map`` sends every derived node id to its source counterpart: an
    edge for line graphs, a frozen node set for contractions. ``edge_map``
    records which source edge a kept derived edge came from.
    """

    node_map: dict = field(default_factory=dict)
    edge_map: dict = field(default_factory=dict)

    def source_of(self, nid: int):
        return self.node_map[nid]


# operations ----------------------------------------------------------------


def induced_subgraph(g: LabeledGraph, node_set: Iterable[int]) -> LabeledGraph:
    """Restrict ``g`` to ``node_set``, keeping all edges inside the set."""
    s = frozenset(node_set)
    for nid in s:
        if not g.has_node(nid):
            raise GraphError(f"unknown node id {nid}")
    nodes = [(nid, g.label(nid)) for nid in sorted(s)]
    edges = [(u, v, lab) for u, v, lab in g.edges() if u in s and v in s]
    return g._replace(nodes, edges)


def edge_subgraph(g: LabeledGraph, edge_set: Iterable[Edge]) -> LabeledGraph:
    """Subgraph made of the given edges and exactly their endpoints."""
    s = frozenset(ordered_edge(u, v) for u, v in edge_set)
    for e in s:
        if e not in g.edge_set():
            raise GraphError(f"unknown edge {e}")
    touched = sorted({n for e in s for n in e})
    nodes = [(nid, g.label(nid)) for nid in touched]
    edges = [(u, v, g.edge_label(u, v)) for u, v in sorted(s)]
    return g._replace(nodes, edges)


def connected_components(g: LabeledGraph) -> list[frozenset[int]]:
    seen: set[int] = set()
    comps = []
    for start in g.node_ids:
        if start in seen:
            continue
        comp = {start}
        queue = [start]
        while queue:
            u = queue.pop()
            for v in g.neighbors(u):
                if v not in comp:
                    comp.add(v)
                    queue.append(v)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected(g: LabeledGraph) -> bool:
    """True iff ``g`` has at most one connected component (empty graph counts)."""
    if g.n_nodes <= 1:
        return True
    return len(connected_components(g)) == 1


def is_connected_set(g: LabeledGraph, node_set: Iterable[int]) -> bool:
    """True iff the induced subgraph on ``node_set`` is connected (or empty)."""
    s = frozenset(node_set)
    if len(s) <= 1:
        return True
    start = next(iter(s))
    comp = {start}
    queue = [start]
    while queue:
        u = queue.pop()
        for v in g.neighbors(u):
            if v in s and v not in comp:
                comp.add(v)
                queue.append(v)
    return len(comp) == len(s)


def line_graph(g: LabeledGraph) -> tuple[LabeledGraph, GraphMapping]:
    """Edge-to-node dual of ``g``.

    The output has one node per edge of ``g``, adjacent iff the source edges
    share an endpoint. Node ids follow the sorted edge order of ``g`` and the
    returned mapping records the node-to-edge correspondence.
    """
    src_edges = sorted(g.edge_set())
    node_map = dict(enumerate(src_edges))
    index = {e: i for i, e in node_map.items()}
    nodes = [
        (i, LineNodeLabel.of(g.edge_label(u, v), g.label(u), g.label(v)))
        for i, (u, v) in node_map.items()
    ]
    edges = []
    incident: dict[int, list[int]] = {nid: [] for nid in g.node_ids}
    for i, (u, v) in node_map.items():
        incident[u].append(i)
        incident[v].append(i)
    for shared in incident.values():
        for a_pos in range(len(shared)):
            for b_pos in range(a_pos + 1, len(shared)):
                edges.append((*ordered_edge(shared[a_pos], shared[b_pos]), None))
    # two source edges can share both endpoints only in a multigraph, so the
    # pair list has no duplicates; still dedupe defensively by dict
    dedup = {(u, v): lab for u, v, lab in edges}
    out = LabeledGraph(nodes, [(u, v, lab) for (u, v), lab in dedup.items()])
    return out, GraphMapping(node_map=node_map, edge_map={})


def contract(g: LabeledGraph, node_set: Iterable[int]) -> tuple[LabeledGraph, GraphMapping]:
    """Merge a connected node set into one fresh node.

    Self-loops arising from the merge are dropped. Parallel edges to the same
    outside node are merged keeping the representative whose source endpoint
    pair is smallest, recorded in the mapping's ``edge_map``.
    """
    s = frozenset(node_set)
    if not s:
        raise GraphError("cannot contract an empty node set")
    for nid in s:
        if not g.has_node(nid):
            raise GraphError(f"unknown node id {nid}")
    if not is_connected_set(g, s):
        raise GraphError("contracted node set must induce a connected subgraph")
    fresh = max(g.node_ids) + 1
    merged_label = ContractedNodeLabel(tuple(sorted((g.label(n) for n in sorted(s)), key=repr)))
    nodes = [(nid, g.label(nid)) for nid in g.node_ids if nid not in s]
    nodes.append((fresh, merged_label))
    node_map: dict[int, frozenset[int]] = {
        nid: frozenset({nid}) for nid in g.node_ids if nid not in s
    }
    node_map[fresh] = s
    kept: dict[Edge, Edge] = {}
    edges = []
    for u, v, lab in g.edges():
        inside_u, inside_v = u in s, v in s
        if inside_u and inside_v:
            continue
        if not inside_u and not inside_v:
            kept[(u, v)] = (u, v)
            edges.append((u, v, lab))
            continue
        outside = v if inside_u else u
        e_out = ordered_edge(fresh, outside)
        if e_out in kept:
            continue  # first representative wins; edges() iterates in sorted order
        kept[e_out] = (u, v)
        edges.append((*e_out, lab))
    out = LabeledGraph(nodes, edges)
    return out, GraphMapping(node_map=node_map, edge_map=kept)
