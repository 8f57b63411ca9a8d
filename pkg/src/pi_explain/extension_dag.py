"""Rooted connected subgraph enumeration and the extension DAG.

The extension DAG is the Hasse diagram of the node sets of a base graph that
contain a chosen root and induce a connected subgraph, ordered by inclusion.
DAG edges point from a set to each immediate subset (one node smaller). For a
connected base there is a unique source (the full node set) and a unique sink
(the root singleton).

Construction adapts a reverse-search, linear-delay enumeration of connected
induced subgraphs: nodes get ascending integer indices (0 at the root, then
BFS order with ties broken by input id), and an extension is accepted as new
exactly when the canonical-parent rule below says so; otherwise it only adds
a cover edge to a set generated elsewhere. The recursion is run on an
explicit stack, with per-branch copies of the distance and parent tables.

A subset-enumeration brute force builds the same DAG by definition and serves
as the correctness oracle for small bases.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .errors import CapExceededError, GraphError
from .graphs import LabeledGraph, is_connected, is_connected_set

NodeSet = frozenset[int]


@dataclass
class EnumState:
    """Mutable state of one enumeration branch.

    ``chosen`` lists the picked nodes in order (root first); ``candidates``
    holds every node adjacent to a chosen one; ``dist`` and ``parent`` record,
    for each known node, its depth in the traversal tree and the node that
    first exposed it.
    """

    chosen: tuple[int, ...]
    candidates: frozenset[int]
    dist: dict[int, int]
    parent: dict[int, int | None]

    @property
    def root(self) -> int:
        return self.chosen[0]

    @property
    def last_added(self) -> int:
        return self.chosen[-1]


def is_existing_extension(state: EnumState, v: int) -> bool:
    """True when extending by ``v`` reproduces a set generated on another branch."""
    x = state.last_added
    return state.dist[v] != state.dist[x] or v <= x


def is_valid_extension(state: EnumState, v: int) -> bool:
    """Canonical-parent test: does this branch own the set ``chosen + {v}``?

    Three-branch rule: a node ordered before the root is never valid; a node
    strictly deeper than the last added one always is; otherwise validity is
    the negation of :func:`is_existing_extension`.
    """
    if v < state.root:
        return False
    if v not in state.dist:
        raise RuntimeError(f"candidate {v} missing from distance table")
    if state.dist[v] > state.dist[state.last_added]:
        return True
    return not is_existing_extension(state, v)


@dataclass(frozen=True)
class ExtensionDag:
    """Hasse diagram of rooted connected node sets of ``base``.

    ``edges`` contains pairs ``(a, b)`` with ``b`` an immediate subset of
    ``a``. ``successors`` maps each set to its immediate subsets.
    """

    base: LabeledGraph
    root_id: int
    node_sets: frozenset[NodeSet]
    edges: frozenset[tuple[NodeSet, NodeSet]]
    successors: dict[NodeSet, tuple[NodeSet, ...]] = field(repr=False, compare=False)

    @staticmethod
    def from_parts(
        base: LabeledGraph,
        root_id: int,
        node_sets: set[NodeSet],
        edges: set[tuple[NodeSet, NodeSet]],
    ) -> "ExtensionDag":
        succ: dict[NodeSet, list[NodeSet]] = {s: [] for s in node_sets}
        for a, b in edges:
            succ[a].append(b)
        ordered = {
            s: tuple(sorted(succ[s], key=sorted)) for s in node_sets
        }
        return ExtensionDag(
            base=base,
            root_id=root_id,
            node_sets=frozenset(node_sets),
            edges=frozenset(edges),
            successors=ordered,
        )

    @property
    def source(self) -> NodeSet:
        return frozenset(self.base.node_ids)

    @property
    def sink(self) -> NodeSet:
        return frozenset({self.root_id})

    @property
    def n_nodes(self) -> int:
        return len(self.node_sets)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def sorted_node_sets(self) -> list[NodeSet]:
        return sorted(self.node_sets, key=lambda s: (len(s), sorted(s)))


def _bfs_index(base: LabeledGraph, root: int) -> list[int]:
    """Nodes in BFS order from the root, ties broken by node id."""
    dist = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for v in base.neighbors(u):
            if v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return sorted(dist, key=lambda n: (dist[n], n))


def _check_base(base: LabeledGraph, root: int) -> None:
    if not base.has_node(root):
        raise GraphError(f"root {root} is not a node of the base graph")
    if not is_connected(base):
        raise GraphError("base graph must be connected")


def _walk(
    base: LabeledGraph, root: int
) -> Iterator[tuple[str, NodeSet, NodeSet]]:
    """Drive the reverse-search enumeration, emitting DAG construction events.

    Events are ``("node", new_set, parent_set)`` when a set is generated for
    the first time and ``("edge", superset, subset)`` for cover edges found on
    non-canonical branches. The root singleton is emitted first.
    """
    _check_base(base, root)
    order = _bfs_index(base, root)
    index_of = {nid: i for i, nid in enumerate(order)}
    adj: list[tuple[int, ...]] = [
        tuple(sorted(index_of[w] for w in base.neighbors(nid))) for nid in order
    ]

    def to_ids(s: frozenset[int]) -> NodeSet:
        return frozenset(order[i] for i in s)

    root_set = frozenset({root})
    yield "node", root_set, frozenset()

    dist = {0: 0}
    parent: dict[int, int | None] = {0: None}
    for c in adj[0]:
        dist[c] = 1
        parent[c] = 0
    state = EnumState(
        chosen=(0,), candidates=frozenset(adj[0]), dist=dist, parent=parent
    )

    # frame: (state, chosen-as-set, pending candidate list, cursor)
    stack: list[list] = [[state, frozenset({0}), sorted(state.candidates), 0]]
    while stack:
        frame = stack[-1]
        st, chosen_set, pending, cursor = frame
        if cursor >= len(pending):
            stack.pop()
            continue
        frame[3] += 1
        v = pending[cursor]
        if is_valid_extension(st, v):
            fresh = [u for u in adj[v] if u not in st.candidates and u not in chosen_set]
            dist2 = dict(st.dist)
            parent2 = dict(st.parent)
            for u in fresh:
                dist2[u] = st.dist[v] + 1
                parent2[u] = v
            chosen2 = st.chosen + (v,)
            chosen_set2 = chosen_set | {v}
            cand2 = st.candidates | frozenset(fresh)
            yield "node", to_ids(chosen_set2), to_ids(chosen_set)
            st2 = EnumState(chosen=chosen2, candidates=cand2, dist=dist2, parent=parent2)
            stack.append([st2, chosen_set2, sorted(cand2 - chosen_set2), 0])
        elif is_existing_extension(st, v):
            yield "edge", to_ids(chosen_set | {v}), to_ids(chosen_set)


def build_extension_dag(base: LabeledGraph, root: int) -> ExtensionDag:
    """Construct the full extension DAG of ``base`` rooted at ``root``."""
    node_sets: set[NodeSet] = set()
    edges: set[tuple[NodeSet, NodeSet]] = set()
    for kind, a, b in _walk(base, root):
        if kind == "node":
            node_sets.add(a)
            if b:
                edges.add((a, b))
        else:
            edges.add((a, b))
    return ExtensionDag.from_parts(base, root, node_sets, edges)


def enumerate_rooted_connected(base: LabeledGraph, root: int) -> Iterator[NodeSet]:
    """Stream every rooted connected node set exactly once, root singleton first."""
    for kind, a, _ in _walk(base, root):
        if kind == "node":
            yield a


def count_rooted_connected(base: LabeledGraph, root: int, cap: int | None = None) -> int:
    """Number of rooted connected node sets; raises once ``cap`` is passed."""
    n = 0
    for _ in enumerate_rooted_connected(base, root):
        n += 1
        if cap is not None and n > cap:
            raise CapExceededError(f"extension count exceeded cap {cap}")
    return n


def brute_force_dag(base: LabeledGraph, root: int, max_nodes: int = 16) -> ExtensionDag:
    """Reference construction by filtering all subsets that contain the root.

    Guaranteed correct by definition; refuses bases above ``max_nodes``.
    """
    _check_base(base, root)
    if base.n_nodes > max_nodes:
        raise CapExceededError(
            f"brute-force DAG limited to {max_nodes} nodes, got {base.n_nodes}"
        )
    others = [n for n in base.node_ids if n != root]
    node_sets: set[NodeSet] = set()
    for k in range(len(others) + 1):
        for combo in itertools.combinations(others, k):
            s = frozenset((root, *combo))
            if is_connected_set(base, s):
                node_sets.add(s)
    edges: set[tuple[NodeSet, NodeSet]] = set()
    for a in node_sets:
        for w in a:
            if w == root:
                continue
            b = a - {w}
            if b in node_sets:
                edges.add((a, b))
    return ExtensionDag.from_parts(base, root, node_sets, edges)


def dag_to_dot(dag: ExtensionDag, name: str = "extension_dag") -> str:
    """GraphViz rendering: node labels are the sets, source and sink highlighted."""
    def fmt(s: NodeSet) -> str:
        return "{" + ",".join(str(i) for i in sorted(s)) + "}"

    ids = {s: f"n{i}" for i, s in enumerate(dag.sorted_node_sets())}
    lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=box];"]
    for s in dag.sorted_node_sets():
        attrs = [f'label="{fmt(s)}"']
        if s == dag.source:
            attrs.append('style=filled fillcolor="#cfe8ff"')
        if s == dag.sink:
            attrs.append('style=filled fillcolor="#d9f2d9"')
        lines.append(f"  {ids[s]} [{' '.join(attrs)}];")
    for a, b in sorted(dag.edges, key=lambda ab: (sorted(ab[0]), sorted(ab[1]))):
        lines.append(f"  {ids[a]} -> {ids[b]};")
    lines.append("}")
    return "\n".join(lines) + "\n"
