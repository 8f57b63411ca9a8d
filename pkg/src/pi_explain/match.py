"""Labeled subgraph matching and isomorphism checking.

Matching uses monomorphism semantics: every pattern edge must map onto a host
edge, while the host may carry extra edges between matched nodes. Node labels
match via :meth:`NodeLabel.matches` (so a pattern element ``"*"`` is a
wildcard); other label types compare by equality. Edge labels compare by
equality unless the pattern label is ``None`` (wildcard) or a predicate is
supplied.
"""

from __future__ import annotations

from collections import Counter
from typing import Callable, Iterator, Optional

from .errors import GraphError
from .graphs import LabeledGraph, NodeLabel, connected_components, induced_subgraph, is_connected

EdgeLabelPredicate = Callable[[object, object], bool]


def _default_edge_predicate(pattern_label, host_label) -> bool:
    return pattern_label is None or pattern_label == host_label


def _node_compatible(pattern_label, host_label, exact: bool, ignore_charge: bool) -> bool:
    if isinstance(pattern_label, NodeLabel) and isinstance(host_label, NodeLabel):
        if exact:
            if ignore_charge:
                return pattern_label.element == host_label.element
            return pattern_label == host_label
        return pattern_label.matches(host_label, ignore_charge=ignore_charge)
    return pattern_label == host_label


def _match_component(
    pattern: LabeledGraph,
    order: list[int],
    host: LabeledGraph,
    used: set[int],
    assignment: dict[int, int],
    edge_pred: EdgeLabelPredicate,
    exact: bool,
    ignore_charge: bool,
) -> Iterator[dict[int, int]]:
    """Backtracking extension of ``assignment`` over ``order`` (connected pattern)."""
    depth = len([p for p in order if p in assignment])
    if depth == len(order):
        yield dict(assignment)
        return
    p = order[depth]
    # candidates: neighbors of already-mapped neighbors, or any free host node
    # for the component's first vertex
    mapped_nb = [q for q in pattern.neighbors(p) if q in assignment]
    if mapped_nb:
        cands = set(host.neighbors(assignment[mapped_nb[0]]))
        for q in mapped_nb[1:]:
            cands &= set(host.neighbors(assignment[q]))
        candidates = sorted(cands)
    else:
        candidates = list(host.node_ids)
    for h in candidates:
        if h in used:
            continue
        if not _node_compatible(pattern.label(p), host.label(h), exact, ignore_charge):
            continue
        ok = True
        for q in mapped_nb:
            if not host.has_edge(h, assignment[q]):
                ok = False
                break
            if not edge_pred(pattern.edge_label(p, q), host.edge_label(h, assignment[q])):
                ok = False
                break
        if not ok:
            continue
        assignment[p] = h
        used.add(h)
        yield from _match_component(
            pattern, order, host, used, assignment, edge_pred, exact, ignore_charge
        )
        del assignment[p]
        used.discard(h)


def _component_order(pattern: LabeledGraph, comp: frozenset[int]) -> list[int]:
    """DFS order over one pattern component so each node follows a mapped neighbor."""
    start = min(comp)
    order = [start]
    seen = {start}
    stack = [start]
    while stack:
        u = stack.pop()
        for v in pattern.neighbors(u):
            if v in comp and v not in seen:
                seen.add(v)
                order.append(v)
                stack.append(v)
    return order


def iter_embeddings(
    pattern: LabeledGraph,
    host: LabeledGraph,
    edge_label_predicate: Optional[EdgeLabelPredicate] = None,
    *,
    exact_labels: bool = False,
    ignore_charge: bool = False,
) -> Iterator[dict[int, int]]:
    """Yield injective label-compatible maps of ``pattern`` into ``host``.

    Handles disconnected patterns by matching one component at a time under a
    shared injectivity constraint. Order of results is not specified; use
    :func:`find_subgraph_isomorphisms` for the deterministic variant.
    """
    if pattern.n_nodes == 0:
        yield {}
        return
    if pattern.n_nodes > host.n_nodes or pattern.n_edges > host.n_edges:
        return
    edge_pred = edge_label_predicate or _default_edge_predicate
    comps = sorted(connected_components(pattern), key=lambda c: (-len(c), min(c)))
    orders = [_component_order(pattern, c) for c in comps]

    used: set[int] = set()
    assignment: dict[int, int] = {}

    def rec(ci: int) -> Iterator[dict[int, int]]:
        if ci == len(orders):
            yield dict(assignment)
            return
        for _ in _match_component(
            pattern, orders[ci], host, used, assignment, edge_pred, exact_labels, ignore_charge
        ):
            # the suspended generator holds this component's entries in
            # assignment/used; recurse into the next component while they
            # are live and let the generator undo them on resume
            yield from rec(ci + 1)

    yield from rec(0)


def has_embedding(
    pattern: LabeledGraph,
    host: LabeledGraph,
    edge_label_predicate: Optional[EdgeLabelPredicate] = None,
    *,
    exact_labels: bool = False,
    ignore_charge: bool = False,
) -> bool:
    for _ in iter_embeddings(
        pattern,
        host,
        edge_label_predicate,
        exact_labels=exact_labels,
        ignore_charge=ignore_charge,
    ):
        return True
    return False


def find_subgraph_isomorphisms(
    pattern: LabeledGraph,
    host: LabeledGraph,
    edge_label_predicate: Optional[EdgeLabelPredicate] = None,
    *,
    ignore_charge: bool = False,
) -> list[dict[int, int]]:
    """All monomorphisms of a connected ``pattern`` into ``host``.

    Results are sorted lexicographically by the host ids assigned to the
    pattern nodes in ascending pattern-id order.
    """
    if not is_connected(pattern):
        raise GraphError("pattern must be connected; use iter_embeddings for unions")
    maps = list(
        iter_embeddings(pattern, host, edge_label_predicate, ignore_charge=ignore_charge)
    )
    keys = sorted(pattern.node_ids)
    maps.sort(key=lambda m: tuple(m[k] for k in keys))
    return maps


def _label_multiset(g: LabeledGraph) -> Counter:
    return Counter(lab for _, lab in g.nodes())


def are_isomorphic(a: LabeledGraph, b: LabeledGraph, *, ignore_charge: bool = False) -> bool:
    """True iff a label- and adjacency-preserving bijection ``a -> b`` exists.

    Labels compare exactly (a wildcard element only equals another wildcard).
    Works on disconnected graphs as well.
    """
    if a.n_nodes != b.n_nodes or a.n_edges != b.n_edges:
        return False
    if not ignore_charge and _label_multiset(a) != _label_multiset(b):
        return False
    if sorted(a.degree(n) for n in a.node_ids) != sorted(b.degree(n) for n in b.node_ids):
        return False
    # an injective monomorphism between graphs of equal node and edge counts
    # is necessarily an isomorphism
    return has_embedding(a, b, exact_labels=True, ignore_charge=ignore_charge)


def count_extra_atoms(
    obtained: LabeledGraph, embedding: dict[int, int]
) -> tuple[int, int]:
    """(extra carbons, extra non-carbons) of ``obtained`` outside the matched image."""
    image = set(embedding.values())
    extra_c = 0
    extra_other = 0
    for nid, lab in obtained.nodes():
        if nid in image:
            continue
        element = lab.element if isinstance(lab, NodeLabel) else str(lab)
        if element == "C":
            extra_c += 1
        else:
            extra_other += 1
    return extra_c, extra_other


def split_components(g: LabeledGraph) -> list[LabeledGraph]:
    """The connected components of ``g`` as separate graphs (ids preserved)."""
    return [induced_subgraph(g, comp) for comp in sorted(connected_components(g), key=min)]
