"""Shared builders and independent oracles for the test suite."""

from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from pi_explain.graphs import LabeledGraph, NodeLabel, ordered_edge
from pi_explain.reaction import BondPair, ItsGraph

C = NodeLabel("C")


def graph_from_edges(n, edges, labels=None, edge_label=1.0):
    labels = labels or {}
    nodes = [(i, labels.get(i, C)) for i in range(n)]
    return LabeledGraph(nodes, [(u, v, edge_label) for u, v in edges])


def path_graph(n):
    return graph_from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves):
    return graph_from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n):
    return graph_from_edges(n, list(itertools.combinations(range(n), 2)))


def from_networkx(g: nx.Graph) -> LabeledGraph:
    mapping = {node: i for i, node in enumerate(sorted(g.nodes()))}
    nodes = [(i, C) for i in range(g.number_of_nodes())]
    edges = [(*ordered_edge(mapping[u], mapping[v]), 1.0) for u, v in g.edges()]
    return LabeledGraph(nodes, edges)


def atlas_connected(max_nodes=7, max_edges=None):
    """Every connected graph up to isomorphism with the given size bounds."""
    out = []
    for g in nx.graph_atlas_g():
        if g.number_of_nodes() < 1 or g.number_of_nodes() > max_nodes:
            continue
        if max_edges is not None and g.number_of_edges() > max_edges:
            continue
        if nx.is_connected(g):
            out.append(from_networkx(g))
    return out


def random_connected(n, rng, max_degree=4, extra_edge_prob=0.3):
    """Random connected graph: random tree plus extra degree-capped edges."""
    nodes = list(range(n))
    edges = set()
    degree = {i: 0 for i in nodes}
    order = nodes[1:]
    rng.shuffle(order)
    attached = [0]
    for v in order:
        u = rng.choice(attached)
        edges.add(ordered_edge(u, v))
        degree[u] += 1
        degree[v] += 1
        attached.append(v)
    for u, v in itertools.combinations(nodes, 2):
        if (u, v) in edges:
            continue
        if degree[u] >= max_degree or degree[v] >= max_degree:
            continue
        if rng.random() < extra_edge_prob:
            edges.add((u, v))
            degree[u] += 1
            degree[v] += 1
    return graph_from_edges(n, sorted(edges))


# independent matching oracle --------------------------------------------------


def brute_force_monomorphisms(pattern: LabeledGraph, host: LabeledGraph):
    """All injective maps preserving labels/adjacency, by exhaustive permutation."""
    p_nodes = sorted(pattern.node_ids)
    results = []
    for image in itertools.permutations(sorted(host.node_ids), len(p_nodes)):
        m = dict(zip(p_nodes, image))
        ok = True
        for p in p_nodes:
            pl, hl = pattern.label(p), host.label(m[p])
            if isinstance(pl, NodeLabel) and isinstance(hl, NodeLabel):
                if not pl.matches(hl):
                    ok = False
                    break
            elif pl != hl:
                ok = False
                break
        if not ok:
            continue
        for u, v, lab in pattern.edges():
            if not host.has_edge(m[u], m[v]):
                ok = False
                break
            if lab is not None and host.edge_label(m[u], m[v]) != lab:
                ok = False
                break
        if ok:
            results.append(m)
    return results


def brute_force_connected_edge_sets(g: LabeledGraph, anchor_edge):
    """All edge sets containing the anchor whose edge subgraph is connected."""
    from pi_explain.graphs import edge_subgraph, is_connected

    anchor = ordered_edge(*anchor_edge)
    others = sorted(e for e in g.edge_set() if e != anchor)
    out = set()
    for k in range(len(others) + 1):
        for combo in itertools.combinations(others, k):
            s = frozenset((anchor, *combo))
            if is_connected(edge_subgraph(g, s)):
                out.add(s)
    return out


# reaction instances -----------------------------------------------------------

ELEMENTS = ("C", "C", "C", "N", "O", "S")


def random_its(rng, n_min=4, n_max=8) -> ItsGraph:
    """Random connected instance with a nonempty connected reaction center."""
    n = rng.randint(n_min, n_max)
    base = random_connected(n, rng, max_degree=4, extra_edge_prob=0.2)
    nodes = [(i, NodeLabel(rng.choice(ELEMENTS))) for i in base.node_ids]
    edges = []
    changed = []
    for u, v, _ in base.edges():
        order = rng.choice((1.0, 1.0, 2.0))
        edges.append([u, v, BondPair(order, order)])
    # flip one edge to a breaking bond, then let its neighbors change too so
    # the center stays connected
    idx = rng.randrange(len(edges))
    u, v, pair = edges[idx]
    edges[idx][2] = BondPair(pair.reactant_order, 0.0)
    changed.append((u, v))
    for i, (a, b, p) in enumerate(edges):
        if i != idx and (a in (u, v) or b in (u, v)) and rng.random() < 0.3:
            edges[i][2] = BondPair(0.0, p.product_order)
    return ItsGraph(nodes, [tuple(e) for e in edges])


@pytest.fixture
def rng():
    return random.Random(20240811)
