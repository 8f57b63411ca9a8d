import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pi_explain.errors import CapExceededError, GraphError
from pi_explain.extension_dag import (
    EnumState,
    brute_force_dag,
    build_extension_dag,
    count_rooted_connected,
    dag_to_dot,
    enumerate_rooted_connected,
    is_existing_extension,
    is_valid_extension,
)
from pi_explain.graphs import induced_subgraph, is_connected

from conftest import complete_graph, cycle_graph, path_graph, random_connected, star_graph


def assert_same_dag(a, b):
    assert a.node_sets == b.node_sets
    assert a.edges == b.edges


def test_path_rooted_at_end_is_a_chain():
    p3 = path_graph(3)
    dag = build_extension_dag(p3, 0)
    assert dag.node_sets == {
        frozenset({0}),
        frozenset({0, 1}),
        frozenset({0, 1, 2}),
    }
    assert dag.n_edges == 2


def test_star_rooted_at_center():
    dag = build_extension_dag(star_graph(3), 0)
    # one node set per leaf subset; the cover relation drops one leaf at a
    # time, giving sum(k * C(3, k)) = 12 edges
    assert dag.n_nodes == 8 and dag.n_edges == 12
    assert_same_dag(dag, brute_force_dag(star_graph(3), 0))


def test_single_node():
    g = path_graph(1)
    dag = build_extension_dag(g, 0)
    assert dag.n_nodes == 1 and dag.n_edges == 0
    assert dag.source == dag.sink == frozenset({0})


def test_cycle_c4_count():
    # oracle-computed: subsets of C4 containing node 0 that stay connected
    # are {0}, {0,1}, {0,3}, {0,1,2}, {0,1,3}, {0,2,3}, and the full set
    dag = build_extension_dag(cycle_graph(4), 0)
    bf = brute_force_dag(cycle_graph(4), 0)
    assert dag.n_nodes == bf.n_nodes == 7
    assert_same_dag(dag, bf)


def test_complete_graph_counts():
    for n in (2, 3, 4, 5):
        dag = build_extension_dag(complete_graph(n), 0)
        assert dag.n_nodes == 2 ** (n - 1)


def test_errors():
    from pi_explain.graphs import LabeledGraph
    from pi_explain.graphs import NodeLabel

    two = LabeledGraph([(0, NodeLabel("C")), (1, NodeLabel("C"))])
    with pytest.raises(GraphError):
        build_extension_dag(two, 0)  # disconnected
    with pytest.raises(GraphError):
        build_extension_dag(path_graph(3), 99)
    with pytest.raises(CapExceededError):
        brute_force_dag(path_graph(3), 0, max_nodes=2)


def test_stream_agrees_with_dag(rng):
    for _ in range(20):
        g = random_connected(rng.randint(1, 9), rng)
        root = rng.choice(g.node_ids)
        streamed = list(enumerate_rooted_connected(g, root))
        assert streamed[0] == frozenset({root})
        assert len(streamed) == len(set(streamed)), "duplicate emission"
        dag = build_extension_dag(g, root)
        assert set(streamed) == dag.node_sets


def test_cover_relation_sound_and_complete(rng):
    for _ in range(15):
        g = random_connected(rng.randint(2, 8), rng)
        root = rng.choice(g.node_ids)
        dag = build_extension_dag(g, root)
        for a, b in dag.edges:
            assert b < a and len(a - b) == 1
            assert is_connected(induced_subgraph(g, b))
        node_list = sorted(dag.node_sets, key=len)
        for a in node_list:
            for w in a:
                if w == root:
                    continue
                b = a - {w}
                if b in dag.node_sets:
                    assert (a, b) in dag.edges


def test_unique_source_and_sink(rng):
    for _ in range(10):
        g = random_connected(rng.randint(2, 8), rng)
        root = rng.choice(g.node_ids)
        dag = build_extension_dag(g, root)
        incoming = {s: 0 for s in dag.node_sets}
        outgoing = {s: 0 for s in dag.node_sets}
        for a, b in dag.edges:
            outgoing[a] += 1
            incoming[b] += 1
        sources = [s for s in dag.node_sets if incoming[s] == 0]
        sinks = [s for s in dag.node_sets if outgoing[s] == 0]
        assert sources == [dag.source]
        assert sinks == [dag.sink]


def test_matches_brute_force_on_random_graphs():
    rng = random.Random(99)
    for _ in range(60):
        g = random_connected(rng.randint(1, 10), rng)
        root = rng.choice(g.node_ids)
        assert_same_dag(build_extension_dag(g, root), brute_force_dag(g, root))


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_matches_brute_force_property(data):
    n = data.draw(st.integers(min_value=1, max_value=9))
    seed = data.draw(st.integers(min_value=0, max_value=10**6))
    rng = random.Random(seed)
    g = random_connected(n, rng)
    root = rng.choice(g.node_ids)
    assert_same_dag(build_extension_dag(g, root), brute_force_dag(g, root))


def test_node_count_bound(rng):
    for _ in range(10):
        g = random_connected(rng.randint(1, 10), rng)
        dag = build_extension_dag(g, g.node_ids[0])
        assert dag.n_nodes <= 2 ** (g.n_nodes - 1)


def test_count_cap():
    with pytest.raises(CapExceededError):
        count_rooted_connected(complete_graph(6), 0, cap=10)
    assert count_rooted_connected(complete_graph(6), 0) == 32


def test_valid_extension_unit():
    state = EnumState(chosen=(0,), candidates=frozenset({1, 2}), dist={0: 0, 1: 1, 2: 1}, parent={1: 0, 2: 0})
    # deeper than the last added node: always a new extension
    assert is_valid_extension(state, 1)
    state2 = EnumState(
        chosen=(0, 2),
        candidates=frozenset({1, 2, 3}),
        dist={0: 0, 1: 1, 2: 1, 3: 2},
        parent={1: 0, 2: 0, 3: 2},
    )
    # same depth as the last added but smaller index: the set {0,1,2} belongs
    # to the branch that chose 1 first
    assert is_existing_extension(state2, 1)
    assert not is_valid_extension(state2, 1)
    assert is_valid_extension(state2, 3)
    # missing distance entry is an internal error
    with pytest.raises(RuntimeError):
        is_valid_extension(state2, 77)


def test_dot_export_highlights_endpoints():
    dag = build_extension_dag(path_graph(3), 0)
    dot = dag_to_dot(dag)
    assert dot.startswith("digraph")
    assert dot.count("->") == dag.n_edges
    assert "#cfe8ff" in dot and "#d9f2d9" in dot
