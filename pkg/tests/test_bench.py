import csv
import math
import random

import pytest

from pi_explain.bench import (
    BENCH_CSV_HEADER,
    BenchRow,
    bench_extensions,
    bench_one,
    count_extensions,
    random_connected_graph,
    random_spanning_tree,
)
from pi_explain.extension_dag import count_rooted_connected
from pi_explain.graphs import is_connected
from pi_explain.io import write_csv

from conftest import complete_graph, path_graph


def test_spanning_tree_is_a_tree():
    rng = random.Random(0)
    for n in (1, 2, 3, 7, 12):
        edges = random_spanning_tree(n, rng)
        assert len(edges) == max(0, n - 1)
        if n > 0:
            from conftest import graph_from_edges

            assert is_connected(graph_from_edges(n, edges))


def test_random_graph_hits_target_degree():
    rng = random.Random(1)
    g = random_connected_graph(20, 3.0, rng)
    assert is_connected(g)
    assert abs(2 * g.n_edges / g.n_nodes - 3.0) < 0.2


def test_generator_is_deterministic():
    a = random_connected_graph(10, 2.5, random.Random("seed"))
    b = random_connected_graph(10, 2.5, random.Random("seed"))
    assert a == b


def test_paths_count_linear():
    for n in (2, 5, 9, 14):
        count, truncated = count_extensions(path_graph(n), root=0)
        assert count == n and not truncated


def test_complete_graph_count():
    for n in (2, 4, 6):
        count, _ = count_extensions(complete_graph(n), root=0)
        assert count == 2 ** (n - 1)


def test_cap_truncates_row():
    count, truncated = count_extensions(complete_graph(10), root=0, cap=100)
    assert truncated and count == 100
    row = bench_one(12, 11.0, seed=0, cap=50)
    assert row.truncated and row.n_extensions == 50


def test_bench_rows_deterministic_and_bounded():
    rows = bench_extensions([6, 8], [2.0, 3.0], seeds=2, cap=10**6)
    again = bench_extensions([6, 8], [2.0, 3.0], seeds=2, cap=10**6)
    assert len(rows) == 8
    for r, r2 in zip(rows, again):
        assert (r.n_nodes, r.mean_degree, r.n_extensions, r.seed) == (
            r2.n_nodes,
            r2.mean_degree,
            r2.n_extensions,
            r2.seed,
        )
        assert r.n_extensions <= 2**r.n_nodes


def test_bench_csv_round_trip(tmp_path):
    rows = bench_extensions([5], [2.0], seeds=1)
    path = tmp_path / "bench.csv"
    write_csv(path, BENCH_CSV_HEADER, [r.as_csv_row() for r in rows])
    with open(path) as handle:
        records = list(csv.DictReader(handle))
    assert len(records) == 1
    assert int(records[0]["n_nodes"]) == 5
    assert int(records[0]["n_extensions"]) == rows[0].n_extensions


def test_degree3_growth_is_superlinear_in_log():
    # mirrors the harness-shape criterion at reduced scale
    import numpy as np

    ns = list(range(10, 15))
    means = []
    for n in ns:
        counts = [bench_one(n, 3.0, seed, cap=10**6).n_extensions for seed in range(3)]
        means.append(sum(counts) / len(counts))
    slope = np.polyfit(ns, [math.log2(m) for m in means], 1)[0]
    assert slope > 0.3
