"""Empirical complexity harness for rooted connected subgraph enumeration.

Generates random connected graphs at prescribed sizes and mean degrees, runs
the enumerator from node 0, and records extension counts and wall time. A
hard cap aborts runaway rows safely; all randomness is seeded and recorded.
"""

from __future__ import annotations

import heapq
import random
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import CapExceededError
from .graphs import LabeledGraph, NodeLabel, ordered_edge
from .extension_dag import enumerate_rooted_connected

DEFAULT_EXTENSION_CAP = 10**7

BENCH_CSV_HEADER = ("n_nodes", "mean_degree", "n_extensions", "wall_time", "seed", "truncated")


@dataclass(frozen=True)
class BenchRow:
    n_nodes: int
    mean_degree: float
    n_extensions: int
    wall_time: float
    seed: int
    truncated: bool = False

    def as_csv_row(self):
        return (
            self.n_nodes,
            f"{self.mean_degree:.4f}",
            self.n_extensions,
            f"{self.wall_time:.6f}",
            self.seed,
            int(self.truncated),
        )


def random_spanning_tree(n: int, rng: random.Random) -> list[tuple[int, int]]:
    """Uniform random labeled tree on ``n`` nodes via a Pruefer sequence."""
    if n <= 1:
        return []
    if n == 2:
        return [(0, 1)]
    seq = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for node in seq:
        degree[node] += 1
    edges = []
    leaves = [i for i in range(n) if degree[i] == 1]
    heapq.heapify(leaves)
    for node in seq:
        leaf = heapq.heappop(leaves)
        edges.append(ordered_edge(leaf, node))
        degree[node] -= 1
        if degree[node] == 1:
            heapq.heappush(leaves, node)
    u = heapq.heappop(leaves)
    v = heapq.heappop(leaves)
    edges.append(ordered_edge(u, v))
    return edges


def random_connected_graph(
    n: int, mean_degree: float, rng: random.Random, max_degree: int | None = None
) -> LabeledGraph:
    """Random spanning tree plus uniform extra edges up to the target mean degree."""
    edges = set(random_spanning_tree(n, rng))
    target_edges = max(n - 1, round(n * mean_degree / 2))
    target_edges = min(target_edges, n * (n - 1) // 2)
    degree = {i: 0 for i in range(n)}
    for u, v in edges:
        degree[u] += 1
        degree[v] += 1
    candidates = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if (u, v) not in edges
    ]
    rng.shuffle(candidates)
    for u, v in candidates:
        if len(edges) >= target_edges:
            break
        if max_degree is not None and (degree[u] >= max_degree or degree[v] >= max_degree):
            continue
        edges.add((u, v))
        degree[u] += 1
        degree[v] += 1
    nodes = [(i, NodeLabel("C")) for i in range(n)]
    return LabeledGraph(nodes, [(u, v, 1.0) for u, v in sorted(edges)])


def count_extensions(base: LabeledGraph, root: int = 0, cap: int | None = None) -> tuple[int, bool]:
    """Count rooted connected extensions; returns (count, truncated-at-cap)."""
    n = 0
    for _ in enumerate_rooted_connected(base, root):
        n += 1
        if cap is not None and n >= cap:
            return n, True
    return n, False


def bench_extensions(
    node_counts: Iterable[int],
    degree_targets: Iterable[float],
    seeds: Sequence[int] | int,
    cap: int = DEFAULT_EXTENSION_CAP,
) -> list[BenchRow]:
    """One row per (node count, degree target, seed), in deterministic order."""
    node_counts = list(node_counts)
    degree_targets = list(degree_targets)
    seed_list = list(range(seeds)) if isinstance(seeds, int) else list(seeds)
    if not node_counts or not degree_targets or not seed_list:
        raise CapExceededError("bench needs nonempty node, degree, and seed ranges")
    rows = []
    for n in node_counts:
        for d in degree_targets:
            for seed in seed_list:
                rows.append(bench_one(n, d, seed, cap=cap))
    return rows


def bench_one(n: int, degree_target: float, seed: int, cap: int = DEFAULT_EXTENSION_CAP) -> BenchRow:
    rng = random.Random(f"{seed}:{n}:{degree_target}")
    base = random_connected_graph(n, degree_target, rng)
    started = time.perf_counter()
    count, truncated = count_extensions(base, root=0, cap=cap)
    elapsed = time.perf_counter() - started
    return BenchRow(
        n_nodes=n,
        mean_degree=2 * base.n_edges / base.n_nodes if base.n_nodes else 0.0,
        n_extensions=count,
        wall_time=elapsed,
        seed=seed,
        truncated=truncated,
    )
