"""Measure how the number of rooted connected subgraphs grows with size.

Paths stay linear; anything with branching grows exponentially, which is why
explanation search is restricted to small instances. The harness generates
seeded random connected graphs at target mean degrees and counts extensions
under a hard cap.
"""

import math

import numpy as np

from pi_explain import bench_one
from pi_explain.bench import count_extensions
from pi_explain.graphs import LabeledGraph, NodeLabel

print("paths: count equals the number of nodes")
for n in (5, 10, 20, 40):
    path = LabeledGraph(
        [(i, NodeLabel("C")) for i in range(n)],
        [(i, i + 1, 1.0) for i in range(n - 1)],
    )
    count, _ = count_extensions(path, root=0)
    print(f"  n={n:3d}: {count}")

print("\nrandom graphs at mean degree 3 (5 seeds each):")
ns = list(range(10, 17))
mean_bits = []
for n in ns:
    counts = [bench_one(n, 3.0, seed).n_extensions for seed in range(5)]
    bits = [math.log2(c) for c in counts]
    mean_bits.append(float(np.mean(bits)))
    print(f"  n={n:2d}: counts {counts}  (~2^{np.mean(bits):.1f})")

slope = float(np.polyfit(ns, mean_bits, 1)[0])
print(f"\nleast-squares growth: {slope:.2f} bits per added node")

row = bench_one(14, 6.0, seed=0, cap=2000)
print(
    f"\ncap in action: n={row.n_nodes}, degree {row.mean_degree:.1f} -> "
    f"{row.n_extensions} extensions, truncated={row.truncated}"
)
