"""Explanation quality rating on a 1 (perfect) to 6 (not an explanation) scale.

An obtained explanation is compared against the expected one: isomorphic is
perfect; otherwise the expected graph must embed into the obtained one and the
atoms outside the matched image are budgeted, carbons separately from
everything else. Atom counts, not bond counts, drive the category. When
several embeddings exist the one with the fewest (non-carbon, carbon) extras
is used. No embedding at all is the worst category.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import GraphError
from .graphs import LabeledGraph
from .match import are_isomorphic, count_extra_atoms, iter_embeddings
from .pi_search import SearchReport

#: (max extra carbons, max extra non-carbons) per category value 2..4;
#: category 2 admits carbons only, 5 catches every remaining supergraph case.
CATEGORY_BUDGETS = ((2, 3, 0), (3, 5, 1), (4, 8, 2))


@dataclass(frozen=True)
class Rating:
    """Category value plus the extra-atom counts and embedding that justify it."""

    value: int
    extra_carbons: int = 0
    extra_heteroatoms: int = 0
    subgraph_witness: Optional[dict] = None

    def __post_init__(self):
        if self.value not in range(1, 7):
            raise GraphError(f"rating value {self.value} outside 1..6")


def rate_explanation(obtained: LabeledGraph, expected: LabeledGraph) -> Rating:
    """Rate one explanation against the expected one."""
    if are_isomorphic(obtained, expected):
        witness = next(iter_embeddings(expected, obtained, exact_labels=True))
        return Rating(1, 0, 0, witness)
    best: tuple[int, int] | None = None
    best_map: Optional[dict] = None
    for emb in iter_embeddings(expected, obtained):
        extra_c, extra_other = count_extra_atoms(obtained, emb)
        key = (extra_other, extra_c)
        if best is None or key < best:
            best = key
            best_map = emb
    if best is None:
        return Rating(6)
    extra_other, extra_c = best
    for value, max_c, max_other in CATEGORY_BUDGETS:
        if extra_c <= max_c and extra_other <= max_other:
            return Rating(value, extra_c, extra_other, best_map)
    return Rating(5, extra_c, extra_other, best_map)


def best_rating(
    explanations: Sequence[LabeledGraph], expected: LabeledGraph
) -> tuple[Rating, LabeledGraph]:
    """The best-rated explanation; ties go to fewer edges, then edge order."""
    if not explanations:
        raise GraphError("cannot rate an empty explanation list")
    rated = [(rate_explanation(g, expected), g) for g in explanations]
    rated.sort(key=lambda rg: (rg[0].value, rg[1].n_edges, sorted(rg[1].edge_set())))
    return rated[0]


# statistics -------------------------------------------------------------------

#: Fixed power-of-two bins; the last bin is open-ended.
HISTOGRAM_EDGES = (0, 1, 2, 4, 8, 16, 32, 64, 128, 256, 512, 1024)


def _bin_label(lo: int, hi: Optional[int]) -> str:
    if hi is None:
        return f"{lo}+"
    if hi - lo == 1:
        return str(lo)
    return f"{lo}-{hi - 1}"


def histogram(values: Sequence[float]) -> tuple[tuple[str, int], ...]:
    """Counts per fixed bin: 0, 1, 2-3, 4-7, ..., 1024+."""
    edges = list(HISTOGRAM_EDGES)
    bins = []
    for lo, hi in zip(edges, edges[1:] + [None]):
        if hi is None:
            count = sum(1 for v in values if v >= lo)
        else:
            count = sum(1 for v in values if lo <= v < hi)
        bins.append((_bin_label(lo, hi), count))
    return tuple(bins)


@dataclass(frozen=True)
class DistSummary:
    median: float
    max_value: float
    bins: tuple[tuple[str, int], ...]

    @staticmethod
    def of(values: Sequence[float]) -> "DistSummary":
        if not values:
            return DistSummary(0.0, 0.0, histogram(()))
        arr = np.asarray(values, dtype=float)
        return DistSummary(float(np.median(arr)), float(arr.max()), histogram(values))


@dataclass(frozen=True)
class StatsSummary:
    """Per-corpus distributions of explanation counts, sizes, and classifier calls."""

    n_instances: int
    explanations_per_instance: DistSummary
    top_rated_size: DistSummary
    classifier_calls: DistSummary


def summarize(
    reports: Sequence[SearchReport],
    best: Optional[Sequence[tuple[Rating, LabeledGraph]]] = None,
) -> StatsSummary:
    """Aggregate search reports (and optionally best-rated picks) into distributions."""
    counts = [len(r.explanations) for r in reports]
    calls = [r.classifier_calls for r in reports]
    sizes = [g.n_edges for _, g in best] if best else []
    return StatsSummary(
        n_instances=len(reports),
        explanations_per_instance=DistSummary.of(counts),
        top_rated_size=DistSummary.of(sizes),
        classifier_calls=DistSummary.of(calls),
    )


def stats_csv_rows(summary: StatsSummary):
    """Long-format rows (metric, kind, key, value) for CSV emission."""
    rows = []
    for metric, dist in (
        ("explanations_per_instance", summary.explanations_per_instance),
        ("top_rated_size", summary.top_rated_size),
        ("classifier_calls", summary.classifier_calls),
    ):
        rows.append((metric, "summary", "median", dist.median))
        rows.append((metric, "summary", "max", dist.max_value))
        for label, count in dist.bins:
            rows.append((metric, "histogram", label, count))
    return rows
