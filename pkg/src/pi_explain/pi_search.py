"""Prime-implicant explanation search over an extension DAG.

A decision function labels rooted connected subgraphs 0 or 1, with the full
instance labeled 1. The minimally sufficient subgraphs are those whose every
rooted connected supergraph within the instance is also labeled 1, and which
are inclusion-minimal with that property. The pruned traversal walks the
extension DAG from the full instance downward: positive sets expose their
immediate subsets, a negative set takes its whole descendant cone out of the
running, and the sinks of what remains are the explanations.

Because feasibility-style properties are not monotone, no shortcut over the
lattice is available; the brute-force checker below evaluates the definition
directly and is the oracle the traversal is tested against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Optional, Sequence

from .classifier import DecisionFunction
from .errors import NotExplainedError, ValidationError
from .extension_dag import ExtensionDag, NodeSet, build_extension_dag
from .graphs import Edge, LabeledGraph, edge_subgraph
from .reaction import ItsGraph, RootedSearchSpace, build_search_space, expand_explanation

DecideFn = Callable[[NodeSet], int]
DecideBatchFn = Callable[[Sequence[NodeSet]], Sequence[int]]


@dataclass(frozen=True)
class Explanation:
    """One minimal sufficient subgraph, in search-space and instance terms.

    ``dag_node`` is the search-space node set; ``its_edges`` the instance
    edge set it expands to (``None`` when the search ran on a bare DAG with
    no instance attached); ``label`` the class being explained.
    """

    dag_node: NodeSet
    its_edges: Optional[frozenset[Edge]] = None
    label: int = 1

    def sort_key(self):
        edges = sorted(self.its_edges) if self.its_edges is not None else []
        return (len(self.dag_node), len(edges), edges, sorted(self.dag_node))


@dataclass(frozen=True)
class SearchReport:
    """Result of one explanation search, with call accounting.

    ``decisions`` memoizes every scored search-space set; sets that were
    pruned away unseen never appear in it.
    """

    explanations: tuple[Explanation, ...]
    classifier_calls: int
    dag_nodes_total: int
    dag_nodes_pruned: int
    decisions: Mapping[NodeSet, int] = field(repr=False)
    label: int = 1

    @property
    def sink_sets(self) -> list[NodeSet]:
        return [e.dag_node for e in self.explanations]

    @property
    def explanation_edge_sets(self) -> list[frozenset[Edge]]:
        return [e.its_edges for e in self.explanations if e.its_edges is not None]


def compute_pi_explanations(
    dag: ExtensionDag,
    decide: DecideFn,
    *,
    decide_batch: Optional[DecideBatchFn] = None,
    label: int = 1,
) -> SearchReport:
    """Pruned frontier traversal of the extension DAG.

    Each frontier round is scored as one batch (``decide_batch`` when given,
    elementwise ``decide`` otherwise); results do not depend on scoring order
    or batch size. Raises :class:`NotExplainedError` when the full instance
    itself is rejected.
    """
    if decide_batch is None:
        decide_batch = lambda sets: [decide(s) for s in sets]

    decisions: dict[NodeSet, int] = {}
    removed: set[NodeSet] = set()

    def remove_cone(start: NodeSet) -> None:
        # reachability over out-edges in the residual DAG at removal time
        stack = [start]
        removed.add(start)
        while stack:
            cur = stack.pop()
            for child in dag.successors[cur]:
                if child not in removed:
                    removed.add(child)
                    stack.append(child)

    frontier: set[NodeSet] = {dag.source}
    first_round = True
    while frontier:
        alive = sorted(
            (s for s in frontier if s not in removed and s not in decisions),
            key=lambda s: sorted(s),
        )
        verdicts = list(decide_batch(alive))
        if len(verdicts) != len(alive):
            raise ValidationError(["decision batch returned a mismatched length"])
        decisions.update(zip(alive, (int(v) for v in verdicts)))
        if first_round:
            if not alive or decisions[dag.source] != 1:
                raise NotExplainedError(
                    "the decision function rejects the full instance"
                )
            first_round = False
        next_frontier: set[NodeSet] = set()
        for s in alive:
            if decisions[s] == 1:
                next_frontier.update(dag.successors[s])
            elif s not in removed:
                remove_cone(s)
        frontier = next_frontier

    sinks = [
        s
        for s, verdict in decisions.items()
        if verdict == 1
        and s not in removed
        and all(child in removed for child in dag.successors[s])
    ]
    explanations = tuple(
        sorted((Explanation(dag_node=s, label=label) for s in sinks), key=Explanation.sort_key)
    )
    return SearchReport(
        explanations=explanations,
        classifier_calls=len(decisions),
        dag_nodes_total=dag.n_nodes,
        dag_nodes_pruned=len(removed),
        decisions=decisions,
        label=label,
    )


@lru_cache(maxsize=64)
def _superset_lists(dag: ExtensionDag) -> dict[NodeSet, tuple[NodeSet, ...]]:
    """Pairwise containment among DAG node sets, via bitmasks when ids allow."""
    nodes = sorted(dag.node_sets, key=lambda s: (len(s), sorted(s)))
    if dag.base.n_nodes <= 60:
        bit = {nid: 1 << i for i, nid in enumerate(dag.base.node_ids)}
        masks = [sum(bit[n] for n in s) for s in nodes]
        return {
            s: tuple(
                t for t, mt in zip(nodes, masks) if ms & mt == ms
            )
            for s, ms in zip(nodes, masks)
        }
    return {s: tuple(t for t in nodes if s <= t) for s in nodes}


def brute_force_pi(dag: ExtensionDag, decide: DecideFn) -> set[NodeSet]:
    """Definition-level check: keep the minimal sets all of whose supersets pass.

    A set qualifies iff every DAG node containing it (itself included) decides
    1; the result drops qualifying sets with a qualifying proper subset.
    Independent of the traversal above. The containment relation is cached per
    DAG so repeated decide tables stay cheap.
    """
    supersets = _superset_lists(dag)
    qualifying = {
        s for s in supersets if all(decide(t) == 1 for t in supersets[s])
    }
    return {
        s
        for s in qualifying
        if not any(t < s for t in qualifying)
    }


def explain_instance(
    its: ItsGraph,
    clf: DecisionFunction,
    threshold: Optional[float] = None,
    *,
    max_batch: int = 1024,
) -> SearchReport:
    """End-to-end pipeline: search space, extension DAG, pruned scored traversal.

    The classifier's verdict on the full instance is the class being
    explained; a subgraph decides 1 exactly when its thresholded score agrees
    with that verdict, so negative predictions are explained symmetrically.
    Frontier rounds are scored in batches of at most ``max_batch``; scores are
    cached per canonical subgraph serialization for the duration of the run.
    """
    from .io import canonical_key  # deferred: io imports reaction types

    threshold = clf.threshold if threshold is None else float(threshold)
    if not (0.0 < threshold < 1.0):
        raise ValidationError([f"threshold must lie in (0, 1), got {threshold}"])

    space: RootedSearchSpace = build_search_space(its)
    dag = build_extension_dag(space.base, space.root)

    score_cache: dict[str, float] = {}

    def scores_for(graphs: Sequence[LabeledGraph]) -> list[float]:
        keys = [canonical_key(g) for g in graphs]
        missing = [(k, g) for k, g in zip(keys, graphs) if k not in score_cache]
        for start in range(0, len(missing), max_batch):
            chunk = missing[start : start + max_batch]
            values = clf.score_batch([g for _, g in chunk])
            for (k, _), val in zip(chunk, values):
                score_cache[k] = float(val)
        return [score_cache[k] for k in keys]

    (instance_score,) = scores_for([its])
    instance_label = 1 if instance_score >= threshold else 0

    def subgraph_of(s: NodeSet) -> LabeledGraph:
        return edge_subgraph(its, expand_explanation(space, s))

    def decide_batch(sets: Sequence[NodeSet]) -> list[int]:
        values = scores_for([subgraph_of(s) for s in sets])
        return [
            1 if ((v >= threshold) == bool(instance_label)) else 0 for v in values
        ]

    report = compute_pi_explanations(
        dag,
        decide=lambda s: decide_batch([s])[0],
        decide_batch=decide_batch,
        label=instance_label,
    )
    explanations = tuple(
        sorted(
            (
                Explanation(
                    dag_node=e.dag_node,
                    its_edges=expand_explanation(space, e.dag_node),
                    label=instance_label,
                )
                for e in report.explanations
            ),
            key=Explanation.sort_key,
        )
    )
    return SearchReport(
        explanations=explanations,
        classifier_calls=report.classifier_calls,
        dag_nodes_total=report.dag_nodes_total,
        dag_nodes_pruned=report.dag_nodes_pruned,
        decisions=report.decisions,
        label=instance_label,
    )
