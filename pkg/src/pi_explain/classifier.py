"""Decision functions: batch scoring, built-in synthetic scorers, stdio plugins.

A decision function maps graphs to scores in [0, 1]; a score at or above the
threshold is a positive decision. Built-ins run in process. The ``external``
kind talks to a child process over a line-delimited JSON protocol: the plugin
first writes the handshake ``{"protocol": "pi-explain/1"}``, then answers each
``{"id", "graph"}`` request with an id-matched ``{"id", "score"}`` record.
"""

from __future__ import annotations

import json
import queue
import shlex
import subprocess
import threading
from dataclasses import dataclass
from typing import Mapping, Optional, Sequence

from .errors import ScoringError, ValidationError
from .graphs import LabeledGraph, NodeLabel
from .match import has_embedding

PROTOCOL_VERSION = "pi-explain/1"


class DecisionFunction:
    """Base class: a batch scorer plus a positive threshold."""

    kind = "builtin"

    def __init__(self, threshold: float = 0.5):
        if not (0.0 < threshold < 1.0):
            raise ValidationError([f"threshold must lie in (0, 1), got {threshold}"])
        self.threshold = float(threshold)

    def score_batch(self, graphs: Sequence[LabeledGraph]) -> list[float]:
        raise NotImplementedError

    def score(self, graph: LabeledGraph) -> float:
        return self.score_batch([graph])[0]

    def close(self) -> None:
        pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.close()
        return False


def classify_batch(clf: DecisionFunction, graphs: Sequence[LabeledGraph]) -> list[float]:
    """Score a batch, order-aligned with the input."""
    scores = list(clf.score_batch(graphs))
    if len(scores) != len(graphs):
        raise ScoringError(
            f"scorer returned {len(scores)} scores for {len(graphs)} graphs"
        )
    for s in scores:
        if not (0.0 <= float(s) <= 1.0):
            raise ScoringError(f"score {s!r} outside [0, 1]")
    return [float(s) for s in scores]


def decide(clf: DecisionFunction, graph: LabeledGraph) -> int:
    """Thresholded decision: 1 iff score >= threshold."""
    return 1 if clf.score(graph) >= clf.threshold else 0


# pattern specs ----------------------------------------------------------------


def parse_pattern_spec(spec: str) -> LabeledGraph:
    """Parse an element-adjacency pattern like ``"N-C"`` or ``"C1-O1,C1-N1"``.

    Atoms are element symbols (``*`` wildcard allowed) with an optional digit
    suffix to tell repeated elements apart; ``-`` joins adjacent atoms and
    ``,`` separates bonds. A lone atom (no ``-``) is a single-node pattern.
    """
    atoms: dict[str, int] = {}
    labels: dict[int, NodeLabel] = {}
    edges = []

    def atom_id(token: str) -> int:
        token = token.strip()
        element = token.rstrip("0123456789")
        if not element or not (element == "*" or element[0].isupper()):
            raise ValidationError([f"bad atom token {token!r} in pattern spec"])
        if token not in atoms:
            nid = len(atoms)
            atoms[token] = nid
            labels[nid] = NodeLabel(element)
        return atoms[token]

    for part in spec.split(","):
        part = part.strip()
        if not part:
            raise ValidationError([f"empty bond in pattern spec {spec!r}"])
        tokens = part.split("-")
        if len(tokens) == 1:
            atom_id(tokens[0])
            continue
        for a, b in zip(tokens, tokens[1:]):
            u, v = atom_id(a), atom_id(b)
            if u == v:
                raise ValidationError([f"bond {part!r} joins an atom to itself"])
            edges.append((u, v, None))
    dedup = {}
    for u, v, lab in edges:
        dedup[(min(u, v), max(u, v))] = lab
    return LabeledGraph(sorted(labels.items()), [(u, v, lab) for (u, v), lab in dedup.items()])


class PatternClassifier(DecisionFunction):
    """Scores high when the pattern embeds into the graph, low otherwise.

    Pattern node charges are ignored; pattern edges match any bond.
    """

    kind = "builtin-pattern"

    def __init__(
        self,
        pattern: LabeledGraph | str,
        positive_score: float = 1.0,
        base_score: float = 0.0,
        threshold: float = 0.5,
    ):
        super().__init__(threshold)
        self.pattern = parse_pattern_spec(pattern) if isinstance(pattern, str) else pattern
        for s in (positive_score, base_score):
            if not (0.0 <= s <= 1.0):
                raise ValidationError([f"score {s} outside [0, 1]"])
        self.positive_score = float(positive_score)
        self.base_score = float(base_score)

    def score_batch(self, graphs):
        return [
            self.positive_score
            if has_embedding(self.pattern, g, ignore_charge=True)
            else self.base_score
            for g in graphs
        ]


class SizeClassifier(DecisionFunction):
    """Accepts graphs with at least ``min_edges`` edges."""

    kind = "builtin-size"

    def __init__(self, min_edges: int, threshold: float = 0.5):
        super().__init__(threshold)
        self.min_edges = int(min_edges)

    def score_batch(self, graphs):
        return [1.0 if g.n_edges >= self.min_edges else 0.0 for g in graphs]


class TableClassifier(DecisionFunction):
    """Looks scores up by canonical graph serialization; missing keys score default."""

    kind = "builtin-table"

    def __init__(self, table: Mapping[str, float], default: float = 0.0, threshold: float = 0.5):
        super().__init__(threshold)
        self.table = dict(table)
        self.default = float(default)

    @classmethod
    def from_file(cls, path: str, threshold: float = 0.5) -> "TableClassifier":
        """Load ``{"scores": {key: score}, "default": s}`` (or a bare mapping)."""
        with open(path, encoding="utf-8") as handle:
            doc = json.load(handle)
        if not isinstance(doc, dict):
            raise ValidationError(["score table must be a JSON object"])
        table = doc.get("scores", doc)
        default = float(doc.get("default", 0.0)) if "scores" in doc else 0.0
        if not isinstance(table, dict):
            raise ValidationError(["'scores' must be a JSON object"])
        return cls(table, default=default, threshold=threshold)

    def score_batch(self, graphs):
        from .io import canonical_key

        return [self.table.get(canonical_key(g), self.default) for g in graphs]


class ExternalClassifier(DecisionFunction):
    """Child-process scorer speaking the line-delimited JSON protocol.

    The child is spawned lazily, handshakes once, then serves id-matched
    score requests; stdout is drained by a reader thread so batch collection
    can honor the timeout.
    """

    kind = "external"

    def __init__(self, command: str, threshold: float = 0.5, timeout: float = 30.0):
        super().__init__(threshold)
        self.command = command
        self.timeout = float(timeout)
        self._proc: Optional[subprocess.Popen] = None
        self._lines: "queue.Queue[Optional[str]]" = queue.Queue()
        self._counter = 0
        self._lock = threading.Lock()

    def _reader(self, stream):
        for line in stream:
            self._lines.put(line)
        self._lines.put(None)

    def _ensure_started(self):
        if self._proc is not None:
            return
        try:
            self._proc = subprocess.Popen(
                shlex.split(self.command),
                stdin=subprocess.PIPE,
                stdout=subprocess.PIPE,
                text=True,
                encoding="utf-8",
                bufsize=1,
            )
        except OSError as exc:
            raise ScoringError(f"cannot start external scorer: {exc}") from None
        threading.Thread(target=self._reader, args=(self._proc.stdout,), daemon=True).start()
        handshake = self._next_line("handshake")
        try:
            doc = json.loads(handshake)
        except json.JSONDecodeError:
            raise ScoringError(f"bad handshake line: {handshake!r}") from None
        if doc.get("protocol") != PROTOCOL_VERSION:
            raise ScoringError(
                f"plugin speaks {doc.get('protocol')!r}, expected {PROTOCOL_VERSION!r}"
            )

    def _next_line(self, what: str) -> str:
        try:
            line = self._lines.get(timeout=self.timeout)
        except queue.Empty:
            raise ScoringError(f"timed out waiting for {what} from external scorer") from None
        if line is None:
            code = self._proc.poll()
            raise ScoringError(
                f"external scorer exited (code {code}) while {what} was pending"
            )
        return line

    def score_batch(self, graphs):
        from .io import graph_payload

        with self._lock:
            self._ensure_started()
            ids = []
            for g in graphs:
                rid = f"q{self._counter}"
                self._counter += 1
                ids.append(rid)
                record = {"id": rid, "graph": graph_payload(g)}
                try:
                    self._proc.stdin.write(json.dumps(record, separators=(",", ":")) + "\n")
                except (BrokenPipeError, OSError):
                    code = self._proc.poll()
                    raise ScoringError(
                        f"external scorer closed its input (exit code {code})"
                    ) from None
            self._proc.stdin.flush()
            scores: dict[str, float] = {}
            pending = set(ids)
            while pending:
                line = self._next_line(f"{len(pending)} responses")
                try:
                    doc = json.loads(line)
                except json.JSONDecodeError:
                    raise ScoringError(f"malformed response line: {line!r}") from None
                if "error" in doc:
                    raise ScoringError(f"scorer error: {doc['error']!r} (id={doc.get('id')})")
                rid = doc.get("id")
                if rid not in pending:
                    raise ScoringError(f"response for unknown or duplicate id {rid!r}")
                score = doc.get("score")
                if not isinstance(score, (int, float)) or not (0.0 <= score <= 1.0):
                    raise ScoringError(f"score {score!r} for id {rid!r} outside [0, 1]")
                scores[rid] = float(score)
                pending.discard(rid)
            return [scores[rid] for rid in ids]

    def close(self):
        proc, self._proc = self._proc, None
        if proc is None:
            return
        try:
            if proc.stdin:
                proc.stdin.close()
            proc.wait(timeout=5)
        except (OSError, subprocess.TimeoutExpired):
            proc.kill()
            proc.wait()


def make_classifier(spec: str, threshold: float = 0.5) -> DecisionFunction:
    """Build a classifier from a CLI spec: ``pattern:``, ``size:``, ``table:``, ``external:``."""
    kind, sep, arg = spec.partition(":")
    if not sep or not arg:
        raise ValidationError([f"classifier spec {spec!r} must look like kind:argument"])
    if kind == "pattern":
        return PatternClassifier(arg, threshold=threshold)
    if kind == "size":
        try:
            return SizeClassifier(int(arg), threshold=threshold)
        except ValueError:
            raise ValidationError([f"size classifier needs an integer, got {arg!r}"]) from None
    if kind == "table":
        return TableClassifier.from_file(arg, threshold=threshold)
    if kind == "external":
        return ExternalClassifier(arg, threshold=threshold)
    raise ValidationError([f"unknown classifier kind {kind!r}"])
