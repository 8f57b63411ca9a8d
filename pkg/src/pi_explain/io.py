"""Document formats, canonical serialization, DOT export, CSV schemas.

The instance document is JSON: ``nodes`` is a list of ``{id, element,
charge}`` records, ``edges`` a list of ``{u, v, order: [reactant, product]}``
records, plus optional ``name``/``source`` metadata. Canonical serialization
sorts nodes by id and edges by endpoint pair and is byte-stable, so it doubles
as a cache and table key. Plain molecular graphs and rewrite rules use the
same shape with scalar ``order`` respectively ``left``/``right`` fields.
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
from typing import Any, Iterable, Mapping

from .errors import ValidationError
from .graphs import LabeledGraph, NodeLabel, is_connected, ordered_edge
from .reaction import ALLOWED_ORDERS, BondPair, ItsGraph, ReactionRule


def _num(x: float):
    """Emit bond orders as ints when integral so documents stay tidy."""
    f = float(x)
    return int(f) if f.is_integer() else f


def _label_fields(label) -> tuple[str, int]:
    if isinstance(label, NodeLabel):
        return label.element, label.charge
    return str(label), 0


def graph_payload(g: LabeledGraph) -> dict:
    """JSON-ready document for any molecular or transition-state graph."""
    nodes = []
    for nid, label in g.nodes():
        element, charge = _label_fields(label)
        nodes.append({"id": nid, "element": element, "charge": charge})
    edges = []
    for u, v, lab in g.edges():
        if isinstance(lab, BondPair):
            order = [_num(lab.reactant_order), _num(lab.product_order)]
        else:
            order = [_num(lab), _num(lab)]
        edges.append({"u": u, "v": v, "order": order})
    return {"nodes": nodes, "edges": edges}


def its_document(its: LabeledGraph, name: str | None = None, source: str | None = None) -> dict:
    doc = graph_payload(its)
    meta = {}
    if name is not None:
        meta["name"] = name
    if source is not None:
        meta["source"] = source
    return {**meta, **doc}


def serialize_its(its: LabeledGraph, name: str | None = None, source: str | None = None) -> str:
    """Canonical, byte-stable text form of an instance document."""
    return json.dumps(its_document(its, name, source), indent=2, sort_keys=False) + "\n"


def canonical_key(g: LabeledGraph) -> str:
    """Compact canonical serialization used as a cache/table key."""
    return json.dumps(graph_payload(g), separators=(",", ":"), sort_keys=False)


def _load_doc(text_or_doc) -> Any:
    if isinstance(text_or_doc, (dict, list)):
        return text_or_doc
    try:
        return json.loads(text_or_doc)
    except json.JSONDecodeError as exc:
        raise ValidationError([f"malformed JSON: {exc}"]) from None


def _parse_nodes(doc, violations) -> list[tuple[int, NodeLabel]]:
    nodes = []
    seen = set()
    for rec in doc.get("nodes", []):
        try:
            nid = int(rec["id"])
            element = str(rec["element"])
            charge = int(rec.get("charge", 0))
        except (KeyError, TypeError, ValueError):
            violations.append(f"malformed node record {rec!r}")
            continue
        if nid in seen:
            violations.append(f"duplicate node id {nid}")
            continue
        if not element:
            violations.append(f"node {nid} has an empty element symbol")
            continue
        seen.add(nid)
        nodes.append((nid, NodeLabel(element, charge)))
    if not doc.get("nodes"):
        violations.append("document has no nodes")
    return nodes


def _check_endpoints(rec, ids, violations):
    try:
        u, v = int(rec["u"]), int(rec["v"])
    except (KeyError, TypeError, ValueError):
        violations.append(f"malformed edge record {rec!r}")
        return None
    if u == v:
        violations.append(f"self-loop at node {u}")
        return None
    missing = [x for x in (u, v) if x not in ids]
    if missing:
        violations.append(f"edge ({u}, {v}) references unknown node {missing[0]}")
        return None
    return u, v


def parse_its(text_or_doc) -> ItsGraph:
    """Parse and validate an instance document, reporting every violation."""
    doc = _load_doc(text_or_doc)
    violations: list[str] = []
    nodes = _parse_nodes(doc, violations)
    ids = {nid for nid, _ in nodes}
    edges = []
    seen_edges = set()
    for rec in doc.get("edges", []):
        endpoints = _check_endpoints(rec, ids, violations)
        if endpoints is None:
            continue
        u, v = endpoints
        order = rec.get("order")
        if not isinstance(order, (list, tuple)) or len(order) != 2:
            violations.append(f"edge ({u}, {v}) order must be a [reactant, product] pair")
            continue
        try:
            pair = BondPair(float(order[0]), float(order[1]))
        except (ValidationError, TypeError, ValueError):
            violations.append(
                f"edge ({u}, {v}) order {order!r} invalid: each side must be in "
                f"{sorted(ALLOWED_ORDERS)} and not both zero"
            )
            continue
        e = ordered_edge(u, v)
        if e in seen_edges:
            violations.append(f"duplicate edge ({u}, {v})")
            continue
        seen_edges.add(e)
        edges.append((u, v, pair))
    if violations:
        raise ValidationError(violations)
    its = ItsGraph(nodes, edges)
    if not is_connected(its):
        raise ValidationError(["graph is not connected"])
    return its


def parse_graph(text_or_doc) -> LabeledGraph:
    """Parse a plain molecular graph; scalar ``order`` defaults to a single bond."""
    doc = _load_doc(text_or_doc)
    violations: list[str] = []
    nodes = _parse_nodes(doc, violations)
    ids = {nid for nid, _ in nodes}
    edges = []
    seen_edges = set()
    for rec in doc.get("edges", []):
        endpoints = _check_endpoints(rec, ids, violations)
        if endpoints is None:
            continue
        u, v = endpoints
        order = rec.get("order", 1)
        if isinstance(order, (list, tuple)):
            violations.append(f"edge ({u}, {v}): molecular graphs take a scalar order")
            continue
        try:
            o = float(order)
        except (TypeError, ValueError):
            violations.append(f"edge ({u}, {v}) order {order!r} is not a number")
            continue
        if o not in ALLOWED_ORDERS or o == 0.0:
            violations.append(f"edge ({u}, {v}) order {order!r} must be a positive bond order")
            continue
        e = ordered_edge(u, v)
        if e in seen_edges:
            violations.append(f"duplicate edge ({u}, {v})")
            continue
        seen_edges.add(e)
        edges.append((u, v, o))
    if violations:
        raise ValidationError(violations)
    return LabeledGraph(nodes, edges)


def serialize_graph(g: LabeledGraph) -> str:
    nodes = []
    for nid, label in g.nodes():
        element, charge = _label_fields(label)
        nodes.append({"id": nid, "element": element, "charge": charge})
    edges = [{"u": u, "v": v, "order": _num(lab)} for u, v, lab in g.edges()]
    return json.dumps({"nodes": nodes, "edges": edges}, indent=2) + "\n"


def parse_rule(text_or_doc) -> ReactionRule:
    """Parse a rewrite rule: edges carry ``left``/``right`` orders (0 = absent)."""
    doc = _load_doc(text_or_doc)
    violations: list[str] = []
    nodes = _parse_nodes(doc, violations)
    ids = {nid for nid, _ in nodes}
    left: dict = {}
    right: dict = {}
    for rec in doc.get("edges", []):
        endpoints = _check_endpoints(rec, ids, violations)
        if endpoints is None:
            continue
        u, v = endpoints
        try:
            lo = float(rec.get("left", 0))
            ro = float(rec.get("right", 0))
        except (TypeError, ValueError):
            violations.append(f"rule edge ({u}, {v}) has non-numeric orders")
            continue
        for side, o in (("left", lo), ("right", ro)):
            if o not in ALLOWED_ORDERS:
                violations.append(f"rule edge ({u}, {v}) {side} order {o!r} not allowed")
        if lo == 0 and ro == 0:
            violations.append(f"rule edge ({u}, {v}) is absent on both sides")
            continue
        if lo > 0:
            left[ordered_edge(u, v)] = lo
        if ro > 0:
            right[ordered_edge(u, v)] = ro
    if violations:
        raise ValidationError(violations)
    try:
        return ReactionRule(nodes=tuple(nodes), left=left, right=right)
    except ValidationError:
        raise
    except ValueError as exc:
        raise ValidationError([str(exc)]) from None


# DOT export -----------------------------------------------------------------


def its_to_dot(its: LabeledGraph, name: str = "its") -> str:
    """GraphViz rendering: dotted edges break, dashed edges form."""
    lines = [f"graph {name} {{", "  node [shape=circle];"]
    for nid, label in its.nodes():
        element, charge = _label_fields(label)
        text = element if charge == 0 else f"{element}{charge:+d}"
        lines.append(f'  n{nid} [label="{text}"];')
    for u, v, lab in its.edges():
        if isinstance(lab, BondPair):
            style = "solid"
            if lab.reactant_order > lab.product_order:
                style = "dotted"
            elif lab.product_order > lab.reactant_order:
                style = "dashed"
            text = f"({_num(lab.reactant_order)},{_num(lab.product_order)})"
            lines.append(f'  n{u} -- n{v} [style={style} label="{text}"];')
        else:
            lines.append(f'  n{u} -- n{v} [label="{_num(lab)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# file helpers ----------------------------------------------------------------


def atomic_write(path: str | os.PathLike, text: str) -> None:
    """Write a file atomically (write to a temp sibling, then rename)."""
    directory = os.path.dirname(os.fspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_csv(path, header: Iterable[str], rows: Iterable[Iterable], comments: Iterable[str] = ()) -> None:
    """CSV with an optional block of ``#`` comment lines before the header."""
    import io as _io

    buf = _io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(header))
    for row in rows:
        writer.writerow(list(row))
    atomic_write(path, buf.getvalue())
