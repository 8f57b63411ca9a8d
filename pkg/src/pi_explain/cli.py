"""Command-line interface.

Subcommands: ``explain`` (PI explanations for one instance), ``enumerate``
(rooted connected subgraph enumeration / extension DAG export), ``apply-rule``
(candidate reaction generation), ``rate`` (explanation quality), and ``bench``
(empirical complexity harness). Exit codes: 0 success, 1 validation error,
2 classifier failure, 3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import bench as bench_mod
from . import io as pio
from .classifier import make_classifier
from .errors import CapExceededError, GraphError, ScoringError, ValidationError
from .evaluation import DistSummary, StatsSummary, best_rating, rate_explanation, stats_csv_rows, summarize
from .extension_dag import build_extension_dag, dag_to_dot, enumerate_rooted_connected
from .graphs import edge_subgraph
from .pi_search import SearchReport, explain_instance
from .reaction import apply_rule

DEFAULT_MAX_NODES = 25

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CLASSIFIER = 2
EXIT_CAP = 3

RATINGS_CSV_HEADER = (
    "instance",
    "n_explanations",
    "classifier_calls",
    "dag_nodes_total",
    "dag_nodes_pruned",
    "best_rating",
    "best_size_edges",
    "extra_carbons",
    "extra_heteroatoms",
)


def _read(path: str) -> str:
    with open(path, encoding="utf-8") as handle:
        return handle.read()


def cmd_explain(args) -> int:
    its = pio.parse_its(_read(args.its))
    if its.n_nodes > args.max_nodes:
        raise CapExceededError(
            f"instance has {its.n_nodes} nodes, --max-nodes is {args.max_nodes}"
        )
    with make_classifier(args.classifier, threshold=args.threshold) as clf:
        report = explain_instance(its, clf, threshold=args.threshold)

    payload = {
        "instance": os.path.basename(args.its),
        "label": report.label,
        "threshold": args.threshold,
        "classifier": args.classifier,
        "n_explanations": len(report.explanations),
        "classifier_calls": report.classifier_calls,
        "dag_nodes_total": report.dag_nodes_total,
        "dag_nodes_pruned": report.dag_nodes_pruned,
        "explanations": [],
    }
    subgraphs = [edge_subgraph(its, e.its_edges) for e in report.explanations]
    for i, (exp, sub) in enumerate(zip(report.explanations, subgraphs)):
        payload["explanations"].append(
            {
                "file": f"explanation_{i:03d}.json",
                "n_edges": sub.n_edges,
                "edges": [list(e) for e in sorted(exp.its_edges)],
            }
        )
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        for entry, sub in zip(payload["explanations"], subgraphs):
            pio.atomic_write(out / entry["file"], pio.serialize_its(sub))
        pio.atomic_write(out / "report.json", json.dumps(payload, indent=2) + "\n")
        if args.dot:
            from .reaction import build_search_space

            space = build_search_space(its)
            dag = build_extension_dag(space.base, space.root)
            pio.atomic_write(out / "dag.dot", dag_to_dot(dag))
        print(f"wrote {len(subgraphs)} explanation(s) to {out}")
    else:
        if args.dot:
            from .reaction import build_search_space

            space = build_search_space(its)
            dag = build_extension_dag(space.base, space.root)
            sys.stdout.write(dag_to_dot(dag))
        print(json.dumps(payload, indent=2))
    return EXIT_OK


def cmd_enumerate(args) -> int:
    base = pio.parse_graph(_read(args.graph))
    if not base.has_node(args.root):
        raise ValidationError([f"root {args.root} is not a node of the graph"])
    if args.dag_out:
        dag = build_extension_dag(base, args.root)
        pio.atomic_write(args.dag_out, dag_to_dot(dag))
        print(f"{dag.n_nodes} subgraphs, {dag.n_edges} cover edges -> {args.dag_out}")
        return EXIT_OK
    if args.count_only:
        count = sum(1 for _ in enumerate_rooted_connected(base, args.root))
        print(count)
        return EXIT_OK
    for s in enumerate_rooted_connected(base, args.root):
        print(json.dumps(sorted(s)))
    return EXIT_OK


def cmd_apply_rule(args) -> int:
    rule = pio.parse_rule(_read(args.rule))
    reactants = pio.parse_graph(_read(args.reactants))
    candidates = apply_rule(rule, reactants, max_candidates=args.max_candidates)
    for its in candidates:
        print(pio.canonical_key(its))
    print(f"{len(candidates)} candidate(s)", file=sys.stderr)
    return EXIT_OK


def _rate_single(args) -> int:
    obtained = pio.parse_its(_read(args.obtained))
    expected = pio.parse_its(_read(args.expected))
    rating = rate_explanation(obtained, expected)
    print(
        json.dumps(
            {
                "rating": rating.value,
                "extra_carbons": rating.extra_carbons,
                "extra_heteroatoms": rating.extra_heteroatoms,
            }
        )
    )
    return EXIT_OK


def _instance_dirs(report_root: Path) -> list[Path]:
    if (report_root / "report.json").exists():
        return [report_root]
    dirs = [d for d in sorted(report_root.iterdir()) if (d / "report.json").exists()]
    if not dirs:
        raise ValidationError([f"no report.json found under {report_root}"])
    return dirs


def _rate_instance_dir(task) -> tuple:
    inst_dir_text, expected_dir_text = task
    inst_dir = Path(inst_dir_text)
    report_doc = json.loads(_read(inst_dir / "report.json"))
    expected_path = Path(expected_dir_text) / f"{inst_dir.name}.json"
    if not expected_path.exists():
        raise ValidationError([f"missing expected explanation {expected_path}"])
    expected = pio.parse_its(_read(expected_path))
    explanations = [
        pio.parse_its(_read(inst_dir / entry["file"]))
        for entry in report_doc["explanations"]
    ]
    if not explanations:
        raise ValidationError([f"{inst_dir} contains no explanations to rate"])
    rating, chosen = best_rating(explanations, expected)
    return (
        inst_dir.name,
        report_doc["n_explanations"],
        report_doc["classifier_calls"],
        report_doc["dag_nodes_total"],
        report_doc["dag_nodes_pruned"],
        rating.value,
        chosen.n_edges,
        rating.extra_carbons,
        rating.extra_heteroatoms,
    )


def _rate_batch(args) -> int:
    tasks = [
        (str(d), str(args.expected_dir)) for d in _instance_dirs(Path(args.report))
    ]
    if getattr(args, "jobs", 1) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_rate_instance_dir, tasks))
    else:
        rows = [_rate_instance_dir(t) for t in tasks]
    reports = [
        SearchReport(
            explanations=tuple(),
            classifier_calls=row[2],
            dag_nodes_total=row[3],
            dag_nodes_pruned=row[4],
            decisions={},
        )
        for row in rows
    ]

    pio.write_csv(args.csv, RATINGS_CSV_HEADER, rows)
    # counts and best sizes come from the report documents and rating rows,
    # not from rehydrated explanation objects
    summary = StatsSummary(
        n_instances=len(rows),
        explanations_per_instance=DistSummary.of([row[1] for row in rows]),
        top_rated_size=DistSummary.of([row[6] for row in rows]),
        classifier_calls=summarize(reports).classifier_calls,
    )
    summary_path = str(args.csv)
    summary_path = (
        summary_path[: -len(".csv")] + ".summary.csv"
        if summary_path.endswith(".csv")
        else summary_path + ".summary.csv"
    )
    pio.write_csv(
        summary_path,
        ("metric", "kind", "key", "value"),
        stats_csv_rows(summary),
        comments=[
            "histogram bins are fixed: 0, 1, 2-3, 4-7, ..., 512-1023, 1024+ (last bin open)",
        ],
    )
    print(f"rated {len(rows)} instance(s) -> {args.csv}, {summary_path}")
    return EXIT_OK


def cmd_rate(args) -> int:
    single = args.obtained or args.expected
    batch = args.report or args.expected_dir or args.csv
    if single and batch:
        raise ValidationError(["use either --obtained/--expected or --report/--expected-dir/--csv"])
    if single:
        if not (args.obtained and args.expected):
            raise ValidationError(["single mode needs both --obtained and --expected"])
        return _rate_single(args)
    if not (args.report and args.expected_dir and args.csv):
        raise ValidationError(["batch mode needs --report, --expected-dir and --csv"])
    return _rate_batch(args)


def _parse_node_range(text: str) -> list[int]:
    if ".." in text:
        lo, _, hi = text.partition("..")
        try:
            lo_i, hi_i = int(lo), int(hi)
        except ValueError:
            raise ValidationError([f"bad node range {text!r}, expected A..B"]) from None
        if hi_i < lo_i:
            raise ValidationError([f"empty node range {text!r}"])
        return list(range(lo_i, hi_i + 1))
    try:
        return [int(text)]
    except ValueError:
        raise ValidationError([f"bad node range {text!r}"]) from None


def cmd_bench(args) -> int:
    nodes = _parse_node_range(args.nodes)
    try:
        degrees = [float(d) for d in args.degree.split(",") if d.strip()]
    except ValueError:
        raise ValidationError([f"bad degree list {args.degree!r}"]) from None
    if not degrees:
        raise ValidationError(["empty degree list"])
    tasks = [(n, d, s) for n in nodes for d in degrees for s in range(args.seeds)]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_bench_task, tasks, [args.cap] * len(tasks)))
    else:
        rows = [_bench_task(t, args.cap) for t in tasks]
    pio.write_csv(args.csv, bench_mod.BENCH_CSV_HEADER, [r.as_csv_row() for r in rows])
    truncated = sum(1 for r in rows if r.truncated)
    print(f"{len(rows)} rows -> {args.csv}" + (f" ({truncated} truncated)" if truncated else ""))
    return EXIT_OK


def _bench_task(task, cap):
    n, d, seed = task
    return bench_mod.bench_one(n, d, seed, cap=cap)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pi-explain",
        description="Minimal sufficient subgraph explanations for reaction feasibility classifiers.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("explain", help="compute PI explanations for one instance")
    p.add_argument("--its", required=True, help="instance document (JSON)")
    p.add_argument(
        "--classifier",
        required=True,
        help="pattern:SPEC | size:N | table:FILE | external:CMD",
    )
    p.add_argument("--threshold", type=float, required=True, help="positive threshold in (0,1)")
    p.add_argument("--max-nodes", type=int, default=DEFAULT_MAX_NODES)
    p.add_argument("--out", help="output directory (one file per explanation plus report.json)")
    p.add_argument("--dot", action="store_true", help="also export the extension DAG as DOT")
    p.set_defaults(func=cmd_explain)

    p = sub.add_parser("enumerate", help="enumerate rooted connected subgraphs")
    p.add_argument("--graph", required=True, help="molecular graph document (JSON)")
    p.add_argument("--root", type=int, required=True)
    p.add_argument("--dag-out", help="write the extension DAG as DOT to this file")
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("apply-rule", help="generate candidate reactions from a rule")
    p.add_argument("--rule", required=True)
    p.add_argument("--reactants", required=True)
    p.add_argument("--max-candidates", type=int, default=None)
    p.set_defaults(func=cmd_apply_rule)

    p = sub.add_parser("rate", help="rate explanations against expected ones")
    p.add_argument("--obtained")
    p.add_argument("--expected")
    p.add_argument("--report", help="explain output directory (or directory of them)")
    p.add_argument("--expected-dir")
    p.add_argument("--csv")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_rate)

    p = sub.add_parser("bench", help="empirical extension-count benchmark")
    p.add_argument("--nodes", required=True, help="node range A..B")
    p.add_argument("--degree", required=True, help="comma-separated mean degree targets")
    p.add_argument("--seeds", type=int, required=True, help="seeds 0..K-1 per cell")
    p.add_argument("--csv", required=True)
    p.add_argument("--cap", type=int, default=bench_mod.DEFAULT_EXTENSION_CAP)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValidationError, GraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ScoringError as exc:
        print(f"classifier error: {exc}", file=sys.stderr)
        return EXIT_CLASSIFIER
    except CapExceededError as exc:
        print(f"resource cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
