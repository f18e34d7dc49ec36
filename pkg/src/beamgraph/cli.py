"""Command-line surface: scriptable access to every capability.

All numeric output is fixed at 6 decimal places and unreachable targets
print the literal token ``unreachable``, so outputs diff cleanly across
runs. Exit codes: 0 success, 1 validation or assertion failure, 2 usage
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import Agency, Kind, KnowledgeGraph, Paradigm, Polarity, ViewpointType
from .errors import BeamGraphError, InvalidPerspective, SameResource
from .eventlog import EventLog, replay, tail_records, write_graph
from .export import export_map
from .perspective import Perspective, build_map, perspective_from_json
from .query import k_nearest, neighborhood, shortest_paths
from .session import FeedbackEvent, builtin_apple_script, parse_script, record_feedback, run_scenario
from .simulator import parse_config, simulate

USAGE_ERROR = 2
FAILURE = 1


def _load_graph(path: str) -> KnowledgeGraph:
    if Path(path).exists():
        return replay(path)
    return KnowledgeGraph()


def _persist_new(graph: KnowledgeGraph, path: str, since: int) -> None:
    log = EventLog(path, last_seq=since)
    with log:
        for record in tail_records(graph.events(), since):
            log.append_event(record)


def _perspective_arg(value: str) -> Perspective:
    p = Path(value)
    if p.exists():
        return perspective_from_json(json.loads(p.read_text("utf-8")))
    return perspective_from_json(value)


def _polarity_arg(value: str) -> Polarity:
    if value in ("+", "+1", "1", "positive"):
        return Polarity.POSITIVE
    if value in ("-", "-1", "negative"):
        return Polarity.NEGATIVE
    raise ValueError(f"bad polarity {value!r}")


def _fmt(value: float | None) -> str:
    import math

    if value is None or math.isinf(value):
        return "unreachable"
    return f"{value:.6f}"


def _now_arg(args: argparse.Namespace, graph: KnowledgeGraph) -> int:
    return graph.latest_timestamp() if args.now is None else args.now


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="beamgraph", description="subjective knowledge-graph engine")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("init", help="create an empty event log")
    p.add_argument("log")

    p = sub.add_parser("add-resource", help="register a resource")
    p.add_argument("--log", required=True)
    p.add_argument("--kind", required=True, choices=[k.value for k in Kind])
    p.add_argument("--agency", choices=[a.value for a in Agency])
    p.add_argument("--label")
    p.add_argument("--id")
    p.add_argument("--at", type=int, default=None)

    p = sub.add_parser("add-viewpoint", help="append a viewpoint")
    p.add_argument("--log", required=True)
    p.add_argument("--emitter", required=True)
    p.add_argument("--r2", required=True)
    p.add_argument("--r3", required=True)
    p.add_argument("--paradigm", required=True, choices=[x.value for x in Paradigm])
    p.add_argument("--polarity", default="+")
    p.add_argument("--at", type=int, default=None)

    p = sub.add_parser("feedback", help="record agent feedback on a document")
    p.add_argument("--log", required=True)
    p.add_argument("--agent", required=True)
    p.add_argument("--document", required=True)
    p.add_argument("--topic")
    p.add_argument("--polarity", default="+")
    p.add_argument("--at", type=int, default=None)

    p = sub.add_parser("query", help="run a proximity query")
    qsub = p.add_subparsers(dest="query_kind", required=True)
    for name in ("paths", "near", "neighborhood"):
        q = qsub.add_parser(name)
        q.add_argument("--log", required=True)
        q.add_argument("--perspective", default="neutral")
        q.add_argument("--now", type=int, default=None)
        if name == "paths":
            q.add_argument("--source", required=True)
            q.add_argument("--target", required=True)
        else:
            q.add_argument("--origin", required=True)
        if name == "near":
            q.add_argument("--kind", choices=[k.value for k in Kind])
            q.add_argument("--k", type=int, default=1)
        if name == "neighborhood":
            q.add_argument("--radius", type=float, required=True)

    p = sub.add_parser("map", help="export the knowledge map")
    msub = p.add_subparsers(dest="map_kind", required=True)
    m = msub.add_parser("export")
    m.add_argument("--log", required=True)
    m.add_argument("--format", required=True, choices=["dot", "json"])
    m.add_argument("--perspective", default="neutral")
    m.add_argument("--now", type=int, default=None)
    m.add_argument("--out")

    p = sub.add_parser("scenario", help="run a scripted scenario")
    ssub = p.add_subparsers(dest="scenario_kind", required=True)
    s = ssub.add_parser("run")
    s.add_argument("--script")
    s.add_argument("--log", help="write the resulting event log here")

    p = sub.add_parser("simulate", help="run a multi-agent simulation")
    p.add_argument("--config", required=True)
    p.add_argument("--out", required=True, help="metrics file (one JSON object per round)")
    p.add_argument("--log", help="write the final event log here")

    p = sub.add_parser("serve", help="run the HTTP API")
    p.add_argument("--log", required=True)
    p.add_argument("--addr", default="127.0.0.1:8800")
    p.add_argument("--cors", action="append", help="allowed CORS origin (repeatable)")

    return parser


def _run(args: argparse.Namespace) -> int:
    if args.command == "init":
        path = Path(args.log)
        if path.exists():
            print(f"refusing to overwrite existing log {path}", file=sys.stderr)
            return FAILURE
        path.parent.mkdir(parents=True, exist_ok=True)
        path.touch()
        print(f"initialized {path}")
        return 0

    if args.command == "add-resource":
        graph = _load_graph(args.log)
        since = graph.version
        rid = graph.add_resource(
            kind=Kind(args.kind),
            label=args.label if args.label is not None else (args.id or ""),
            agency=Agency(args.agency) if args.agency else None,
            id=args.id,
            at=args.at if args.at is not None else graph.latest_timestamp(),
        )
        _persist_new(graph, args.log, since)
        print(f"{rid} version={graph.version}")
        return 0

    if args.command == "add-viewpoint":
        polarity = _polarity_arg(args.polarity)
        graph = _load_graph(args.log)
        since = graph.version
        vid = graph.add_viewpoint(
            emitter=args.emitter,
            r2=args.r2,
            r3=args.r3,
            vtype=ViewpointType(Paradigm(args.paradigm), polarity),
            at=args.at if args.at is not None else graph.latest_timestamp(),
        )
        _persist_new(graph, args.log, since)
        print(f"{vid} version={graph.version}")
        return 0

    if args.command == "feedback":
        polarity = _polarity_arg(args.polarity)
        graph = _load_graph(args.log)
        since = graph.version
        ids = record_feedback(
            graph,
            FeedbackEvent(
                agent=args.agent,
                document=args.document,
                topic=args.topic,
                polarity=polarity,
                at=args.at if args.at is not None else graph.latest_timestamp(),
            ),
        )
        _persist_new(graph, args.log, since)
        print(f"{','.join(ids)} version={graph.version}")
        return 0

    if args.command == "query":
        perspective = _perspective_arg(args.perspective)
        graph = _load_graph(args.log)
        kmap = build_map(graph, perspective, _now_arg(args, graph))
        if args.query_kind == "paths":
            answer = shortest_paths(kmap, args.source, args.target)
            if answer.best_length is None:
                print("unreachable")
            else:
                for path in answer.paths:
                    print(f"{','.join(path.nodes)} length {_fmt(path.length)}")
            return 0
        if args.query_kind == "near":
            hits = k_nearest(kmap, args.origin, k=args.k, kind_filter=Kind(args.kind) if args.kind else None)
            for rid, d in hits:
                print(f"{rid} {_fmt(d)}")
            return 0
        sub = neighborhood(kmap, args.origin, args.radius)
        sys.stdout.buffer.write(export_map(sub, "json"))
        return 0

    if args.command == "map":
        perspective = _perspective_arg(args.perspective)
        graph = _load_graph(args.log)
        kmap = build_map(graph, perspective, _now_arg(args, graph))
        payload = export_map(kmap, args.format)
        if args.out:
            Path(args.out).write_bytes(payload)
        else:
            sys.stdout.buffer.write(payload)
        return 0

    if args.command == "scenario":
        if args.script:
            script = parse_script(json.loads(Path(args.script).read_text("utf-8")))
        else:
            script = builtin_apple_script()
        graph = KnowledgeGraph()
        report = run_scenario(script, graph=graph)
        sys.stdout.write(report.render())
        if args.log:
            write_graph(graph, args.log)
        return 0 if report.passed else FAILURE

    if args.command == "simulate":
        config = parse_config(json.loads(Path(args.config).read_text("utf-8")))
        result = simulate(config)
        with open(args.out, "w", encoding="utf-8") as fh:
            for metrics in result.metrics:
                fh.write(metrics.to_json_line() + "\n")
        if args.log:
            write_graph(result.graph, args.log)
        final = result.metrics[-1].synchronization if result.metrics else 1.0
        print(f"rounds={config.rounds} viewpoints={len(result.graph.viewpoints)} synchronization={_fmt(final)}")
        return 0

    if args.command == "serve":
        from .service import serve

        host, _, port = args.addr.rpartition(":")
        serve(args.log, host or "127.0.0.1", int(port), args.cors)
        return 0

    raise AssertionError(f"unhandled command {args.command}")


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else USAGE_ERROR
    try:
        return _run(args)
    except (SameResource, InvalidPerspective) as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return USAGE_ERROR
    except BeamGraphError as e:
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return FAILURE
    except (OSError, json.JSONDecodeError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
