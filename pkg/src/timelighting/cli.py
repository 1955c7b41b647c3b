"""Command line entry points: ingest, analyze, serve.

The CLI is a thin client over the engine: it parses arguments, calls the
same functions the HTTP service uses, and prints the service's wire models,
so scripted output and API responses always agree.
"""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from . import analytics
from .ingest import (
    FallbackLayoutParams,
    IngestError,
    equivalent_timeslice_count,
    fallback_layout,
    import_layout,
    ingest_events,
    parse_events_csv,
    parse_graph,
    serialize_graph,
)
from .model import GraphValidationError, Interval, TemporalGraph
from .server import schemas


def _configure_logging() -> None:
    level = os.environ.get("TIMELIGHTING_LOG", "WARNING").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 1


def _read_text(path: str) -> str:
    p = Path(path)
    if not p.exists():
        raise IngestError(f"no such file: {path}")
    return p.read_text(encoding="utf-8")


def _load_graph(path: str) -> TemporalGraph:
    return parse_graph(_read_text(path))


def _parse_window(raw: str | None, graph: TemporalGraph) -> Interval:
    extent = graph.extent or Interval(0.0, 0.0)
    if raw is None:
        return extent
    try:
        lo, hi = raw.split(":")
        window = Interval(float(lo), float(hi))
    except (ValueError, GraphValidationError) as exc:
        raise IngestError(f"bad --window '{raw}' (expected from:to): {exc}") from exc
    return window


def cmd_ingest(args: argparse.Namespace) -> int:
    try:
        if args.events:
            events = parse_events_csv(_read_text(args.events))
            graph = ingest_events(events)
        elif args.graph:
            graph = _load_graph(args.graph)
        else:
            return _fail("ingest requires --events or --graph")

        warnings: list[str] = []
        if args.layout:
            result = import_layout(graph, _read_text(args.layout))
            graph = result.graph
            warnings = result.warnings()
        elif args.seed is not None:
            graph = fallback_layout(graph, FallbackLayoutParams(seed=args.seed))

        out = Path(args.out)
        out.write_text(serialize_graph(graph), encoding="utf-8")

        interval_count = sum(len(n.appearance) for n in graph.nodes.values()) + sum(
            len(e.appearance) for e in graph.edges.values()
        )
        extent = graph.extent
        summary = {
            "out": str(out),
            "nodes": len(graph.nodes),
            "edges": len(graph.edges),
            "intervals": interval_count,
            "extent": [extent.start, extent.end] if extent else None,
            "equivalent_timeslices": equivalent_timeslice_count(graph),
        }
        print(json.dumps(summary, indent=1))
        for warning in warnings:
            print(f"warning: {warning}", file=sys.stderr)
        return 0
    except (IngestError, GraphValidationError, OSError) as exc:
        return _fail(str(exc))


def cmd_analyze(args: argparse.Namespace) -> int:
    try:
        graph = _load_graph(args.graph)
        window = _parse_window(args.window, graph)

        ranking = analytics.rank_mobility(graph, window)
        default_locked = [s.node_id for s in ranking[:3]]
        locked = (
            [node_id for node_id in args.locked.split(",") if node_id]
            if args.locked
            else default_locked
        )
        unknown = sorted(set(locked) - set(graph.nodes))
        if unknown:
            raise IngestError(f"unknown node ids: {', '.join(unknown)}")

        intervals = analytics.interaction_intervals(graph, set(locked), args.padding)
        series = analytics.timeline_series(graph)
        mean = sum(s.length for s in ranking) / len(ranking) if ranking else 0.0

        report = schemas.AnalyzeReport(
            graph=args.graph,
            window=schemas.IntervalModel.from_interval(window),
            mobility=schemas.MobilityResponse(
                window=schemas.IntervalModel.from_interval(window),
                ranking=[schemas.MobilityEntryModel.from_score(s) for s in ranking],
                default_locked=default_locked,
                mean_length=mean,
            ),
            guidance=schemas.GuidanceResponse(
                locked=sorted(set(locked)),
                padding=args.padding,
                intervals=[schemas.GuidanceIntervalModel.from_guidance(g) for g in intervals],
            ),
            timeline_breakpoints=len(series.breakpoints),
            equivalent_timeslices=equivalent_timeslice_count(graph),
        )
        print(report.model_dump_json(indent=1))
        return 0
    except (IngestError, GraphValidationError, OSError) as exc:
        return _fail(str(exc))


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .server.app import load_app_from_file

    try:
        app = load_app_from_file(args.graph, args.static_dir)
    except SystemExit as exc:
        return _fail(str(exc))
    uvicorn.run(app, host=args.host, port=args.port, log_level="info")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="timelighting",
        description="Project temporal graphs onto an explorable 2D view",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ingest = sub.add_parser("ingest", help="build a canonical graph file")
    ingest.add_argument("--events", help="CSV event file (timestamp,source,target)")
    ingest.add_argument("--graph", help="existing canonical graph file")
    ingest.add_argument("--layout", help="layout JSON to attach")
    ingest.add_argument(
        "--seed", type=int, default=None,
        help="generate the built-in fallback layout with this seed (when no --layout)",
    )
    ingest.add_argument("--out", required=True, help="output graph file")
    ingest.set_defaults(func=cmd_ingest)

    analyze = sub.add_parser("analyze", help="print a JSON analytics report")
    analyze.add_argument("--graph", required=True, help="canonical graph file")
    analyze.add_argument("--window", help="time window as from:to (defaults to extent)")
    analyze.add_argument("--locked", help="comma-separated node ids (defaults to top-3 mobility)")
    analyze.add_argument("--padding", type=float, default=0.0, help="guidance interval padding, seconds")
    analyze.set_defaults(func=cmd_analyze)

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--graph", required=True, help="canonical graph file")
    serve.add_argument("--port", type=int, default=8080)
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--static-dir", help="directory of UI assets to serve at /")
    serve.set_defaults(func=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    _configure_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
