"""Command-line entry points: analyze, export-graph, serve.

Exit codes: 0 success, 1 input or analysis error, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .filtering import (AccessorFilter, FilterConfig, ThresholdMode)
from .frontend import (FrontendError, ParseError, collect_sources, count_ncloc,
                       graph_from_sources)
from .model import CallGraph, GraphError, load_graph, save_graph
from .report import build_report, render
from .seeds import MarkError, MarkStore, load_marks
from .service import Session, make_server


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fanmine",
        description="Find crosscutting-concern candidates via fan-in analysis "
                    "of a static call graph.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_input_flags(p: argparse.ArgumentParser) -> None:
        p.add_argument("--src", metavar="DIR", help="directory of .java sources")
        p.add_argument("--graph", metavar="FILE",
                       help="previously exported call-graph document")

    analyze = sub.add_parser("analyze", help="compute fan-in, filter, report")
    add_input_flags(analyze)
    analyze.add_argument("--out", metavar="FILE", help="write report here (default stdout)")
    analyze.add_argument("--format", choices=["text", "csv", "json"], default="text")
    analyze.add_argument("--threshold", type=int, metavar="N",
                         help="absolute fan-in threshold (default 10)")
    analyze.add_argument("--top-percent", type=float, metavar="P",
                         help="keep the top P%% of methods by fan-in instead")
    analyze.add_argument("--filter-accessors",
                         choices=["off", "name", "body", "both"], default=None)
    analyze.add_argument("--include-libraries", action="store_true", default=None)
    analyze.add_argument("--marks", metavar="FILE",
                         help="marks file supplying exclusions and seed statuses")
    analyze.add_argument("--sort", choices=["fanin", "name"], default="fanin")
    analyze.add_argument("--include-filtered", action="store_true",
                         help="list filtered-out methods with their filter tags")

    export = sub.add_parser("export-graph", help="parse sources, write the call graph")
    export.add_argument("--src", metavar="DIR", required=True)
    export.add_argument("--out", metavar="FILE", help="default stdout")

    serve = sub.add_parser("serve", help="run the local triage service")
    add_input_flags(serve)
    serve.add_argument("--marks", metavar="FILE",
                       help="marks file; persisted on every mutation")
    serve.add_argument("--port", type=int, default=7070)
    serve.add_argument("--ui", metavar="DIR",
                       help="static UI assets directory (default: bundled if present)")
    return parser


def _usage_error(parser: argparse.ArgumentParser, message: str) -> int:
    print(f"fanmine: error: {message}", file=sys.stderr)
    parser.print_usage(sys.stderr)
    return 2


def _load_graph_input(args) -> tuple[CallGraph, list[str], int | None]:
    """Graph plus diagnostics plus NCLOC (when built from sources)."""
    diagnostics: list[str] = []
    if args.src:
        sources = collect_sources(args.src)
        graph, res_diags = graph_from_sources(sources)
        diagnostics.extend(str(d) for d in res_diags)
        return graph, diagnostics, count_ncloc(sources)
    data = Path(args.graph).read_bytes()
    return load_graph(data), diagnostics, None


def _assemble_config(args, store: MarkStore) -> FilterConfig | str:
    """Marks-file config as the base, explicit flags override. Returns an
    error message string on flag conflicts."""
    cfg = store.filter_config
    if args.threshold is not None and args.top_percent is not None:
        return "--threshold and --top-percent are mutually exclusive"
    kwargs: dict = {}
    if args.threshold is not None:
        kwargs["threshold_mode"] = ThresholdMode.ABSOLUTE
        kwargs["absolute_threshold"] = args.threshold
    if args.top_percent is not None:
        kwargs["threshold_mode"] = ThresholdMode.TOP_PERCENT
        kwargs["top_percent"] = args.top_percent
    if args.filter_accessors is not None:
        flag_map = {"off": AccessorFilter.OFF, "name": AccessorFilter.BY_NAME,
                    "body": AccessorFilter.BY_BODY, "both": AccessorFilter.BOTH}
        kwargs["accessor_filter"] = flag_map[args.filter_accessors]
    if args.include_libraries is not None:
        kwargs["include_libraries"] = args.include_libraries
    if not kwargs:
        return cfg
    from dataclasses import replace
    return replace(cfg, **kwargs)


def _write_output(data: bytes, out: str | None) -> None:
    if out:
        Path(out).write_bytes(data)
    else:
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()


def _cmd_analyze(parser, args) -> int:
    if bool(args.src) == bool(args.graph):
        return _usage_error(parser, "exactly one of --src or --graph is required")
    store = MarkStore()
    if args.marks:
        store = load_marks(Path(args.marks).read_bytes())
    cfg = _assemble_config(args, store)
    if isinstance(cfg, str):
        return _usage_error(parser, cfg)
    graph, diagnostics, ncloc = _load_graph_input(args)
    for warning in store.validate_against(set(graph.methods)):
        diagnostics.append(warning)
    report = build_report(graph, cfg, store, diagnostics, lines_of_code=ncloc)
    data = render(report, format=args.format, sort=args.sort,
                  include_filtered=args.include_filtered)
    _write_output(data, args.out)
    for d in diagnostics:
        print(f"fanmine: {d}", file=sys.stderr)
    return 0


def _cmd_export_graph(args) -> int:
    graph, diagnostics, _ = _load_graph_input(args)
    _write_output(save_graph(graph), args.out)
    for d in diagnostics:
        print(f"fanmine: {d}", file=sys.stderr)
    return 0


def _default_ui_dir() -> Path | None:
    bundled = Path(__file__).parent / "static"
    return bundled if (bundled / "index.html").is_file() else None


def _cmd_serve(parser, args) -> int:
    if bool(args.src) == bool(args.graph):
        return _usage_error(parser, "exactly one of --src or --graph is required")
    graph, diagnostics, ncloc = _load_graph_input(args)
    store = MarkStore()
    if args.marks and Path(args.marks).is_file():
        store = load_marks(Path(args.marks).read_bytes())
    session = Session(graph, store, marks_path=args.marks, lines_of_code=ncloc)
    ui_dir = Path(args.ui) if args.ui else _default_ui_dir()
    server = make_server(session, port=args.port, ui_dir=ui_dir)
    for d in diagnostics:
        print(f"fanmine: {d}", file=sys.stderr)
    print(f"fanmine: serving on http://127.0.0.1:{args.port}/ "
          f"(ui: {'yes' if ui_dir else 'api only'})", file=sys.stderr)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        if args.command == "analyze":
            return _cmd_analyze(parser, args)
        if args.command == "export-graph":
            return _cmd_export_graph(args)
        if args.command == "serve":
            return _cmd_serve(parser, args)
        return _usage_error(parser, f"unknown command {args.command!r}")
    except (ParseError, FrontendError, GraphError, MarkError) as e:
        print(f"fanmine: error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"fanmine: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
