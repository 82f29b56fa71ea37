"""Local HTTP service exposing the analysis to the triage UI.

Single-user, loopback by default. The marks file is the only persistent
state: every mutation rewrites it, so restarting against the same graph and
marks file reproduces identical responses. Every list response carries a
``generation`` counter incremented per mutation, letting clients detect
staleness after their own writes.
"""

from __future__ import annotations

import json
import threading
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path
from urllib.parse import parse_qs, unquote, urlparse

from .filtering import (FilterConfig, candidate_list, exclusions_to_wire,
                        filter_from_wire, filter_to_wire,
                        resolve_method_selectors, utility_hints)
from .metric import MetricConfig, compute_metric
from .model import CallGraph, library_key
from .report import (distribution, histogram_to_wire, record_to_wire, summary,
                     summary_to_wire)
from .seeds import (MarkError, MarkStore, call_position_table,
                    group_by_declaring_supertype, group_by_shared_callees,
                    save_marks)


class Session:
    """Shared analysis state behind the API.

    Mutations are serialized by a lock and recompute the candidate list
    synchronously, so readers always see either the pre- or post-mutation
    list, never a mix.
    """

    def __init__(self, graph: CallGraph, store: MarkStore | None = None,
                 marks_path: str | Path | None = None,
                 lines_of_code: int | None = None) -> None:
        self.graph = graph
        self.store = store if store is not None else MarkStore()
        self.marks_path = Path(marks_path) if marks_path else None
        self.lines_of_code = lines_of_code
        self.generation = 0
        self._lock = threading.RLock()
        self._records: list | None = None
        self._records_all: list | None = None
        self._known = set(graph.methods) | {
            library_key(c.name, c.arity) for c in graph.library_calls}

    @property
    def config(self) -> FilterConfig:
        return self.store.filter_config

    def _candidates(self, include_hidden: bool) -> list:
        if include_hidden:
            if self._records_all is None:
                self._records_all = candidate_list(
                    self.graph, self.config, include_hidden_libraries=True)
            return self._records_all
        if self._records is None:
            self._records = candidate_list(self.graph, self.config)
        return self._records

    def snapshot(self, include_hidden: bool = False) -> tuple[int, list]:
        with self._lock:
            return self.generation, self._candidates(include_hidden)

    def metric_snapshot(self):
        with self._lock:
            excluded, _ = resolve_method_selectors(
                self.graph, self.config.exclusions.excluded_caller_types,
                self.config.exclusions.excluded_caller_packages,
                self.config.exclusions.excluded_caller_methods)
            return self.generation, compute_metric(
                self.graph, MetricConfig(excluded_callers=excluded))

    def _invalidate(self) -> None:
        self._records = None
        self._records_all = None

    def _mutated(self) -> None:
        self.generation += 1
        if self.marks_path is not None:
            self.marks_path.write_bytes(save_marks(self.store))

    def add_mark(self, method: str, status: str, concern: str = "",
                 note: str = "") -> dict:
        with self._lock:
            mark = self.store.mark(method, status, concern, note,
                                   known_methods=self._known)
            self._mutated()
            return {"method": mark.method, "status": mark.status.value,
                    "concern": mark.concern, "note": mark.note, "ts": mark.ts}

    def add_utilities(self, types=(), packages=(), methods=()) -> list[str]:
        with self._lock:
            _, warnings = resolve_method_selectors(
                self.graph, frozenset(types), frozenset(packages), frozenset(methods))
            ex = self.config.exclusions.merged_with(
                utility_types=frozenset(types),
                utility_packages=frozenset(packages),
                utility_methods=frozenset(methods))
            self.store.with_exclusions(ex)
            self._invalidate()
            self._mutated()
            return warnings

    def add_excluded_callers(self, types=(), packages=(), methods=()) -> list[str]:
        with self._lock:
            _, warnings = resolve_method_selectors(
                self.graph, frozenset(types), frozenset(packages), frozenset(methods))
            ex = self.config.exclusions.merged_with(
                excluded_caller_types=frozenset(types),
                excluded_caller_packages=frozenset(packages),
                excluded_caller_methods=frozenset(methods))
            self.store.with_exclusions(ex)
            self._invalidate()
            self._mutated()
            return warnings

    def update_config(self, wire: dict) -> None:
        with self._lock:
            merged = filter_to_wire(self.config)
            merged.update({k: v for k, v in wire.items() if k in merged})
            self.store.filter_config = filter_from_wire(
                merged, self.config.exclusions)
            self._invalidate()
            self._mutated()


class AnalysisServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address: tuple[str, int], session: Session,
                 ui_dir: str | Path | None = None) -> None:
        super().__init__(address, _Handler)
        self.session = session
        self.ui_dir = Path(ui_dir) if ui_dir else None


_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".map": "application/json",
    ".svg": "image/svg+xml",
}


class _Handler(BaseHTTPRequestHandler):
    protocol_version = "HTTP/1.1"

    @property
    def session(self) -> Session:
        return self.server.session  # type: ignore[attr-defined]

    def log_message(self, *args) -> None:  # quiet by default
        pass

    # -- plumbing --

    def _send_json(self, payload: dict, status: int = 200) -> None:
        body = (json.dumps(payload, indent=2) + "\n").encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json; charset=utf-8")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _error(self, status: int, message: str) -> None:
        self._send_json({"error": message}, status)

    def _read_json(self) -> dict | None:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            doc = json.loads(raw)
        except json.JSONDecodeError:
            self._error(400, "request body is not valid JSON")
            return None
        if not isinstance(doc, dict):
            self._error(400, "request body must be a JSON object")
            return None
        return doc

    # -- dispatch --

    def do_GET(self) -> None:
        url = urlparse(self.path)
        parts = [unquote(p) for p in url.path.split("/") if p]
        query = {k: v[-1] for k, v in parse_qs(url.query).items()}
        try:
            if parts[:2] == ["api", "methods"] and len(parts) == 2:
                return self._get_methods(query)
            if parts[:2] == ["api", "methods"] and len(parts) == 3:
                return self._get_method(parts[2])
            if (parts[:2] == ["api", "methods"] and len(parts) == 4
                    and parts[3] == "groupings"):
                return self._get_groupings(parts[2], query)
            if parts == ["api", "report", "summary"]:
                return self._get_summary()
            if parts == ["api", "report", "distribution"]:
                return self._get_distribution()
            if parts == ["api", "config"]:
                return self._get_config()
            return self._serve_static(url.path)
        except MarkError as e:
            return self._error(404, str(e))

    def do_POST(self) -> None:
        url = urlparse(self.path)
        parts = [unquote(p) for p in url.path.split("/") if p]
        doc = self._read_json()
        if doc is None:
            return
        if parts == ["api", "marks"]:
            return self._post_marks(doc)
        if parts == ["api", "utilities"]:
            return self._post_selectors(doc, self.session.add_utilities)
        if parts == ["api", "excluded-callers"]:
            return self._post_selectors(doc, self.session.add_excluded_callers)
        self._error(404, "unknown endpoint")

    def do_PUT(self) -> None:
        url = urlparse(self.path)
        parts = [unquote(p) for p in url.path.split("/") if p]
        doc = self._read_json()
        if doc is None:
            return
        if parts == ["api", "config"]:
            try:
                self.session.update_config(doc)
            except (ValueError, KeyError) as e:
                return self._error(400, f"invalid config: {e}")
            return self._get_config()
        self._error(404, "unknown endpoint")

    # -- GET handlers --

    def _get_methods(self, query: dict) -> None:
        include_filtered = query.get("includeFiltered", "").lower() in ("1", "true")
        sort = query.get("sort", "fanin")
        if sort not in ("fanin", "name"):
            return self._error(400, "sort must be 'fanin' or 'name'")
        generation, records = self.session.snapshot(include_hidden=include_filtered)
        if not include_filtered:
            records = [r for r in records if r.surviving]
        if "minFanin" in query:
            try:
                min_fanin = int(query["minFanin"])
            except ValueError:
                return self._error(400, "minFanin must be an integer")
            records = [r for r in records if r.fanin >= min_fanin]
        if sort == "name":
            records = sorted(records, key=lambda r: (r.display, r.method))
        store = self.session.store
        self._send_json({
            "generation": generation,
            "methods": [record_to_wire(r, store) for r in records],
        })

    def _get_method(self, mid: str) -> None:
        generation, records = self.session.snapshot(include_hidden=True)
        record = next((r for r in records if r.method == mid), None)
        if record is None:
            return self._error(404, f"unknown method id {mid!r}")
        g = self.session.graph
        callers = []
        for caller in sorted(record.caller_set):
            m = g.methods.get(caller)
            callers.append({
                "id": caller,
                "display": g.method_display(caller),
                "loc": m.loc if m else None,
            })
        payload = record_to_wire(record, self.session.store)
        m = g.methods.get(mid)
        payload.update({
            "generation": generation,
            "loc": m.loc if m else None,
            "callers": callers,
        })
        self._send_json(payload)

    def _get_groupings(self, mid: str, query: dict) -> None:
        mode = query.get("mode", "hierarchy")
        g = self.session.graph
        if mid not in g.methods:
            return self._error(404, f"unknown method id {mid!r}")
        generation = self.session.generation
        if mode == "hierarchy":
            grouping = group_by_declaring_supertype(g, mid)
        elif mode == "shared":
            try:
                min_shared = int(query.get("minShared", "1"))
            except ValueError:
                return self._error(400, "minShared must be an integer")
            try:
                grouping = group_by_shared_callees(g, mid, min_shared)
            except ValueError as e:
                return self._error(400, str(e))
        elif mode == "position":
            rows = call_position_table(g, mid)
            return self._send_json({
                "generation": generation, "target": mid, "mode": "position",
                "rows": [{
                    "caller": r.caller,
                    "display": g.method_display(r.caller),
                    "isFirst": r.is_first, "isSecond": r.is_second,
                    "isBeforeLast": r.is_before_last, "isLast": r.is_last,
                    "callCount": r.call_count,
                } for r in rows],
            })
        else:
            return self._error(400, "mode must be hierarchy, position, or shared")
        self._send_json({
            "generation": generation,
            "target": grouping.target,
            "mode": grouping.mode,
            "groups": [{
                "key": key,
                "members": [{"id": m, "display": g.method_display(m)}
                            for m in sorted(members)],
            } for key, members in grouping.groups],
        })

    def _get_summary(self) -> None:
        generation, records = self.session.snapshot()
        table = summary(records, self.session.store, self.session.lines_of_code)
        payload = summary_to_wire(table)
        payload["generation"] = generation
        self._send_json(payload)

    def _get_distribution(self) -> None:
        generation, metric = self.session.metric_snapshot()
        payload = histogram_to_wire(distribution(metric))
        payload["generation"] = generation
        self._send_json(payload)

    def _get_config(self) -> None:
        session = self.session
        payload = {
            "generation": session.generation,
            "filter": filter_to_wire(session.config),
            "exclusions": exclusions_to_wire(session.config.exclusions),
            "utilityHints": utility_hints(session.graph),
        }
        self._send_json(payload)

    # -- POST handlers --

    def _post_marks(self, doc: dict) -> None:
        try:
            mark = self.session.add_mark(
                method=doc.get("method", ""), status=doc.get("status", ""),
                concern=doc.get("concern", ""), note=doc.get("note", ""))
        except (MarkError, ValueError) as e:
            return self._error(400, str(e))
        self._send_json({"generation": self.session.generation, "mark": mark})

    def _post_selectors(self, doc: dict, apply) -> None:
        types = doc.get("types", [])
        packages = doc.get("packages", [])
        methods = doc.get("methods", [])
        if not (isinstance(types, list) and isinstance(packages, list)
                and isinstance(methods, list)):
            return self._error(400, "types/packages/methods must be arrays")
        warnings = apply(types=types, packages=packages, methods=methods)
        self._send_json({"generation": self.session.generation,
                         "warnings": warnings})

    # -- static UI --

    def _serve_static(self, path: str) -> None:
        ui_dir: Path | None = self.server.ui_dir  # type: ignore[attr-defined]
        if ui_dir is None:
            return self._error(404, "no UI assets configured; use the /api endpoints")
        name = unquote(path.lstrip("/")) or "index.html"
        target = (ui_dir / name).resolve()
        if not str(target).startswith(str(ui_dir.resolve())) or not target.is_file():
            return self._error(404, f"no such asset {name!r}")
        body = target.read_bytes()
        self.send_response(200)
        self.send_header("Content-Type",
                         _CONTENT_TYPES.get(target.suffix, "application/octet-stream"))
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def make_server(session: Session, host: str = "127.0.0.1", port: int = 7070,
                ui_dir: str | Path | None = None) -> AnalysisServer:
    return AnalysisServer((host, port), session, ui_dir)
