"""Deterministic analysis outputs: candidate views, distribution, summary.

Rendering is a pure function of (data, format, sort); reports carry no
timestamps, so identical inputs give byte-identical outputs.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

from .filtering import (CandidateRecord, FilterConfig, FilterTag,
                        candidate_list, filter_to_wire,
                        resolve_method_selectors)
from .metric import MetricConfig, MetricResult, compute_metric
from .model import CallGraph
from .seeds import MarkStore, SeedStatus, summary_counts

REPORT_FORMAT = "fanin-report/1"


@dataclass(frozen=True)
class Histogram:
    buckets: dict[int, int]
    total_methods: int


@dataclass(frozen=True)
class SummaryTable:
    method_count: int
    at_threshold: int
    utility_filtered: int
    accessor_filtered: int
    confirmed_seeds: int
    non_seeds: int
    concerns: int
    lines_of_code: int | None = None


def percent_half_up(numerator: int, denominator: int) -> int:
    """Integer percent, .5 rounding up."""
    if denominator == 0:
        return 0
    return int(Fraction(100 * numerator, denominator) + Fraction(1, 2))


def count_with_percent(count: int, denominator: int) -> str:
    return f"{count} ({percent_half_up(count, denominator)}%)"


def seed_percent_strings(seeds: int, non_seeds: int) -> tuple[str, str]:
    """Seed/non-seed counts with complementary percents of the inspected set.

    The percents must sum to 100; the non-seed share is rounded half-up and
    the seed share is its complement.
    """
    inspected = seeds + non_seeds
    if inspected == 0:
        return f"{seeds} (0%)", f"{non_seeds} (0%)"
    non_pct = percent_half_up(non_seeds, inspected)
    return f"{seeds} ({100 - non_pct}%)", f"{non_seeds} ({non_pct}%)"


def distribution(result: MetricResult) -> Histogram:
    """Method count per distinct fan-in value; the zero bucket is always
    present."""
    buckets: dict[int, int] = {0: 0}
    for fanin in result.fanin_of.values():
        buckets[fanin] = buckets.get(fanin, 0) + 1
    return Histogram(buckets, len(result.fanin_of))


def summary(candidates: list[CandidateRecord], store: MarkStore,
            lines_of_code: int | None = None) -> SummaryTable:
    at_threshold = [r for r in candidates
                    if FilterTag.BELOW_THRESHOLD not in r.filtered_by
                    and FilterTag.LIBRARY not in r.filtered_by]
    utility = [r for r in at_threshold if FilterTag.UTILITY in r.filtered_by]
    # Utility wins when a record carries both tags, keeping the counts a partition.
    accessors = [r for r in at_threshold
                 if FilterTag.UTILITY not in r.filtered_by
                 and (FilterTag.ACCESSOR_NAME in r.filtered_by
                      or FilterTag.ACCESSOR_BODY in r.filtered_by)]
    seeds, non_seeds, concerns = summary_counts(candidates, store)
    method_count = sum(1 for r in candidates if FilterTag.LIBRARY not in r.filtered_by)
    return SummaryTable(
        method_count=method_count,
        at_threshold=len(at_threshold),
        utility_filtered=len(utility),
        accessor_filtered=len(accessors),
        confirmed_seeds=seeds,
        non_seeds=non_seeds,
        concerns=concerns,
        lines_of_code=lines_of_code,
    )


@dataclass(frozen=True)
class Report:
    config: FilterConfig
    candidates: list[CandidateRecord]
    store: MarkStore
    summary: SummaryTable
    histogram: Histogram


def build_report(g: CallGraph, cfg: FilterConfig, store: MarkStore | None = None,
                 diagnostics: list[str] | None = None,
                 lines_of_code: int | None = None) -> Report:
    """Run the full pipeline: metric, filters, summary, distribution."""
    store = store if store is not None else MarkStore(filter_config=cfg)
    excluded, w = resolve_method_selectors(
        g, cfg.exclusions.excluded_caller_types,
        cfg.exclusions.excluded_caller_packages,
        cfg.exclusions.excluded_caller_methods)
    if diagnostics is not None:
        diagnostics.extend(f"excluded-caller selector: {m}" for m in w)
    metric = compute_metric(g, MetricConfig(excluded_callers=excluded))
    candidates = candidate_list(g, cfg, diagnostics=diagnostics, metric=metric)
    return Report(
        config=cfg,
        candidates=candidates,
        store=store,
        summary=summary(candidates, store, lines_of_code),
        histogram=distribution(metric),
    )


# -- rendering -----------------------------------------------------------------


def _sorted_records(records: list[CandidateRecord], sort: str) -> list[CandidateRecord]:
    if sort == "fanin":
        return sorted(records, key=lambda r: (-r.fanin, r.display, r.method))
    if sort == "name":
        return sorted(records, key=lambda r: (r.display, r.method))
    raise ValueError(f"unknown sort {sort!r} (expected 'fanin' or 'name')")


def _record_status(record: CandidateRecord, store: MarkStore) -> tuple[str, str]:
    mark = store.marks.get(record.method)
    if mark is not None:
        return mark.status.value, mark.concern
    return (SeedStatus.CANDIDATE.value, "") if record.surviving else ("", "")


def _summary_lines(s: SummaryTable) -> list[tuple[str, str]]:
    lines: list[tuple[str, str]] = []
    if s.lines_of_code is not None:
        lines.append(("lines of code", str(s.lines_of_code)))
    lines.append(("methods", str(s.method_count)))
    lines.append(("methods at/above threshold",
                  count_with_percent(s.at_threshold, s.method_count)))
    lines.append(("utility methods", str(s.utility_filtered)))
    lines.append(("accessors", str(s.accessor_filtered)))
    seeds_str, non_str = seed_percent_strings(s.confirmed_seeds, s.non_seeds)
    lines.append(("confirmed seeds", seeds_str))
    lines.append(("non-seeds", non_str))
    lines.append(("concerns", str(s.concerns)))
    return lines


def _render_text(report: Report, sort: str, include_filtered: bool) -> str:
    out = io.StringIO()
    out.write("fan-in analysis report\n")
    out.write("======================\n\n")
    out.write("summary\n-------\n")
    for label, value in _summary_lines(report.summary):
        out.write(f"{label:<28}{value}\n")
    out.write("\nfan-in distribution\n-------------------\n")
    out.write(f"{'fan-in':>8}  methods\n")
    for value in sorted(report.histogram.buckets):
        out.write(f"{value:>8}  {report.histogram.buckets[value]}\n")

    records = _sorted_records(report.candidates, sort)
    if not include_filtered:
        records = [r for r in records if r.surviving]
    title = "candidates" if not include_filtered else "all methods"
    out.write(f"\n{title} (sort={sort})\n")
    out.write("-" * (len(title) + len(sort) + 8) + "\n")
    if not records:
        out.write("(none)\n")
    for r in records:
        status, concern = _record_status(r, report.store)
        line = f"{r.fanin:>8}  {r.display}"
        if status:
            line += f"  [{status}]"
        if concern:
            line += f"  {concern}"
        if include_filtered and r.filtered_by:
            line += "  {" + ",".join(sorted(t.value for t in r.filtered_by)) + "}"
        out.write(line + "\n")
    return out.getvalue()


def _render_csv(report: Report, sort: str, include_filtered: bool) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["method", "declaring_type", "fanin", "filtered_by",
                     "status", "concern"])
    records = _sorted_records(report.candidates, sort)
    if not include_filtered:
        records = [r for r in records if r.surviving]
    for r in records:
        status, concern = _record_status(r, report.store)
        writer.writerow([
            r.method, r.declaring_type or "", r.fanin,
            ";".join(sorted(t.value for t in r.filtered_by)),
            status, concern,
        ])
    return out.getvalue()


def record_to_wire(r: CandidateRecord, store: MarkStore) -> dict:
    status, concern = _record_status(r, store)
    return {
        "method": r.method,
        "display": r.display,
        "declaringType": r.declaring_type,
        "package": r.package,
        "fanin": r.fanin,
        "filteredBy": sorted(t.value for t in r.filtered_by),
        "surviving": r.surviving,
        "isLibrary": r.is_library,
        "status": status,
        "concern": concern,
    }


def summary_to_wire(s: SummaryTable) -> dict:
    seeds_str, non_str = seed_percent_strings(s.confirmed_seeds, s.non_seeds)
    return {
        "linesOfCode": s.lines_of_code,
        "methodCount": s.method_count,
        "atThreshold": s.at_threshold,
        "atThresholdFormatted": count_with_percent(s.at_threshold, s.method_count),
        "utilityFiltered": s.utility_filtered,
        "accessorFiltered": s.accessor_filtered,
        "confirmedSeeds": s.confirmed_seeds,
        "confirmedSeedsFormatted": seeds_str,
        "nonSeeds": s.non_seeds,
        "nonSeedsFormatted": non_str,
        "concerns": s.concerns,
    }


def histogram_to_wire(h: Histogram) -> dict:
    return {
        "buckets": {str(k): h.buckets[k] for k in sorted(h.buckets)},
        "totalMethods": h.total_methods,
    }


def _render_json(report: Report, sort: str, include_filtered: bool) -> str:
    records = _sorted_records(report.candidates, sort)
    if not include_filtered:
        records = [r for r in records if r.surviving]
    doc = {
        "format": REPORT_FORMAT,
        "filter": filter_to_wire(report.config),
        "summary": summary_to_wire(report.summary),
        "histogram": histogram_to_wire(report.histogram),
        "candidates": [record_to_wire(r, report.store) for r in records],
    }
    return json.dumps(doc, indent=2) + "\n"


def render(report: Report, format: str = "text", sort: str = "fanin",
           include_filtered: bool = False) -> bytes:
    """Render a report deterministically as text, csv, or json."""
    if format == "text":
        text = _render_text(report, sort, include_filtered)
    elif format == "csv":
        text = _render_csv(report, sort, include_filtered)
    elif format == "json":
        text = _render_json(report, sort, include_filtered)
    else:
        raise ValueError(f"unknown format {format!r}")
    return text.encode("utf-8")
