"""Threshold, accessor, and utility filters over the metric results.

Utility marks and excluded callers are distinct mechanisms: utility tagging
removes a method from the candidate list without touching any fan-in value,
while excluded callers change the metric itself (caller sets are computed
without them).
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass, field
from enum import Enum

from .metric import MetricConfig, MetricResult, compute_metric
from .model import CallGraph, MethodKind, library_key


class ThresholdMode(str, Enum):
    ABSOLUTE = "absolute"
    TOP_PERCENT = "topPercent"


class AccessorFilter(str, Enum):
    OFF = "off"
    BY_NAME = "byName"
    BY_BODY = "byBody"
    BOTH = "both"


class FilterTag(str, Enum):
    BELOW_THRESHOLD = "belowThreshold"
    ACCESSOR_NAME = "accessorName"
    ACCESSOR_BODY = "accessorBody"
    UTILITY = "utility"
    LIBRARY = "library"


@dataclass(frozen=True)
class ExclusionConfig:
    """User-marked utilities (callee side) and excluded callers, each
    selectable by type, package, or individual method."""

    utility_types: frozenset[str] = frozenset()
    utility_packages: frozenset[str] = frozenset()
    utility_methods: frozenset[str] = frozenset()
    excluded_caller_types: frozenset[str] = frozenset()
    excluded_caller_packages: frozenset[str] = frozenset()
    excluded_caller_methods: frozenset[str] = frozenset()

    def merged_with(self, **additions: frozenset[str]) -> "ExclusionConfig":
        values = {f: getattr(self, f) for f in self.__dataclass_fields__}
        for name, extra in additions.items():
            values[name] = values[name] | frozenset(extra)
        return ExclusionConfig(**values)


@dataclass(frozen=True)
class FilterConfig:
    threshold_mode: ThresholdMode = ThresholdMode.ABSOLUTE
    absolute_threshold: int = 10
    top_percent: float = 5.0
    accessor_filter: AccessorFilter = AccessorFilter.BOTH
    include_libraries: bool = False
    exclusions: ExclusionConfig = field(default_factory=ExclusionConfig)

    def __post_init__(self) -> None:
        if self.absolute_threshold < 0:
            raise ValueError("absoluteThreshold must be >= 0")
        if not (0 < self.top_percent <= 100):
            raise ValueError("topPercent must be in (0, 100]")


@dataclass(frozen=True)
class CandidateRecord:
    method: str
    display: str
    declaring_type: str | None
    package: str
    fanin: int
    caller_set: frozenset[str]
    filtered_by: frozenset[FilterTag]
    is_library: bool = False

    @property
    def surviving(self) -> bool:
        return not self.filtered_by


def is_accessor_by_name(name: str) -> bool:
    """True for 'get*'/'set*' names where * does not start lowercase."""
    if not (name.startswith("get") or name.startswith("set")):
        return False
    return len(name) == 3 or not name[3].islower()


def resolve_method_selectors(
    g: CallGraph,
    types: frozenset[str] | set[str],
    packages: frozenset[str] | set[str],
    methods: frozenset[str] | set[str],
) -> tuple[frozenset[str], list[str]]:
    """Expand type/package/method selectors to method ids; unresolved
    selectors become warnings, never errors."""
    warnings: list[str] = []
    selected: set[str] = set()
    by_type: dict[str, list[str]] = defaultdict(list)
    by_package: dict[str, list[str]] = defaultdict(list)
    for mid, m in g.methods.items():
        by_type[m.declaring_type].append(mid)
        by_package[g.types[m.declaring_type].package].append(mid)
    library_keys = {library_key(c.name, c.arity) for c in g.library_calls}
    for t in sorted(types):
        if t in by_type:
            selected.update(by_type[t])
        elif t in g.types:
            pass  # type exists but declares no methods
        else:
            warnings.append(f"unresolved type selector {t!r}")
    for p in sorted(packages):
        if p in by_package:
            selected.update(by_package[p])
        else:
            warnings.append(f"unresolved package selector {p!r}")
    for m in sorted(methods):
        if m in g.methods or m in library_keys:
            selected.add(m)
        else:
            warnings.append(f"unresolved method selector {m!r}")
    return frozenset(selected), warnings


def _cut_ids(fanins: dict[str, int], cfg: FilterConfig) -> tuple[set[str], int]:
    """Ids passing the threshold, plus the effective cut value."""
    if cfg.threshold_mode is ThresholdMode.ABSOLUTE:
        cut = cfg.absolute_threshold
        return {mid for mid, f in fanins.items() if f >= cut}, cut
    if not fanins:
        return set(), 0
    ranked = sorted(fanins.items(), key=lambda kv: (-kv[1], kv[0]))
    k = math.ceil(len(ranked) * cfg.top_percent / 100)
    cut = ranked[k - 1][1]
    # Boundary ties are all kept.
    return {mid for mid, f in fanins.items() if f >= cut}, cut


def threshold_cut(results: MetricResult, cfg: FilterConfig) -> set[str]:
    """Methods whose fan-in passes the configured threshold."""
    ids, _ = _cut_ids(results.fanin_of, cfg)
    return ids


def utility_hints(g: CallGraph) -> dict[str, list[str]]:
    """Name-based utility suggestions ('util' in the name). Hints only:
    nothing is filtered until the user marks it."""
    types = [tid for tid, t in sorted(g.types.items()) if "util" in t.simple_name.lower()]
    methods = [mid for mid, m in sorted(g.methods.items())
               if m.kind is not MethodKind.CONSTRUCTOR and "util" in m.name.lower()]
    return {"types": types, "methods": methods}


def candidate_list(
    g: CallGraph,
    cfg: FilterConfig,
    diagnostics: list[str] | None = None,
    metric: MetricResult | None = None,
    include_hidden_libraries: bool = False,
) -> list[CandidateRecord]:
    """One record per method (plus library callees when included), tagged
    with every applicable filter; sorted by fan-in descending, name ascending.

    `metric`, when given, must have been computed with this config's
    excluded callers. `include_hidden_libraries` additionally emits library
    records tagged `library` while the config excludes them (display use).
    """
    warnings: list[str] = []
    excluded, w = resolve_method_selectors(
        g, cfg.exclusions.excluded_caller_types,
        cfg.exclusions.excluded_caller_packages,
        cfg.exclusions.excluded_caller_methods)
    warnings += [f"excluded-caller selector: {msg}" for msg in w]
    if metric is None:
        metric = compute_metric(g, MetricConfig(excluded_callers=excluded))
    utility_ids, w = resolve_method_selectors(
        g, cfg.exclusions.utility_types, cfg.exclusions.utility_packages,
        cfg.exclusions.utility_methods)
    warnings += [f"utility selector: {msg}" for msg in w]
    if diagnostics is not None:
        diagnostics.extend(warnings)

    lib_callers: dict[str, set[str]] = defaultdict(set)
    lib_names: dict[str, tuple[str, int]] = {}
    for call in g.library_calls:
        key = library_key(call.name, call.arity)
        lib_names[key] = (call.name, call.arity)
        if call.caller not in excluded:
            lib_callers[key].add(call.caller)
        else:
            lib_callers.setdefault(key, set())

    analyzed_fanins = dict(metric.fanin_of)
    if cfg.include_libraries:
        for key in lib_names:
            analyzed_fanins[key] = len(lib_callers[key])
    cut_set, cut_value = _cut_ids(analyzed_fanins, cfg)

    check_name = cfg.accessor_filter in (AccessorFilter.BY_NAME, AccessorFilter.BOTH)
    check_body = cfg.accessor_filter in (AccessorFilter.BY_BODY, AccessorFilter.BOTH)

    records: list[CandidateRecord] = []
    for mid, m in g.methods.items():
        tags: set[FilterTag] = set()
        if mid not in cut_set:
            tags.add(FilterTag.BELOW_THRESHOLD)
        if m.kind is not MethodKind.CONSTRUCTOR:
            if check_name and is_accessor_by_name(m.name):
                tags.add(FilterTag.ACCESSOR_NAME)
            if check_body and m.accessor_shape is not None:
                tags.add(FilterTag.ACCESSOR_BODY)
        if mid in utility_ids:
            tags.add(FilterTag.UTILITY)
        records.append(CandidateRecord(
            method=mid, display=g.method_display(mid),
            declaring_type=m.declaring_type,
            package=g.types[m.declaring_type].package,
            fanin=metric.fanin_of[mid],
            caller_set=metric.caller_sets[mid],
            filtered_by=frozenset(tags),
        ))

    if cfg.include_libraries or include_hidden_libraries:
        hidden = not cfg.include_libraries
        for key in sorted(lib_names):
            name, arity = lib_names[key]
            fanin = len(lib_callers[key])
            tags = set()
            if hidden:
                tags.add(FilterTag.LIBRARY)
            below = (fanin < cut_value) if hidden else (key not in cut_set)
            if below:
                tags.add(FilterTag.BELOW_THRESHOLD)
            if check_name and is_accessor_by_name(name):
                tags.add(FilterTag.ACCESSOR_NAME)
            if key in utility_ids:
                tags.add(FilterTag.UTILITY)
            records.append(CandidateRecord(
                method=key, display=g.method_display(key),
                declaring_type=None, package="", fanin=fanin,
                caller_set=frozenset(lib_callers[key]),
                filtered_by=frozenset(tags), is_library=True,
            ))

    records.sort(key=lambda r: (-r.fanin, r.display, r.method))
    return records


# -- wire forms shared by the marks file and the service config API ------------


def filter_to_wire(cfg: FilterConfig) -> dict:
    return {
        "thresholdMode": cfg.threshold_mode.value,
        "absoluteThreshold": cfg.absolute_threshold,
        "topPercent": cfg.top_percent,
        "accessorFilter": cfg.accessor_filter.value,
        "includeLibraries": cfg.include_libraries,
    }


def filter_from_wire(doc: dict, exclusions: ExclusionConfig | None = None) -> FilterConfig:
    base = FilterConfig()
    return FilterConfig(
        threshold_mode=ThresholdMode(doc.get("thresholdMode", base.threshold_mode.value)),
        absolute_threshold=int(doc.get("absoluteThreshold", base.absolute_threshold)),
        top_percent=float(doc.get("topPercent", base.top_percent)),
        accessor_filter=AccessorFilter(doc.get("accessorFilter", base.accessor_filter.value)),
        include_libraries=bool(doc.get("includeLibraries", base.include_libraries)),
        exclusions=exclusions if exclusions is not None else ExclusionConfig(),
    )


def exclusions_to_wire(ex: ExclusionConfig) -> dict:
    return {
        "utilityTypes": sorted(ex.utility_types),
        "utilityPackages": sorted(ex.utility_packages),
        "utilityMethods": sorted(ex.utility_methods),
        "excludedCallers": {
            "types": sorted(ex.excluded_caller_types),
            "packages": sorted(ex.excluded_caller_packages),
            "methods": sorted(ex.excluded_caller_methods),
        },
    }


def exclusions_from_wire(doc: dict) -> ExclusionConfig:
    callers = doc.get("excludedCallers", {})
    return ExclusionConfig(
        utility_types=frozenset(doc.get("utilityTypes", ())),
        utility_packages=frozenset(doc.get("utilityPackages", ())),
        utility_methods=frozenset(doc.get("utilityMethods", ())),
        excluded_caller_types=frozenset(callers.get("types", ())),
        excluded_caller_packages=frozenset(callers.get("packages", ())),
        excluded_caller_methods=frozenset(callers.get("methods", ())),
    )
