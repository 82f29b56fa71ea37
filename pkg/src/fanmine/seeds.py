"""Caller analyses for seed triage, plus the persistent seed mark store.

The grouping views support the bottom-up reading of a candidate's callers:
common declaring supertypes (contract refinements), call positions inside
the caller bodies (before/after idioms), and callees shared between the
callers (tangled helper protocols).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from datetime import datetime, timezone
from enum import Enum

from .filtering import (CandidateRecord, ExclusionConfig, FilterConfig,
                        exclusions_from_wire, exclusions_to_wire,
                        filter_from_wire, filter_to_wire)
from .metric import site_targets
from .model import CallGraph, MethodKind

MARKS_FORMAT = "fanin-marks/1"
UNGROUPED = "ungrouped"


class MarkError(ValueError):
    """Invalid mark operation or malformed marks document."""


class SeedStatus(str, Enum):
    CANDIDATE = "candidate"
    SEED = "seed"
    NON_SEED = "nonSeed"


@dataclass(frozen=True)
class SeedMark:
    method: str
    status: SeedStatus
    concern: str = ""
    note: str = ""
    ts: str = ""


@dataclass(frozen=True)
class CallerGrouping:
    target: str
    mode: str  # hierarchy | position | sharedCallees
    groups: tuple[tuple[str, frozenset[str]], ...]


@dataclass(frozen=True)
class PositionFlags:
    caller: str
    is_first: bool
    is_second: bool
    is_before_last: bool
    is_last: bool
    call_count: int


# -- caller analyses -----------------------------------------------------------


def callers_of(g: CallGraph, target: str) -> dict[str, list[int]]:
    """Caller body -> ordinals of its call sites attributed to target."""
    if target not in g.methods:
        raise MarkError(f"unknown method id {target!r}")
    out: dict[str, list[int]] = {}
    for site in g.calls:
        if target in site_targets(g, site):
            out.setdefault(site.caller, []).append(site.ordinal)
    return out


_CAMEL = re.compile(r"[A-Z]?[a-z0-9]+|[A-Z]+(?![a-z])")


def shared_name_token(names: list[str], min_length: int = 4) -> str | None:
    """Longest token (camelCase split, exact equality) common to all names."""
    if not names:
        return None
    token_sets = [
        {t for t in _CAMEL.findall(n) if len(t) >= min_length} for n in names
    ]
    common = set.intersection(*token_sets)
    if not common:
        return None
    return max(sorted(common), key=len)


def _group_key(type_names: list[str], member_method_names: list[str]) -> str:
    key = ", ".join(sorted(type_names))
    token = shared_name_token(member_method_names)
    if token is not None and len(member_method_names) > 1:
        key += f" ~ {token}"
    return key


def group_by_declaring_supertype(g: CallGraph, target: str) -> CallerGrouping:
    """Group callers by the topmost types declaring each caller's signature.

    A caller whose signature is declared only by its own class is left
    ungrouped; the others share a group per topmost-declarer set.
    """
    by_key: dict[frozenset[str], list[str]] = {}
    ungrouped: list[str] = []
    for caller in sorted(callers_of(g, target)):
        m = g.methods[caller]
        if m.kind is MethodKind.CONSTRUCTOR:
            ungrouped.append(caller)
            continue
        chain = g.hierarchy_chain(m.declaring_type)
        declaring = {t for t in chain
                     if g.declaration_of(t, m.name, m.arity) is not None}
        topmost = {t for t in declaring
                   if not any(a in declaring for a in g.ancestors(t))}
        if not topmost or topmost == {m.declaring_type}:
            ungrouped.append(caller)
            continue
        by_key.setdefault(frozenset(topmost), []).append(caller)

    groups: list[tuple[str, frozenset[str]]] = []
    for key_types, members in by_key.items():
        key = _group_key([g.types[t].name for t in key_types],
                         [g.methods[c].name for c in members])
        groups.append((key, frozenset(members)))
    groups.sort(key=lambda kv: (-len(kv[1]), kv[0]))
    if ungrouped:
        groups.append((UNGROUPED, frozenset(ungrouped)))
    return CallerGrouping(target, "hierarchy", tuple(groups))


def call_position_table(g: CallGraph, target: str) -> list[PositionFlags]:
    """Where the calls to target sit in each caller body.

    Positions clamp for short bodies so a single-call body occupies
    first, second, before-last, and last at once.
    """
    rows: list[PositionFlags] = []
    for caller, ordinals in sorted(callers_of(g, target).items()):
        count = len(g.calls_by_caller(caller))
        second = min(1, count - 1)
        before_last = max(count - 2, 0)
        rows.append(PositionFlags(
            caller=caller,
            is_first=any(o == 0 for o in ordinals),
            is_second=any(o == second for o in ordinals),
            is_before_last=any(o == before_last for o in ordinals),
            is_last=any(o == count - 1 for o in ordinals),
            call_count=count,
        ))
    return rows


def group_by_shared_callees(g: CallGraph, target: str,
                            min_shared: int = 1) -> CallerGrouping:
    """Connected components of callers sharing >= min_shared other callees."""
    if min_shared < 1:
        raise ValueError("minShared must be >= 1")
    caller_ids = sorted(callers_of(g, target))
    callee_sets: dict[str, frozenset[str]] = {}
    for caller in caller_ids:
        callees: set[str] = set()
        for site in g.calls_by_caller(caller):
            callees.update(site_targets(g, site))
        callees.discard(target)
        callee_sets[caller] = frozenset(callees)

    adjacency: dict[str, set[str]] = {c: set() for c in caller_ids}
    for i, a in enumerate(caller_ids):
        for b in caller_ids[i + 1:]:
            if len(callee_sets[a] & callee_sets[b]) >= min_shared:
                adjacency[a].add(b)
                adjacency[b].add(a)

    seen: set[str] = set()
    components: list[list[str]] = []
    for start in caller_ids:
        if start in seen:
            continue
        stack, comp = [start], []
        seen.add(start)
        while stack:
            cur = stack.pop()
            comp.append(cur)
            for nxt in adjacency[cur]:
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)
        components.append(sorted(comp))

    groups: list[tuple[str, frozenset[str]]] = []
    ungrouped: list[str] = []
    for comp in components:
        if len(comp) < 2:
            ungrouped.extend(comp)
            continue
        common = frozenset.intersection(*(callee_sets[c] for c in comp))
        if common:
            key = _group_key([g.method_display(m) for m in common],
                             [g.methods[c].name for c in comp])
        else:
            key = "(no common callee)"
        groups.append((key, frozenset(comp)))
    groups.sort(key=lambda kv: (-len(kv[1]), kv[0]))
    if ungrouped:
        groups.append((UNGROUPED, frozenset(sorted(ungrouped))))
    return CallerGrouping(target, "sharedCallees", tuple(groups))


# -- seed mark store -----------------------------------------------------------


def _now_ts() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


@dataclass
class MarkStore:
    """Triage state: seed marks plus the filter/exclusion configuration,
    so a saved session is fully resumable."""

    filter_config: FilterConfig = field(default_factory=FilterConfig)
    marks: dict[str, SeedMark] = field(default_factory=dict)

    def mark(self, method: str, status: SeedStatus | str, concern: str = "",
             note: str = "", known_methods: set[str] | None = None,
             ts: str | None = None) -> SeedMark:
        """Upsert one mark; re-marking a method replaces its previous mark."""
        status = SeedStatus(status)
        if known_methods is not None and method not in known_methods:
            raise MarkError(f"unknown method id {method!r}")
        if status is SeedStatus.SEED and not concern.strip():
            raise MarkError("a seed mark requires a non-empty concern")
        mark = SeedMark(method, status, concern, note, ts if ts is not None else _now_ts())
        self.marks[method] = mark
        return mark

    def status_of(self, method: str) -> SeedStatus:
        mark = self.marks.get(method)
        return mark.status if mark else SeedStatus.CANDIDATE

    def validate_against(self, known_methods: set[str]) -> list[str]:
        return [f"mark references unknown method {m!r}"
                for m in sorted(self.marks) if m not in known_methods]

    def with_exclusions(self, exclusions: ExclusionConfig) -> None:
        self.filter_config = replace(self.filter_config, exclusions=exclusions)


def save_marks(store: MarkStore) -> bytes:
    doc = {
        "format": MARKS_FORMAT,
        "filter": filter_to_wire(store.filter_config),
        "exclusions": exclusions_to_wire(store.filter_config.exclusions),
        "marks": [
            {"method": m.method, "status": m.status.value, "concern": m.concern,
             "note": m.note, "ts": m.ts}
            for _, m in sorted(store.marks.items())
        ],
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def load_marks(document: bytes | str) -> MarkStore:
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as e:
        raise MarkError(f"malformed marks document: {e}") from None
    if not isinstance(doc, dict) or doc.get("format") != MARKS_FORMAT:
        raise MarkError(f"marks format mismatch: expected {MARKS_FORMAT!r}")
    exclusions = exclusions_from_wire(doc.get("exclusions", {}))
    store = MarkStore(filter_config=filter_from_wire(doc.get("filter", {}), exclusions))
    for entry in doc.get("marks", ()):
        try:
            mark = SeedMark(
                method=entry["method"], status=SeedStatus(entry["status"]),
                concern=entry.get("concern", ""), note=entry.get("note", ""),
                ts=entry.get("ts", ""),
            )
        except (KeyError, ValueError) as e:
            raise MarkError(f"malformed mark entry: {e}") from None
        store.marks[mark.method] = mark
    return store


def summary_counts(candidates: list[CandidateRecord],
                   store: MarkStore) -> tuple[int, int, int]:
    """(confirmed seeds, non-seeds, distinct concern labels) over the
    surviving candidates."""
    seeds = non_seeds = 0
    concerns: set[str] = set()
    for record in candidates:
        if not record.surviving:
            continue
        mark = store.marks.get(record.method)
        if mark is None:
            continue
        if mark.status is SeedStatus.SEED:
            seeds += 1
            if mark.concern:
                concerns.add(mark.concern)
        elif mark.status is SeedStatus.NON_SEED:
            non_seeds += 1
    return seeds, non_seeds, len(concerns)
