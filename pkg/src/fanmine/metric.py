"""Fan-in metric over the call graph.

Attribution rules per dispatch kind:
  virtual      caller is added to every (name, arity) declaration in the
               hierarchy chain of the receiver's static type, so abstract
               declarations high in the hierarchy accumulate callers;
  super        exactly the nearest strict-ancestor declaration;
  static       the nearest at-or-above declaration;
  constructor  the exact constructor.

Fan-in counts distinct caller *bodies*: a body calling the same target
twice contributes once.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .model import CallGraph, CallSite, Dispatch, GraphError


@dataclass(frozen=True)
class MetricConfig:
    excluded_callers: frozenset[str] = frozenset()
    include_self_recursion: bool = True


@dataclass
class MetricResult:
    caller_sets: dict[str, frozenset[str]]
    fanin_of: dict[str, int]
    diagnostics: list[str] = field(default_factory=list)


def site_targets(g: CallGraph, site: CallSite) -> tuple[str, ...]:
    """Method ids a call site contributes a caller to (may be empty)."""
    if site.dispatch is Dispatch.VIRTUAL:
        return tuple(sorted(g.declared_in_chain(site.receiver_type, site.name,
                                                site.arity)))
    if site.dispatch is Dispatch.SUPER:
        caller_type = g.methods[site.caller].declaring_type
        target = g.nearest_declaration(caller_type, site.name, site.arity, strict=True)
        return (target,) if target is not None else ()
    if site.dispatch is Dispatch.STATIC:
        target = g.nearest_declaration(site.receiver_type, site.name, site.arity)
        return (target,) if target is not None else ()
    target = g.constructor_of(site.receiver_type, site.arity)
    return (target,) if target is not None else ()


def compute_metric(g: CallGraph, cfg: MetricConfig | None = None) -> MetricResult:
    """Caller sets and fan-in values for every method in the graph."""
    cfg = cfg or MetricConfig()
    unknown = cfg.excluded_callers - g.methods.keys()
    if unknown:
        raise GraphError(f"excluded callers not in graph: {sorted(unknown)}")

    sets: dict[str, set[str]] = {mid: set() for mid in g.methods}
    diagnostics: list[str] = []
    target_cache: dict[tuple, tuple[str, ...]] = {}

    for site in g.calls:
        if site.caller in cfg.excluded_callers:
            continue
        if site.dispatch is Dispatch.SUPER:
            key = (site.dispatch, g.methods[site.caller].declaring_type,
                   site.name, site.arity)
        else:
            key = (site.dispatch, site.receiver_type, site.name, site.arity)
        targets = target_cache.get(key)
        if targets is None:
            targets = site_targets(g, site)
            target_cache[key] = targets
        if not targets:
            diagnostics.append(
                f"{site.dispatch.value} call {site.name}/{site.arity} from "
                f"{site.caller} has no matching declaration; site skipped")
            continue
        for mid in targets:
            sets[mid].add(site.caller)

    if not cfg.include_self_recursion:
        for mid, callers in sets.items():
            callers.discard(mid)

    caller_sets = {mid: frozenset(callers) for mid, callers in sets.items()}
    fanin_of = {mid: len(callers) for mid, callers in caller_sets.items()}
    return MetricResult(caller_sets, fanin_of, diagnostics)


def lifted_fanin(g: CallGraph, result: MetricResult, level: str, mid: str) -> int:
    """Fan-in with the call relation lifted to class or package granularity."""
    if level not in ("class", "package"):
        raise ValueError(f"level must be 'class' or 'package', got {level!r}")
    if mid not in result.caller_sets:
        raise GraphError(f"unknown method id {mid!r}")
    owners = {g.methods[c].declaring_type for c in result.caller_sets[mid]}
    if level == "class":
        return len(owners)
    return len({g.types[t].package for t in owners})
