"""Shared builders, a random graph generator, and the brute-force oracle.

The oracle applies the attribution rules literally, per call site, with no
indexing or chain caching: hierarchy reachability is recomputed naively for
every site (fixed-point scan for descendants), so it is an independent
check on the metric engine.
"""

from __future__ import annotations

import random

from fanmine.model import (CallGraph, CallSite, Dispatch, LibraryCall,
                           MethodDecl, MethodKind, TypeDecl, TypeKind)


def T(tid: str, kind: str = "class", supers: tuple[str, ...] = (),
      package: str = "") -> TypeDecl:
    return TypeDecl(id=tid, name=tid, kind=TypeKind(kind),
                    supertypes=tuple(supers), package=package)


def M(tid: str, name: str, arity: int = 0, kind: str = "instance",
      has_body: bool | None = None, shape=None) -> MethodDecl:
    mkind = MethodKind(kind)
    if has_body is None:
        has_body = mkind in (MethodKind.INSTANCE, MethodKind.STATIC,
                             MethodKind.CONSTRUCTOR)
    slot = "<init>" if mkind is MethodKind.CONSTRUCTOR else name
    return MethodDecl(id=f"{tid}::{slot}/{arity}", declaring_type=tid,
                      name=name, arity=arity, kind=mkind, has_body=has_body,
                      accessor_shape=shape)


def C(caller: str, name: str, arity: int, receiver: str, dispatch: str,
      ordinal: int) -> CallSite:
    return CallSite(caller=caller, name=name, arity=arity,
                    receiver_type=receiver, dispatch=Dispatch(dispatch),
                    ordinal=ordinal)


def graph(types, methods, calls=(), library_calls=()) -> CallGraph:
    return CallGraph(types, methods, calls, library_calls)


# -- brute-force oracle ----------------------------------------------------


def _naive_ancestors(g: CallGraph, tid: str) -> set[str]:
    out: set[str] = set()
    frontier = [tid]
    while frontier:
        t = frontier.pop()
        for s in g.types[t].supertypes:
            if s in g.types and s not in out:
                out.add(s)
                frontier.append(s)
    return out


def _naive_descendants(g: CallGraph, tid: str) -> set[str]:
    out: set[str] = set()
    changed = True
    while changed:
        changed = False
        for t, decl in g.types.items():
            if t == tid or t in out:
                continue
            for s in decl.supertypes:
                if s == tid or s in out:
                    out.add(t)
                    changed = True
                    break
    return out


def _naive_chain(g: CallGraph, tid: str) -> set[str]:
    return {tid} | _naive_ancestors(g, tid) | _naive_descendants(g, tid)


def _decl_in(g: CallGraph, tid: str, name: str, arity: int) -> str | None:
    found = [mid for mid, m in g.methods.items()
             if m.kind is not MethodKind.CONSTRUCTOR
             and m.declaring_type == tid and m.name == name and m.arity == arity]
    return min(found) if found else None


def _naive_nearest(g: CallGraph, tid: str, name: str, arity: int,
                   strict: bool) -> str | None:
    # Layered breadth-first search; within a layer, declared supertype order.
    if strict:
        layer = [s for s in g.types[tid].supertypes if s in g.types]
        seen = {tid, *layer}
    else:
        layer = [tid]
        seen = {tid}
    while layer:
        for t in layer:
            mid = _decl_in(g, t, name, arity)
            if mid is not None:
                return mid
        nxt: list[str] = []
        for t in layer:
            for s in g.types[t].supertypes:
                if s in g.types and s not in seen:
                    seen.add(s)
                    nxt.append(s)
        layer = nxt
    return None


def brute_force_metric(g: CallGraph, excluded: frozenset[str] = frozenset(),
                       include_self_recursion: bool = True) -> dict[str, set[str]]:
    sets: dict[str, set[str]] = {mid: set() for mid in g.methods}
    for site in g.calls:
        if site.caller in excluded:
            continue
        targets: list[str] = []
        if site.dispatch is Dispatch.VIRTUAL:
            chain = _naive_chain(g, site.receiver_type)
            targets = [mid for mid, m in g.methods.items()
                       if m.kind is not MethodKind.CONSTRUCTOR
                       and m.name == site.name and m.arity == site.arity
                       and m.declaring_type in chain]
        elif site.dispatch is Dispatch.SUPER:
            caller_type = g.methods[site.caller].declaring_type
            hit = _naive_nearest(g, caller_type, site.name, site.arity, strict=True)
            targets = [hit] if hit else []
        elif site.dispatch is Dispatch.STATIC:
            hit = _naive_nearest(g, site.receiver_type, site.name, site.arity,
                                 strict=False)
            targets = [hit] if hit else []
        else:
            hits = [mid for mid, m in g.methods.items()
                    if m.kind is MethodKind.CONSTRUCTOR
                    and m.declaring_type == site.receiver_type
                    and m.arity == site.arity]
            targets = [min(hits)] if hits else []
        for mid in targets:
            sets[mid].add(site.caller)
    if not include_self_recursion:
        for mid, callers in sets.items():
            callers.discard(mid)
    return sets


# -- random graph generator --------------------------------------------------


_NAMES = ["m0", "m1", "m2", "alpha", "omega"]


def random_graph(rng: random.Random) -> CallGraph:
    """Random valid graph within the acceptance envelope:
    <= 8 types, <= 20 methods, <= 60 calls, all dispatch kinds."""
    n_types = rng.randint(1, 8)
    types = []
    for i in range(n_types):
        supers: list[str] = []
        for _ in range(rng.randint(0, 2)):
            if i > 0:
                cand = f"T{rng.randrange(i)}"
                if cand not in supers:
                    supers.append(cand)
        if rng.random() < 0.08:
            supers.append("Missing")  # external supertype path
        types.append(T(f"T{i}", rng.choice(["class", "class", "interface"]),
                       tuple(supers), package=rng.choice(["pa", "pb"])))

    methods: list[MethodDecl] = []
    used: set[tuple] = set()
    bodied: list[str] = []
    for _ in range(rng.randint(0, 20)):
        tid = f"T{rng.randrange(n_types)}"
        if rng.random() < 0.15:
            arity = rng.randint(0, 2)
            if (tid, "<init>", arity) in used:
                continue
            used.add((tid, "<init>", arity))
            has_body = rng.random() < 0.85
            m = MethodDecl(id=f"{tid}::<init>/{arity}", declaring_type=tid,
                           name=tid, arity=arity, kind=MethodKind.CONSTRUCTOR,
                           has_body=has_body)
        else:
            name = rng.choice(_NAMES)
            arity = rng.randint(0, 2)
            if (tid, name, arity) in used:
                continue
            used.add((tid, name, arity))
            kind = rng.choice([MethodKind.INSTANCE, MethodKind.INSTANCE,
                               MethodKind.STATIC, MethodKind.ABSTRACT_DECL])
            has_body = kind is not MethodKind.ABSTRACT_DECL and rng.random() < 0.9
            m = MethodDecl(id=f"{tid}::{name}/{arity}", declaring_type=tid,
                           name=name, arity=arity, kind=kind, has_body=has_body)
        methods.append(m)
        if m.has_body:
            bodied.append(m.id)

    calls: list[CallSite] = []
    ordinals: dict[str, int] = {}
    if bodied:
        for _ in range(rng.randint(0, 60)):
            caller = rng.choice(bodied)
            dispatch = rng.choice([Dispatch.VIRTUAL, Dispatch.VIRTUAL,
                                   Dispatch.SUPER, Dispatch.STATIC,
                                   Dispatch.CONSTRUCTOR])
            caller_type = caller.split("::")[0]
            if dispatch is Dispatch.SUPER:
                receiver = caller_type
            else:
                receiver = f"T{rng.randrange(n_types)}"
            if dispatch is Dispatch.CONSTRUCTOR:
                name = receiver
            else:
                name = rng.choice(_NAMES)
            ordinal = ordinals.get(caller, 0)
            ordinals[caller] = ordinal + 1
            calls.append(CallSite(caller=caller, name=name,
                                  arity=rng.randint(0, 2),
                                  receiver_type=receiver, dispatch=dispatch,
                                  ordinal=ordinal))
    library_calls = []
    if bodied and rng.random() < 0.3:
        library_calls.append(LibraryCall(rng.choice(bodied), "extern", 1))
    return CallGraph(types, methods, calls, library_calls)
