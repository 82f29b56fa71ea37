"""Language-neutral call-graph model: types, methods, call sites, subtype queries.

A CallGraph is immutable once constructed; construction validates every
invariant (id uniqueness, acyclic supertype graph, dense call ordinals) and
canonicalizes ordering so that serialization is deterministic. All queries
are pure.
"""

from __future__ import annotations

import json
from collections import defaultdict, deque
from dataclasses import dataclass
from enum import Enum
from typing import Iterable

CALLGRAPH_FORMAT = "fanin-callgraph/1"


class GraphError(ValueError):
    """Raised for malformed documents and invariant violations."""


class TypeKind(str, Enum):
    CLASS = "class"
    INTERFACE = "interface"


class MethodKind(str, Enum):
    INSTANCE = "instance"
    STATIC = "static"
    CONSTRUCTOR = "constructor"
    ABSTRACT_DECL = "abstractDecl"


class Dispatch(str, Enum):
    VIRTUAL = "virtual"
    SUPER = "super"
    STATIC = "static"
    CONSTRUCTOR = "constructor"


class AccessorShape(str, Enum):
    GETTER = "getter"
    SETTER = "setter"


@dataclass(frozen=True)
class TypeDecl:
    """A class or interface node in the subtype graph."""

    id: str
    name: str
    kind: TypeKind
    supertypes: tuple[str, ...] = ()
    package: str = ""

    @property
    def simple_name(self) -> str:
        return self.name.rsplit(".", 1)[-1]


@dataclass(frozen=True)
class MethodDecl:
    """A method, constructor, or abstract declaration."""

    id: str
    declaring_type: str
    name: str
    arity: int
    param_types: tuple[str, ...] = ()
    kind: MethodKind = MethodKind.INSTANCE
    has_body: bool = False
    accessor_shape: AccessorShape | None = None
    loc: str | None = None


@dataclass(frozen=True)
class CallSite:
    """One invocation expression inside a method body."""

    caller: str
    name: str
    arity: int
    receiver_type: str
    dispatch: Dispatch
    ordinal: int
    loc: str | None = None


@dataclass(frozen=True)
class LibraryCall:
    """A call whose (name, arity) resolves to no in-corpus declaration."""

    caller: str
    name: str
    arity: int
    loc: str | None = None


def library_key(name: str, arity: int) -> str:
    """Stable pseudo-id for a library callee."""
    return f"lib:{name}/{arity}"


class CallGraph:
    """Validated, canonically-ordered call graph.

    Equality compares the structural content (types, methods, calls,
    library calls); diagnostics are commentary and excluded.
    """

    def __init__(
        self,
        types: Iterable[TypeDecl],
        methods: Iterable[MethodDecl],
        calls: Iterable[CallSite],
        library_calls: Iterable[LibraryCall] = (),
        diagnostics: Iterable[str] = (),
    ) -> None:
        self.types: dict[str, TypeDecl] = {}
        self.methods: dict[str, MethodDecl] = {}
        self.diagnostics: list[str] = list(diagnostics)

        for t in types:
            if t.id in self.types:
                raise GraphError(f"duplicate type id {t.id!r}")
            self.types[t.id] = t

        self._resolved_supers: dict[str, tuple[str, ...]] = {}
        self._subtypes: dict[str, list[str]] = defaultdict(list)
        for tid in sorted(self.types):
            t = self.types[tid]
            resolved = []
            for sup in t.supertypes:
                if sup in self.types:
                    resolved.append(sup)
                    self._subtypes[sup].append(tid)
                else:
                    self.diagnostics.append(
                        f"external supertype {sup!r} of {t.name} (chain truncated)"
                    )
            self._resolved_supers[tid] = tuple(resolved)
        self._check_acyclic()

        seen_sigs: set[tuple] = set()
        for m in methods:
            if m.id in self.methods:
                raise GraphError(f"duplicate method id {m.id!r}")
            owner = self.types.get(m.declaring_type)
            if owner is None:
                raise GraphError(f"method {m.id!r} declared in unknown type {m.declaring_type!r}")
            if m.kind is MethodKind.ABSTRACT_DECL and m.has_body:
                raise GraphError(f"abstract declaration {m.id!r} cannot have a body")
            if m.kind is MethodKind.CONSTRUCTOR and m.name != owner.simple_name:
                raise GraphError(
                    f"constructor {m.id!r} name {m.name!r} does not match type {owner.simple_name!r}"
                )
            sig = (m.declaring_type, m.name, m.arity, m.param_types, m.kind)
            if sig in seen_sigs:
                raise GraphError(f"duplicate declaration {m.name}/{m.arity} in {owner.name}")
            seen_sigs.add(sig)
            self.methods[m.id] = m

        per_caller: dict[str, list[CallSite]] = defaultdict(list)
        for c in calls:
            caller = self.methods.get(c.caller)
            if caller is None:
                raise GraphError(f"dangling caller id {c.caller!r}")
            if not caller.has_body:
                raise GraphError(f"caller {c.caller!r} has no body")
            if c.receiver_type not in self.types:
                raise GraphError(f"call site references unknown type {c.receiver_type!r}")
            if c.dispatch is Dispatch.SUPER and c.receiver_type != caller.declaring_type:
                raise GraphError(
                    f"super call in {c.caller!r} must use the caller's declaring type as receiver"
                )
            per_caller[c.caller].append(c)
        for caller_id, sites in per_caller.items():
            ordinals = sorted(s.ordinal for s in sites)
            if ordinals != list(range(len(sites))):
                raise GraphError(f"ordinals of caller {caller_id!r} are not dense from 0")

        self.calls: tuple[CallSite, ...] = tuple(
            sorted((c for sites in per_caller.values() for c in sites),
                   key=lambda c: (c.caller, c.ordinal))
        )
        self.library_calls: tuple[LibraryCall, ...] = tuple(
            sorted(library_calls, key=lambda c: (c.caller, c.name, c.arity, c.loc or ""))
        )

        self._calls_by_caller: dict[str, tuple[CallSite, ...]] = {}
        for c in self.calls:
            self._calls_by_caller.setdefault(c.caller, ())
        for caller_id, sites in per_caller.items():
            self._calls_by_caller[caller_id] = tuple(sorted(sites, key=lambda c: c.ordinal))

        self._decl_index: dict[tuple[str, int], tuple[str, ...]] = {}
        by_sig: dict[tuple[str, int], list[str]] = defaultdict(list)
        self._ctor_index: dict[tuple[str, int], str] = {}
        self._decls_by_type: dict[tuple[str, str, int], str] = {}
        for mid in sorted(self.methods):
            m = self.methods[mid]
            if m.kind is MethodKind.CONSTRUCTOR:
                self._ctor_index[(m.declaring_type, m.arity)] = mid
            else:
                by_sig[(m.name, m.arity)].append(mid)
                self._decls_by_type[(m.declaring_type, m.name, m.arity)] = mid
        self._decl_index = {k: tuple(v) for k, v in by_sig.items()}
        self._chain_cache: dict[str, frozenset[str]] = {}

    def _check_acyclic(self) -> None:
        state: dict[str, int] = {}  # 0 visiting, 1 done
        for root in self.types:
            if root in state:
                continue
            stack: list[tuple[str, int]] = [(root, 0)]
            while stack:
                tid, i = stack.pop()
                if i == 0:
                    if state.get(tid) == 0:
                        raise GraphError(f"cyclic supertype graph involving {tid!r}")
                    if state.get(tid) == 1:
                        continue
                    state[tid] = 0
                supers = self._resolved_supers[tid]
                if i < len(supers):
                    stack.append((tid, i + 1))
                    nxt = supers[i]
                    if state.get(nxt) == 0:
                        raise GraphError(f"cyclic supertype graph involving {nxt!r}")
                    if nxt not in state:
                        stack.append((nxt, 0))
                else:
                    state[tid] = 1

    # -- subtype-graph queries -------------------------------------------------

    def supertypes_of(self, tid: str) -> tuple[str, ...]:
        return self._resolved_supers[tid]

    def subtypes_of(self, tid: str) -> tuple[str, ...]:
        return tuple(self._subtypes.get(tid, ()))

    def ancestors(self, tid: str, include_self: bool = False) -> list[str]:
        """Transitive supertypes, nearest first (breadth-first, declared order)."""
        if tid not in self.types:
            raise GraphError(f"unknown type id {tid!r}")
        seen = {tid}
        queue: deque[str] = deque()
        if include_self:
            queue.append(tid)
        else:
            for sup in self._resolved_supers[tid]:
                if sup not in seen:
                    seen.add(sup)
                    queue.append(sup)
        out: list[str] = []
        while queue:
            cur = queue.popleft()
            out.append(cur)
            for sup in self._resolved_supers[cur]:
                if sup not in seen:
                    seen.add(sup)
                    queue.append(sup)
        return out

    def hierarchy_chain(self, tid: str) -> frozenset[str]:
        """The type itself plus all transitive ancestors and descendants.

        Sibling subtrees of any ancestor are excluded.
        """
        cached = self._chain_cache.get(tid)
        if cached is not None:
            return cached
        if tid not in self.types:
            raise GraphError(f"unknown type id {tid!r}")
        chain = {tid}
        queue = deque([tid])
        while queue:
            for sup in self._resolved_supers[queue.popleft()]:
                if sup not in chain:
                    chain.add(sup)
                    queue.append(sup)
        queue = deque([tid])
        while queue:
            for sub in self._subtypes.get(queue.popleft(), ()):
                if sub not in chain:
                    chain.add(sub)
                    queue.append(sub)
        result = frozenset(chain)
        self._chain_cache[tid] = result
        return result

    def declared_in_chain(self, tid: str, name: str, arity: int) -> frozenset[str]:
        """All non-constructor declarations of (name, arity) in the chain of tid."""
        chain = self.hierarchy_chain(tid)
        decls = self._decl_index.get((name, arity), ())
        return frozenset(m for m in decls if self.methods[m].declaring_type in chain)

    def nearest_declaration(self, tid: str, name: str, arity: int,
                            strict: bool = False) -> str | None:
        """First (name, arity) declaration at or above tid, nearest first.

        strict=True starts at the direct supertypes (super-call targeting).
        """
        for t in self.ancestors(tid, include_self=not strict):
            mid = self._decls_by_type.get((t, name, arity))
            if mid is not None:
                return mid
        return None

    def declaration_of(self, tid: str, name: str, arity: int) -> str | None:
        """The non-constructor declaration of (name, arity) in exactly tid."""
        return self._decls_by_type.get((tid, name, arity))

    def constructor_of(self, tid: str, arity: int) -> str | None:
        return self._ctor_index.get((tid, arity))

    def calls_by_caller(self, mid: str) -> tuple[CallSite, ...]:
        return self._calls_by_caller.get(mid, ())

    def method_display(self, mid: str) -> str:
        m = self.methods.get(mid)
        if m is None:
            if mid.startswith("lib:"):
                return mid[len("lib:"):] + " [library]"
            return mid
        owner = self.types[m.declaring_type]
        return f"{owner.name}.{m.name}({', '.join(m.param_types)})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CallGraph):
            return NotImplemented
        return (self.types == other.types and self.methods == other.methods
                and self.calls == other.calls and self.library_calls == other.library_calls)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return (f"CallGraph(types={len(self.types)}, methods={len(self.methods)}, "
                f"calls={len(self.calls)})")


# -- interchange I/O -----------------------------------------------------------


def _require(doc: dict, key: str, where: str):
    if key not in doc:
        raise GraphError(f"malformed document: missing {key!r} in {where}")
    return doc[key]


def _enum(cls, value, where: str):
    try:
        return cls(value)
    except ValueError:
        raise GraphError(f"malformed document: bad {cls.__name__} {value!r} in {where}") from None


def load_graph(document: bytes | str) -> CallGraph:
    """Parse and fully validate a fanin-callgraph/1 document."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as e:
        raise GraphError(f"malformed document: {e}") from None
    if not isinstance(doc, dict) or doc.get("format") != CALLGRAPH_FORMAT:
        raise GraphError(f"malformed document: expected format {CALLGRAPH_FORMAT!r}")

    types = [
        TypeDecl(
            id=_require(t, "id", "type"),
            name=_require(t, "name", "type"),
            kind=_enum(TypeKind, _require(t, "kind", "type"), "type"),
            supertypes=tuple(t.get("supertypes", ())),
            package=t.get("package", ""),
        )
        for t in _require(doc, "types", "document")
    ]
    methods = []
    for m in _require(doc, "methods", "document"):
        shape = m.get("accessorShape")
        methods.append(MethodDecl(
            id=_require(m, "id", "method"),
            declaring_type=_require(m, "type", "method"),
            name=_require(m, "name", "method"),
            arity=int(_require(m, "arity", "method")),
            param_types=tuple(m.get("paramTypes", ())),
            kind=_enum(MethodKind, _require(m, "kind", "method"), "method"),
            has_body=bool(_require(m, "hasBody", "method")),
            accessor_shape=None if shape is None else _enum(AccessorShape, shape, "method"),
            loc=m.get("loc"),
        ))
    calls = [
        CallSite(
            caller=_require(c, "caller", "call"),
            name=_require(c, "name", "call"),
            arity=int(_require(c, "arity", "call")),
            receiver_type=_require(c, "receiverType", "call"),
            dispatch=_enum(Dispatch, _require(c, "dispatch", "call"), "call"),
            ordinal=int(_require(c, "ordinal", "call")),
            loc=c.get("loc"),
        )
        for c in _require(doc, "calls", "document")
    ]
    library_calls = [
        LibraryCall(
            caller=_require(c, "caller", "libraryCall"),
            name=_require(c, "name", "libraryCall"),
            arity=int(_require(c, "arity", "libraryCall")),
            loc=c.get("loc"),
        )
        for c in doc.get("libraryCalls", ())
    ]
    return CallGraph(types, methods, calls, library_calls)


def save_graph(g: CallGraph) -> bytes:
    """Serialize canonically: arrays sorted by id, calls by (caller, ordinal)."""
    doc: dict = {
        "format": CALLGRAPH_FORMAT,
        "types": [
            {
                "id": t.id,
                "name": t.name,
                "kind": t.kind.value,
                "supertypes": list(t.supertypes),
                "package": t.package,
            }
            for t in sorted(g.types.values(), key=lambda t: t.id)
        ],
        "methods": [
            {
                "id": m.id,
                "type": m.declaring_type,
                "name": m.name,
                "arity": m.arity,
                "paramTypes": list(m.param_types),
                "kind": m.kind.value,
                "hasBody": m.has_body,
                "accessorShape": None if m.accessor_shape is None else m.accessor_shape.value,
                "loc": m.loc,
            }
            for m in sorted(g.methods.values(), key=lambda m: m.id)
        ],
        "calls": [
            {
                "caller": c.caller,
                "name": c.name,
                "arity": c.arity,
                "receiverType": c.receiver_type,
                "dispatch": c.dispatch.value,
                "ordinal": c.ordinal,
                "loc": c.loc,
            }
            for c in g.calls
        ],
    }
    if g.library_calls:
        doc["libraryCalls"] = [
            {"caller": c.caller, "name": c.name, "arity": c.arity, "loc": c.loc}
            for c in g.library_calls
        ]
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")
