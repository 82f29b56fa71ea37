"""Name/type resolution: from parsed units to a validated CallGraph.

Resolution is (name, arity)-exact: the subset rejects same-name same-arity
overloads within a type, so every call resolves to at most one declaration
per type. Receiver static types come from declared types of locals, params,
and fields; chained calls use the declared return type of the resolved
callee, nearest ancestor first.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path

from ..model import (AccessorShape, CallGraph, CallSite, Dispatch, LibraryCall,
                     MethodDecl, MethodKind, TypeDecl, TypeKind)
from . import ast as A
from .parser import parse_unit


class FrontendError(Exception):
    """Corpus-level error that prevents call-graph emission."""


@dataclass(frozen=True)
class ResolutionDiagnostic:
    severity: str  # warning | error
    message: str
    loc: str | None = None

    def __str__(self) -> str:
        where = f" at {self.loc}" if self.loc else ""
        return f"{self.severity}: {self.message}{where}"


def classify_accessor_shape(method: A.MethodAst | A.CtorAst,
                            visible_fields: set[str]) -> AccessorShape | None:
    """Body-shape accessor classification.

    getter: zero args, body is exactly `return f;` for a field f.
    setter: one arg, body is `f = param;` optionally followed by a bare
    `return;` or `return this;`.
    """
    body = method.body
    if body is None or isinstance(method, A.CtorAst):
        return None
    stmts = body.statements
    params = method.params
    if not params and len(stmts) == 1 and isinstance(stmts[0], A.Return):
        value = stmts[0].value
        if isinstance(value, A.Name) and value.ident in visible_fields:
            return AccessorShape.GETTER
        if (isinstance(value, A.FieldAccess) and isinstance(value.obj, A.This)
                and value.name in visible_fields):
            return AccessorShape.GETTER
        return None
    if len(params) == 1 and 1 <= len(stmts) <= 2 and isinstance(stmts[0], A.ExprStmt):
        assign = stmts[0].expr
        if not (isinstance(assign, A.Assign) and assign.op == "="):
            return None
        pname = params[0][1]
        target = assign.target
        if isinstance(target, A.Name):
            field_target = target.ident != pname and target.ident in visible_fields
        elif isinstance(target, A.FieldAccess) and isinstance(target.obj, A.This):
            field_target = target.name in visible_fields
        else:
            field_target = False
        if not field_target:
            return None
        if not (isinstance(assign.value, A.Name) and assign.value.ident == pname):
            return None
        if len(stmts) == 1:
            return AccessorShape.SETTER
        tail = stmts[1]
        if isinstance(tail, A.Return) and (tail.value is None
                                           or isinstance(tail.value, A.This)):
            return AccessorShape.SETTER
        return None
    return None


@dataclass
class _Decl:
    mid: str
    kind: MethodKind
    return_type: str


class _Resolver:
    def __init__(self, units: list[A.Unit]) -> None:
        self.units = units
        self.diagnostics: list[ResolutionDiagnostic] = []
        self.types: dict[str, TypeDecl] = {}
        self.type_asts: dict[str, A.TypeAst] = {}
        self.simple_names: dict[str, str] = {}
        self.supers: dict[str, tuple[str, ...]] = {}
        self.fields: dict[str, dict[str, str]] = {}
        self.methods: dict[str, MethodDecl] = {}
        self.decls: dict[tuple[str, str, int], _Decl] = {}
        self.ctors: dict[tuple[str, int], str] = {}
        self.declared_ctor_types: set[str] = set()
        self.calls: list[CallSite] = []
        self.library_calls: list[LibraryCall] = []
        self.bodies: list[tuple[str, str, A.Block, dict[str, str]]] = []

    def warn(self, message: str, loc: A.Loc) -> None:
        self.diagnostics.append(ResolutionDiagnostic("warning", message, str(loc)))

    # -- phase 1: type and member tables --

    def collect(self) -> None:
        for unit in self.units:
            for t in unit.types:
                tid = f"{unit.package}.{t.name}" if unit.package else t.name
                if t.name in self.simple_names or tid in self.types:
                    raise FrontendError(
                        f"duplicate type name {t.name!r} in corpus ({t.loc})")
                self.simple_names[t.name] = tid
                self.type_asts[tid] = t
                self.types[tid] = TypeDecl(
                    id=tid, name=tid,
                    kind=TypeKind.CLASS if t.kind == "class" else TypeKind.INTERFACE,
                    supertypes=(),  # filled after all types are known
                    package=unit.package,
                )
        for tid, t in self.type_asts.items():
            supers = tuple(self.resolve_type(n) or n for n in (*t.extends, *t.implements))
            self.types[tid] = TypeDecl(
                id=tid, name=tid, kind=self.types[tid].kind,
                supertypes=supers, package=self.types[tid].package,
            )
            self.supers[tid] = tuple(s for s in supers if s in self.type_asts)
            self.fields[tid] = {}
            for f in t.fields:
                for name in f.names:
                    self.fields[tid][name] = f.type_name

        for tid, t in self.type_asts.items():
            seen: set[tuple[str, int]] = set()
            for m in t.methods:
                arity = len(m.params)
                if (m.name, arity) in seen:
                    raise FrontendError(
                        f"overload {m.name}/{arity} declared twice in {tid} ({m.loc})")
                seen.add((m.name, arity))
                if m.body is None:
                    kind = MethodKind.ABSTRACT_DECL
                elif m.is_static:
                    kind = MethodKind.STATIC
                else:
                    kind = MethodKind.INSTANCE
                mid = f"{tid}::{m.name}/{arity}"
                shape = None
                if m.body is not None:
                    shape = classify_accessor_shape(m, self.visible_fields(tid))
                self.methods[mid] = MethodDecl(
                    id=mid, declaring_type=tid, name=m.name, arity=arity,
                    param_types=tuple(p[0] for p in m.params), kind=kind,
                    has_body=m.body is not None, accessor_shape=shape,
                    loc=str(m.loc),
                )
                self.decls[(tid, m.name, arity)] = _Decl(mid, kind, m.return_type)
                if m.body is not None:
                    self.bodies.append((mid, tid, m.body,
                                        {p[1]: p[0] for p in m.params}))
            ctor_seen: set[int] = set()
            for c in t.ctors:
                arity = len(c.params)
                if arity in ctor_seen:
                    raise FrontendError(
                        f"constructor {t.name}/{arity} declared twice ({c.loc})")
                ctor_seen.add(arity)
                mid = f"{tid}::<init>/{arity}"
                self.methods[mid] = MethodDecl(
                    id=mid, declaring_type=tid, name=t.name, arity=arity,
                    param_types=tuple(p[0] for p in c.params),
                    kind=MethodKind.CONSTRUCTOR, has_body=True, loc=str(c.loc),
                )
                self.ctors[(tid, arity)] = mid
                self.declared_ctor_types.add(tid)
                self.bodies.append((mid, tid, c.body, {p[1]: p[0] for p in c.params}))

    def resolve_type(self, name: str) -> str | None:
        if name in self.type_asts:
            return name
        return self.simple_names.get(name)

    def ancestors(self, tid: str, include_self: bool) -> list[str]:
        seen = {tid}
        queue: deque[str] = deque([tid] if include_self else ())
        if not include_self:
            for s in self.supers.get(tid, ()):
                if s not in seen:
                    seen.add(s)
                    queue.append(s)
        out = []
        while queue:
            cur = queue.popleft()
            out.append(cur)
            for s in self.supers.get(cur, ()):
                if s not in seen:
                    seen.add(s)
                    queue.append(s)
        return out

    def visible_fields(self, tid: str) -> set[str]:
        names: set[str] = set()
        for t in self.ancestors(tid, include_self=True):
            names.update(self.fields.get(t, ()))
        return names

    def field_type(self, tid: str, name: str) -> str | None:
        for t in self.ancestors(tid, include_self=True):
            ftype = self.fields.get(t, {}).get(name)
            if ftype is not None:
                return ftype
        return None

    def lookup(self, tid: str, name: str, arity: int, strict: bool = False) -> _Decl | None:
        for t in self.ancestors(tid, include_self=not strict):
            decl = self.decls.get((t, name, arity))
            if decl is not None:
                return decl
        return None

    # -- phase 2: call extraction --

    def extract_calls(self) -> None:
        for mid, tid, body, params in self.bodies:
            _BodyWalker(self, mid, tid, params).walk(body)

    def build(self) -> CallGraph:
        self.collect()
        self.extract_calls()
        return CallGraph(self.types.values(), self.methods.values(),
                         self.calls, self.library_calls)


class _BodyWalker:
    """Pre-order, source-ordered walk over one method body.

    Ordinals number the resolved in-corpus call sites; unresolved calls
    become library records and do not consume ordinals.
    """

    def __init__(self, r: _Resolver, mid: str, tid: str, params: dict[str, str]) -> None:
        self.r = r
        self.mid = mid
        self.tid = tid
        self.scopes: list[dict[str, str]] = [dict(params)]
        self.ordinal = 0

    def declare(self, name: str, type_name: str) -> None:
        self.scopes[-1][name] = type_name

    def lookup_var(self, name: str) -> str | None:
        for scope in reversed(self.scopes):
            if name in scope:
                return scope[name]
        return None

    # -- static typing of receiver expressions --

    def static_type(self, e: A.Expr) -> tuple[str, str | None]:
        """Returns ("value"|"type", type id or None)."""
        r = self.r
        if isinstance(e, A.Name):
            var_type = self.lookup_var(e.ident)
            if var_type is not None:
                return ("value", r.resolve_type(var_type))
            field = r.field_type(self.tid, e.ident)
            if field is not None:
                return ("value", r.resolve_type(field))
            as_type = r.resolve_type(e.ident)
            if as_type is not None:
                return ("type", as_type)
            return ("value", None)
        if isinstance(e, A.This):
            return ("value", self.tid)
        if isinstance(e, A.FieldAccess):
            _, base = self.static_type(e.obj)
            if base is None:
                return ("value", None)
            field = r.field_type(base, e.name)
            return ("value", r.resolve_type(field) if field else None)
        if isinstance(e, A.Call):
            decl = self.resolve_call_decl(e)
            if decl is None:
                return ("value", None)
            return ("value", r.resolve_type(decl.return_type))
        if isinstance(e, A.SuperCall):
            decl = r.lookup(self.tid, e.name, len(e.args), strict=True)
            if decl is None:
                return ("value", None)
            return ("value", r.resolve_type(decl.return_type))
        if isinstance(e, A.New):
            return ("value", r.resolve_type(e.type_name))
        if isinstance(e, A.Literal):
            if e.kind == "string":
                return ("value", r.resolve_type("String"))
            return ("value", None)
        if isinstance(e, A.Assign):
            return self.static_type(e.target)
        return ("value", None)

    def resolve_call_decl(self, e: A.Call) -> _Decl | None:
        if e.receiver is None:
            return self.r.lookup(self.tid, e.name, len(e.args))
        _, tid = self.static_type(e.receiver)
        if tid is None:
            return None
        return self.r.lookup(tid, e.name, len(e.args))

    # -- emission --

    def emit(self, name: str, arity: int, receiver: str, dispatch: Dispatch,
             loc: A.Loc) -> None:
        self.r.calls.append(CallSite(
            caller=self.mid, name=name, arity=arity, receiver_type=receiver,
            dispatch=dispatch, ordinal=self.ordinal, loc=str(loc),
        ))
        self.ordinal += 1

    def emit_library(self, name: str, arity: int, loc: A.Loc, what: str = "call") -> None:
        self.r.library_calls.append(LibraryCall(self.mid, name, arity, str(loc)))
        self.r.warn(f"unresolved {what} {name}/{arity}", loc)

    def visit_call(self, e: A.Call) -> None:
        arity = len(e.args)
        if e.receiver is None:
            decl = self.r.lookup(self.tid, e.name, arity)
            if decl is None:
                self.emit_library(e.name, arity, e.loc)
                return
            dispatch = Dispatch.STATIC if decl.kind is MethodKind.STATIC else Dispatch.VIRTUAL
            self.emit(e.name, arity, self.tid, dispatch, e.loc)
            return
        kind, tid = self.static_type(e.receiver)
        if tid is None:
            self.emit_library(e.name, arity, e.loc)
            return
        decl = self.r.lookup(tid, e.name, arity)
        if decl is None:
            self.emit_library(e.name, arity, e.loc)
            return
        if kind == "type" or decl.kind is MethodKind.STATIC:
            dispatch = Dispatch.STATIC
        else:
            dispatch = Dispatch.VIRTUAL
        self.emit(e.name, arity, tid, dispatch, e.loc)

    def visit_super_call(self, e: A.SuperCall) -> None:
        arity = len(e.args)
        decl = self.r.lookup(self.tid, e.name, arity, strict=True)
        if decl is None:
            self.emit_library(e.name, arity, e.loc, what="super call")
            return
        self.emit(e.name, arity, self.tid, Dispatch.SUPER, e.loc)

    def visit_new(self, e: A.New) -> None:
        arity = len(e.args)
        tid = self.r.resolve_type(e.type_name)
        simple = e.type_name.rsplit(".", 1)[-1]
        if tid is None:
            self.emit_library(simple, arity, e.loc, what="constructor")
            return
        t = self.r.types[tid]
        if t.kind is TypeKind.INTERFACE:
            self.emit_library(simple, arity, e.loc, what="constructor (interface)")
            return
        if (tid, arity) not in self.r.ctors:
            if arity == 0 and tid not in self.r.declared_ctor_types:
                # Implicit default constructor, synthesized on first use.
                mid = f"{tid}::<init>/0"
                self.r.methods[mid] = MethodDecl(
                    id=mid, declaring_type=tid, name=t.simple_name, arity=0,
                    kind=MethodKind.CONSTRUCTOR, has_body=False,
                    loc=str(self.r.type_asts[tid].loc),
                )
                self.r.ctors[(tid, 0)] = mid
            else:
                self.emit_library(simple, arity, e.loc, what="constructor")
                return
        self.emit(simple, arity, tid, Dispatch.CONSTRUCTOR, e.loc)

    # -- traversal --

    def walk(self, block: A.Block) -> None:
        self.walk_stmt(block)

    def walk_stmt(self, s: A.Stmt) -> None:
        if isinstance(s, A.Block):
            self.scopes.append({})
            for st in s.statements:
                self.walk_stmt(st)
            self.scopes.pop()
        elif isinstance(s, A.LocalDecl):
            for name, init in s.declarators:
                self.declare(name, s.type_name)
                if init is not None:
                    self.walk_expr(init)
        elif isinstance(s, A.ExprStmt):
            self.walk_expr(s.expr)
        elif isinstance(s, A.Return):
            if s.value is not None:
                self.walk_expr(s.value)
        elif isinstance(s, A.If):
            self.walk_expr(s.cond)
            self.walk_stmt(s.then)
            if s.orelse is not None:
                self.walk_stmt(s.orelse)
        elif isinstance(s, A.While):
            self.walk_expr(s.cond)
            self.walk_stmt(s.body)
        elif isinstance(s, A.For):
            self.scopes.append({})
            if s.init is not None:
                self.walk_stmt(s.init)
            if s.cond is not None:
                self.walk_expr(s.cond)
            for u in s.update:
                self.walk_expr(u)
            self.walk_stmt(s.body)
            self.scopes.pop()
        elif isinstance(s, A.Throw):
            self.walk_expr(s.expr)
        elif isinstance(s, A.Try):
            self.walk_stmt(s.body)
            for c in s.catches:
                self.scopes.append({c.var: c.type_name})
                self.walk_stmt(c.body)
                self.scopes.pop()
            if s.finally_body is not None:
                self.walk_stmt(s.finally_body)

    def walk_expr(self, e: A.Expr) -> None:
        if isinstance(e, A.Call):
            self.visit_call(e)
            if e.receiver is not None:
                self.walk_expr(e.receiver)
            for a in e.args:
                self.walk_expr(a)
        elif isinstance(e, A.SuperCall):
            self.visit_super_call(e)
            for a in e.args:
                self.walk_expr(a)
        elif isinstance(e, A.New):
            self.visit_new(e)
            for a in e.args:
                self.walk_expr(a)
        elif isinstance(e, A.FieldAccess):
            self.walk_expr(e.obj)
        elif isinstance(e, A.Assign):
            self.walk_expr(e.target)
            self.walk_expr(e.value)
        elif isinstance(e, A.Binary):
            self.walk_expr(e.lhs)
            self.walk_expr(e.rhs)
        elif isinstance(e, A.Unary):
            self.walk_expr(e.operand)


def build_callgraph(units: list[A.Unit]) -> tuple[CallGraph, list[ResolutionDiagnostic]]:
    """Resolve parsed units into a CallGraph plus resolution diagnostics."""
    resolver = _Resolver(units)
    graph = resolver.build()
    return graph, resolver.diagnostics


def collect_sources(directory: str | Path) -> list[A.SourceUnit]:
    """All .java files under directory, recursively, in lexicographic order."""
    root = Path(directory)
    paths = sorted(root.rglob("*.java"), key=lambda p: p.as_posix())
    return [A.SourceUnit(p.as_posix(), p.read_text(encoding="utf-8")) for p in paths]


def graph_from_sources(
    sources: list[A.SourceUnit],
) -> tuple[CallGraph, list[ResolutionDiagnostic]]:
    return build_callgraph([parse_unit(u) for u in sources])


def graph_from_directory(
    directory: str | Path,
) -> tuple[CallGraph, list[ResolutionDiagnostic]]:
    return graph_from_sources(collect_sources(directory))


def count_ncloc(sources: list[A.SourceUnit]) -> int:
    """Non-blank, non-comment source lines across all units."""
    total = 0
    for unit in sources:
        in_block = False
        for line in unit.text.splitlines():
            stripped = line.strip()
            code = []
            i = 0
            while i < len(stripped):
                if in_block:
                    end = stripped.find("*/", i)
                    if end < 0:
                        i = len(stripped)
                    else:
                        in_block = False
                        i = end + 2
                elif stripped.startswith("//", i):
                    break
                elif stripped.startswith("/*", i):
                    in_block = True
                    i += 2
                else:
                    code.append(stripped[i])
                    i += 1
            if any(ch not in " \t" for ch in code):
                total += 1
    return total
