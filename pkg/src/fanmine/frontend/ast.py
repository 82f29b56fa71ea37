"""AST for the Java-like subset. Every node carries a source location."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Loc:
    path: str
    line: int
    col: int = 0

    def __str__(self) -> str:
        return f"{self.path}:{self.line}"


# -- expressions ---------------------------------------------------------------

@dataclass(frozen=True)
class Name:
    ident: str
    loc: Loc


@dataclass(frozen=True)
class This:
    loc: Loc


@dataclass(frozen=True)
class Literal:
    kind: str  # int | string | char | boolean | null
    text: str
    loc: Loc


@dataclass(frozen=True)
class FieldAccess:
    obj: "Expr"
    name: str
    loc: Loc


@dataclass(frozen=True)
class Call:
    receiver: "Expr | None"  # None for bare calls
    name: str
    args: tuple["Expr", ...]
    loc: Loc


@dataclass(frozen=True)
class SuperCall:
    name: str
    args: tuple["Expr", ...]
    loc: Loc


@dataclass(frozen=True)
class New:
    type_name: str
    args: tuple["Expr", ...]
    loc: Loc


@dataclass(frozen=True)
class Assign:
    target: "Expr"
    op: str  # = += -= *= /=
    value: "Expr"
    loc: Loc


@dataclass(frozen=True)
class Binary:
    op: str
    lhs: "Expr"
    rhs: "Expr"
    loc: Loc


@dataclass(frozen=True)
class Unary:
    op: str
    operand: "Expr"
    loc: Loc


Expr = Name | This | Literal | FieldAccess | Call | SuperCall | New | Assign | Binary | Unary


# -- statements ----------------------------------------------------------------

@dataclass(frozen=True)
class Block:
    statements: tuple["Stmt", ...]
    loc: Loc


@dataclass(frozen=True)
class LocalDecl:
    type_name: str
    declarators: tuple[tuple[str, Expr | None], ...]
    loc: Loc


@dataclass(frozen=True)
class ExprStmt:
    expr: Expr
    loc: Loc


@dataclass(frozen=True)
class Return:
    value: Expr | None
    loc: Loc


@dataclass(frozen=True)
class If:
    cond: Expr
    then: "Stmt"
    orelse: "Stmt | None"
    loc: Loc


@dataclass(frozen=True)
class While:
    cond: Expr
    body: "Stmt"
    loc: Loc


@dataclass(frozen=True)
class For:
    init: "Stmt | None"
    cond: Expr | None
    update: tuple[Expr, ...]
    body: "Stmt"
    loc: Loc


@dataclass(frozen=True)
class Throw:
    expr: Expr
    loc: Loc


@dataclass(frozen=True)
class Catch:
    type_name: str
    var: str
    body: Block
    loc: Loc


@dataclass(frozen=True)
class Try:
    body: Block
    catches: tuple[Catch, ...]
    finally_body: Block | None
    loc: Loc


Stmt = Block | LocalDecl | ExprStmt | Return | If | While | For | Throw | Try


# -- declarations --------------------------------------------------------------

@dataclass(frozen=True)
class FieldAst:
    type_name: str
    names: tuple[str, ...]
    is_static: bool
    loc: Loc


@dataclass(frozen=True)
class MethodAst:
    name: str
    return_type: str
    params: tuple[tuple[str, str], ...]  # (type name, param name)
    body: Block | None
    is_static: bool
    is_abstract: bool
    loc: Loc


@dataclass(frozen=True)
class CtorAst:
    name: str
    params: tuple[tuple[str, str], ...]
    body: Block
    loc: Loc


@dataclass(frozen=True)
class TypeAst:
    kind: str  # class | interface
    name: str
    extends: tuple[str, ...]
    implements: tuple[str, ...]
    fields: tuple[FieldAst, ...]
    methods: tuple[MethodAst, ...]
    ctors: tuple[CtorAst, ...]
    loc: Loc


@dataclass(frozen=True)
class Unit:
    path: str
    package: str
    types: tuple[TypeAst, ...]


@dataclass(frozen=True)
class SourceUnit:
    path: str
    text: str
