"""Recursive-descent parser for the Java-like subset.

Grammar (sketch):
  unit      := packageDecl? typeDecl+
  typeDecl  := mods ("class" Id extends? implements? classBody
               | "interface" Id extendsList? ifaceBody)
  member    := mods (ctor | method | field)
  stmt      := block | localDecl | exprStmt | return | if | while | for
               | throw | tryCatch | ";"
  expr      := assignment over || && == != < > <= >= + - * / % ! with
               call / superCall / newExpr / fieldAccess / name / literal atoms

No generics, arrays, nested types, lambdas, or varargs.
"""

from __future__ import annotations

from .ast import (Assign, Binary, Block, Call, Catch, CtorAst, Expr, ExprStmt,
                  FieldAccess, FieldAst, For, If, Literal, Loc, LocalDecl,
                  MethodAst, Name, New, Return, SourceUnit, Stmt, SuperCall,
                  This, Throw, Try, TypeAst, Unary, Unit, While)
from .lexer import MODIFIERS, ParseError, Token, tokenize


class _Parser:
    def __init__(self, tokens: list[Token], path: str) -> None:
        self.toks = tokens
        self.pos = 0
        self.path = path

    # -- token plumbing --

    def peek(self, offset: int = 0) -> Token:
        return self.toks[min(self.pos + offset, len(self.toks) - 1)]

    def next(self) -> Token:
        tok = self.toks[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, kind: str, text: str | None = None) -> bool:
        tok = self.peek()
        return tok.kind == kind and (text is None or tok.text == text)

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        if self.at(kind, text):
            return self.next()
        return None

    def expect(self, kind: str, text: str | None = None) -> Token:
        tok = self.peek()
        if not self.at(kind, text):
            want = text if text is not None else kind
            raise self.error(f"expected {want!r}, found {tok.text or tok.kind!r}", tok)
        return self.next()

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        tok = tok or self.peek()
        return ParseError(message, self.path, tok.line, tok.col)

    def loc(self, tok: Token) -> Loc:
        return Loc(self.path, tok.line, tok.col)

    # -- declarations --

    def parse_unit(self) -> Unit:
        package = ""
        if self.accept("keyword", "package"):
            package = self.qualified_name()
            self.expect("punct", ";")
        types = []
        while not self.at("eof"):
            types.append(self.type_decl())
        if not types:
            raise self.error("expected a class or interface declaration")
        return Unit(self.path, package, tuple(types))

    def qualified_name(self) -> str:
        parts = [self.expect("ident").text]
        while self.at("punct", ".") and self.peek(1).kind == "ident":
            self.next()
            parts.append(self.next().text)
        return ".".join(parts)

    def modifiers(self) -> set[str]:
        mods: set[str] = set()
        while self.peek().kind == "keyword" and self.peek().text in MODIFIERS:
            mods.add(self.next().text)
        return mods

    def type_decl(self) -> TypeAst:
        self.modifiers()
        start = self.peek()
        if self.accept("keyword", "class"):
            name = self.expect("ident").text
            extends: tuple[str, ...] = ()
            implements: tuple[str, ...] = ()
            if self.accept("keyword", "extends"):
                extends = (self.qualified_name(),)
            if self.accept("keyword", "implements"):
                implements = tuple(self.name_list())
            fields, methods, ctors = self.class_body(name)
            return TypeAst("class", name, extends, implements, fields, methods,
                           ctors, self.loc(start))
        if self.accept("keyword", "interface"):
            name = self.expect("ident").text
            extends = ()
            if self.accept("keyword", "extends"):
                extends = tuple(self.name_list())
            methods = self.interface_body()
            return TypeAst("interface", name, extends, (), (), methods, (),
                           self.loc(start))
        raise self.error("expected 'class' or 'interface'", start)

    def name_list(self) -> list[str]:
        names = [self.qualified_name()]
        while self.accept("punct", ","):
            names.append(self.qualified_name())
        return names

    def class_body(self, class_name: str):
        self.expect("punct", "{")
        fields: list[FieldAst] = []
        methods: list[MethodAst] = []
        ctors: list[CtorAst] = []
        while not self.accept("punct", "}"):
            if self.at("eof"):
                raise self.error("unterminated class body")
            mods = self.modifiers()
            start = self.peek()
            # Constructor: the class's simple name followed by '('.
            if self.at("ident", class_name) and self.peek(1).text == "(":
                self.next()
                params = self.params()
                body = self.block()
                ctors.append(CtorAst(class_name, params, body, self.loc(start)))
                continue
            type_name = self.return_type()
            name = self.expect("ident").text
            if self.at("punct", "("):
                params = self.params()
                if self.accept("punct", ";"):
                    body = None
                else:
                    body = self.block()
                methods.append(MethodAst(name, type_name, params, body,
                                         "static" in mods,
                                         "abstract" in mods or body is None,
                                         self.loc(start)))
            else:
                # Field initializers are parsed but contribute no call sites:
                # only method bodies are analyzed.
                names = [name]
                if self.accept("punct", "="):
                    self.expression()
                while self.accept("punct", ","):
                    names.append(self.expect("ident").text)
                    if self.accept("punct", "="):
                        self.expression()
                self.expect("punct", ";")
                fields.append(FieldAst(type_name, tuple(names), "static" in mods,
                                       self.loc(start)))
        return tuple(fields), tuple(methods), tuple(ctors)

    def interface_body(self) -> tuple[MethodAst, ...]:
        self.expect("punct", "{")
        methods: list[MethodAst] = []
        while not self.accept("punct", "}"):
            if self.at("eof"):
                raise self.error("unterminated interface body")
            self.modifiers()
            start = self.peek()
            type_name = self.return_type()
            name = self.expect("ident").text
            params = self.params()
            self.expect("punct", ";")
            methods.append(MethodAst(name, type_name, params, None, False, True,
                                     self.loc(start)))
        return tuple(methods)

    def return_type(self) -> str:
        if self.accept("keyword", "void"):
            return "void"
        return self.qualified_name()

    def params(self) -> tuple[tuple[str, str], ...]:
        self.expect("punct", "(")
        params: list[tuple[str, str]] = []
        if not self.at("punct", ")"):
            while True:
                ptype = self.qualified_name()
                pname = self.expect("ident").text
                params.append((ptype, pname))
                if not self.accept("punct", ","):
                    break
        self.expect("punct", ")")
        return tuple(params)

    # -- statements --

    def block(self) -> Block:
        start = self.expect("punct", "{")
        stmts: list[Stmt] = []
        while not self.accept("punct", "}"):
            if self.at("eof"):
                raise self.error("unterminated block")
            stmts.append(self.statement())
        return Block(tuple(stmts), self.loc(start))

    def statement(self) -> Stmt:
        tok = self.peek()
        if self.at("punct", "{"):
            return self.block()
        if self.accept("punct", ";"):
            return Block((), self.loc(tok))
        if self.at("keyword", "return"):
            self.next()
            value = None if self.at("punct", ";") else self.expression()
            self.expect("punct", ";")
            return Return(value, self.loc(tok))
        if self.at("keyword", "if"):
            self.next()
            self.expect("punct", "(")
            cond = self.expression()
            self.expect("punct", ")")
            then = self.statement()
            orelse = self.statement() if self.accept("keyword", "else") else None
            return If(cond, then, orelse, self.loc(tok))
        if self.at("keyword", "while"):
            self.next()
            self.expect("punct", "(")
            cond = self.expression()
            self.expect("punct", ")")
            return While(cond, self.statement(), self.loc(tok))
        if self.at("keyword", "for"):
            return self.for_statement()
        if self.at("keyword", "throw"):
            self.next()
            expr = self.expression()
            self.expect("punct", ";")
            return Throw(expr, self.loc(tok))
        if self.at("keyword", "try"):
            return self.try_statement()
        if self.at_local_decl():
            return self.local_decl()
        expr = self.expression()
        self.expect("punct", ";")
        return ExprStmt(expr, self.loc(tok))

    def at_local_decl(self) -> bool:
        # Ident ('.' Ident)* Ident  => a declaration like `Figure f ...`.
        if self.peek().kind != "ident":
            return False
        i = 1
        while self.peek(i).text == "." and self.peek(i + 1).kind == "ident":
            i += 2
        return self.peek(i).kind == "ident"

    def local_decl(self) -> LocalDecl:
        start = self.peek()
        type_name = self.qualified_name()
        declarators: list[tuple[str, Expr | None]] = []
        while True:
            name = self.expect("ident").text
            init = self.expression() if self.accept("punct", "=") else None
            declarators.append((name, init))
            if not self.accept("punct", ","):
                break
        self.expect("punct", ";")
        return LocalDecl(type_name, tuple(declarators), self.loc(start))

    def for_statement(self) -> For:
        start = self.expect("keyword", "for")
        self.expect("punct", "(")
        init: Stmt | None = None
        if not self.accept("punct", ";"):
            if self.at_local_decl():
                init = self.local_decl()
            else:
                expr = self.expression()
                self.expect("punct", ";")
                init = ExprStmt(expr, self.loc(start))
        cond = None if self.at("punct", ";") else self.expression()
        self.expect("punct", ";")
        update: list[Expr] = []
        if not self.at("punct", ")"):
            update.append(self.expression())
            while self.accept("punct", ","):
                update.append(self.expression())
        self.expect("punct", ")")
        return For(init, cond, tuple(update), self.statement(), self.loc(start))

    def try_statement(self) -> Try:
        start = self.expect("keyword", "try")
        body = self.block()
        catches: list[Catch] = []
        while self.at("keyword", "catch"):
            ctok = self.next()
            self.expect("punct", "(")
            ctype = self.qualified_name()
            cvar = self.expect("ident").text
            self.expect("punct", ")")
            catches.append(Catch(ctype, cvar, self.block(), self.loc(ctok)))
        finally_body = self.block() if self.accept("keyword", "finally") else None
        if not catches and finally_body is None:
            raise self.error("try without catch or finally")
        return Try(body, tuple(catches), finally_body, self.loc(start))

    # -- expressions --

    def expression(self) -> Expr:
        return self.assignment()

    def assignment(self) -> Expr:
        lhs = self.binary(0)
        for op in ("=", "+=", "-=", "*=", "/="):
            if self.at("punct", op):
                tok = self.next()
                return Assign(lhs, op, self.assignment(), self.loc(tok))
        return lhs

    _LEVELS = (("||",), ("&&",), ("==", "!="), ("<", ">", "<=", ">="),
               ("+", "-"), ("*", "/", "%"))

    def binary(self, level: int) -> Expr:
        if level == len(self._LEVELS):
            return self.unary()
        expr = self.binary(level + 1)
        while self.peek().kind == "punct" and self.peek().text in self._LEVELS[level]:
            tok = self.next()
            rhs = self.binary(level + 1)
            expr = Binary(tok.text, expr, rhs, self.loc(tok))
        return expr

    def unary(self) -> Expr:
        tok = self.peek()
        if tok.kind == "punct" and tok.text in ("!", "-", "++", "--"):
            self.next()
            return Unary(tok.text, self.unary(), self.loc(tok))
        return self.postfix()

    def postfix(self) -> Expr:
        expr = self.primary()
        while True:
            if self.at("punct", ".") and self.peek(1).kind == "ident":
                self.next()
                name_tok = self.next()
                if self.at("punct", "("):
                    args = self.arguments()
                    expr = Call(expr, name_tok.text, args, self.loc(name_tok))
                else:
                    expr = FieldAccess(expr, name_tok.text, self.loc(name_tok))
            elif self.at("punct", "++") or self.at("punct", "--"):
                tok = self.next()
                expr = Unary(tok.text, expr, self.loc(tok))
            else:
                return expr

    def arguments(self) -> tuple[Expr, ...]:
        self.expect("punct", "(")
        args: list[Expr] = []
        if not self.at("punct", ")"):
            args.append(self.expression())
            while self.accept("punct", ","):
                args.append(self.expression())
        self.expect("punct", ")")
        return tuple(args)

    def primary(self) -> Expr:
        tok = self.peek()
        if tok.kind in ("int", "string", "char"):
            self.next()
            return Literal(tok.kind, tok.text, self.loc(tok))
        if tok.kind == "keyword":
            if tok.text in ("true", "false"):
                self.next()
                return Literal("boolean", tok.text, self.loc(tok))
            if tok.text == "null":
                self.next()
                return Literal("null", tok.text, self.loc(tok))
            if tok.text == "this":
                self.next()
                return This(self.loc(tok))
            if tok.text == "super":
                self.next()
                self.expect("punct", ".")
                name_tok = self.expect("ident")
                args = self.arguments()
                return SuperCall(name_tok.text, args, self.loc(name_tok))
            if tok.text == "new":
                self.next()
                type_name = self.qualified_name()
                args = self.arguments()
                return New(type_name, args, self.loc(tok))
        if tok.kind == "ident":
            self.next()
            if self.at("punct", "("):
                args = self.arguments()
                return Call(None, tok.text, args, self.loc(tok))
            return Name(tok.text, self.loc(tok))
        if self.accept("punct", "("):
            expr = self.expression()
            self.expect("punct", ")")
            return expr
        raise self.error(f"unexpected token {tok.text or tok.kind!r}", tok)


def parse_unit(unit: SourceUnit) -> Unit:
    """Parse one source file; raises ParseError with line/column on failure."""
    tokens = tokenize(unit.text, unit.path)
    parser = _Parser(tokens, unit.path)
    return parser.parse_unit()
