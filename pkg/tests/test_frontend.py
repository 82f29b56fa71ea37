"""Frontend: parsing, resolution, dispatch classification, accessor shapes."""

import pytest

from fanmine.frontend import (FrontendError, ParseError, SourceUnit,
                              build_callgraph, count_ncloc, graph_from_sources,
                              parse_unit)
from fanmine.model import AccessorShape, Dispatch, MethodKind


def unit(text, path="Test.java"):
    return SourceUnit(path, text)


def build(*texts):
    return graph_from_sources([unit(t, f"U{i}.java") for i, t in enumerate(texts)])


class TestParser:
    def test_empty_class(self):
        ast = parse_unit(unit("class A {}"))
        assert len(ast.types) == 1
        assert ast.types[0].name == "A"
        assert ast.types[0].fields == () and ast.types[0].methods == ()

    def test_method_with_empty_body(self):
        ast = parse_unit(unit("class A { void m() { } }"))
        m = ast.types[0].methods[0]
        assert m.name == "m" and m.body is not None
        assert m.body.statements == ()

    def test_malformed_parameter_list(self):
        with pytest.raises(ParseError) as exc:
            parse_unit(unit("class A { void m( { } }"))
        assert exc.value.line == 1
        assert "{" in str(exc.value)

    def test_error_carries_position(self):
        with pytest.raises(ParseError) as exc:
            parse_unit(unit("class A {\n  void m() { return }\n}"))
        assert exc.value.line == 2

    def test_package_and_interface(self):
        ast = parse_unit(unit(
            "package a.b;\ninterface I extends J, K { int size(); }"))
        assert ast.package == "a.b"
        t = ast.types[0]
        assert t.kind == "interface" and t.extends == ("J", "K")
        assert t.methods[0].body is None

    def test_control_flow_statements(self):
        text = """
        class A {
            int f;
            void m(int n) {
                if (n > 0) { m(n - 1); } else m(n);
                while (n < 10) { n += 1; }
                for (int i = 0; i < n; i++) { work(i); }
                try { risky(); } catch (Error e) { handle(e); } finally { done(); }
                throw new Error(n);
            }
        }
        """
        ast = parse_unit(unit(text))
        assert len(ast.types[0].methods) == 1

    def test_field_declarator_lists(self):
        ast = parse_unit(unit("class A { int a, b, c; static A shared; }"))
        fields = ast.types[0].fields
        assert fields[0].names == ("a", "b", "c")
        assert fields[1].is_static

    def test_parsing_is_deterministic(self):
        text = "class A { void m() { if (x) y(); } int f; }"
        assert parse_unit(unit(text)) == parse_unit(unit(text))


class TestResolution:
    def test_single_virtual_call(self):
        g, diags = build("class A { void m(){} void c(){ m(); } }")
        assert not diags
        assert len(g.calls) == 1
        site = g.calls[0]
        assert site.caller == "A::c/0"
        assert site.dispatch is Dispatch.VIRTUAL
        assert site.receiver_type == "A"
        assert site.ordinal == 0

    def test_super_call_receiver_is_caller_class(self):
        g, diags = build(
            "class A { void m(){} }",
            "class B extends A { void m(){ super.m(); } }")
        assert not diags
        (site,) = g.calls
        assert site.dispatch is Dispatch.SUPER
        assert site.receiver_type == "B"

    def test_unresolved_call_becomes_library_record(self):
        g, diags = build("class C { void c(){ unknown(); } }")
        assert g.calls == ()
        assert len(diags) == 1 and "unknown/0" in diags[0].message
        assert len(g.library_calls) == 1
        assert g.library_calls[0].name == "unknown"

    def test_bare_call_resolving_in_ancestor_is_virtual_on_self(self):
        g, diags = build(
            "class A { void helper(){} }",
            "class B extends A { void c(){ helper(); } }")
        (site,) = g.calls
        assert site.dispatch is Dispatch.VIRTUAL
        assert site.receiver_type == "B"

    def test_static_dispatch(self):
        g, _ = build("class A { static void log(){} void c(){ A.log(); log(); } }")
        assert [s.dispatch for s in g.calls] == [Dispatch.STATIC, Dispatch.STATIC]
        assert g.calls[0].receiver_type == "A"

    def test_constructor_and_throw_new(self):
        g, diags = build(
            "class E { E(int code){} }",
            "class C { void c(){ throw new E(1); } void d(){ E e = new E(2); } }")
        assert not diags
        assert all(s.dispatch is Dispatch.CONSTRUCTOR for s in g.calls)
        assert len(g.calls) == 2
        assert {s.caller for s in g.calls} == {"C::c/0", "C::d/0"}

    def test_implicit_default_constructor_synthesized(self):
        g, diags = build("class A { } class C { void c(){ new A(); } }")
        assert not diags
        assert "A::<init>/0" in g.methods
        ctor = g.methods["A::<init>/0"]
        assert ctor.kind is MethodKind.CONSTRUCTOR and not ctor.has_body
        (site,) = g.calls
        assert site.dispatch is Dispatch.CONSTRUCTOR

    def test_constructor_arity_mismatch_is_library(self):
        g, diags = build("class A { A(int x){} } class C { void c(){ new A(); } }")
        assert g.calls == ()
        assert len(g.library_calls) == 1

    def test_chained_call_uses_declared_return_type(self):
        g, _ = build("""
        class B { void m(){} }
        class A { B b; B getB(){ return b; } void c(){ getB().m(); } }
        """)
        by_name = {s.name: s for s in g.calls if s.caller == "A::c/0"}
        assert by_name["m"].receiver_type == "B"
        # Pre-order: the outer call gets the lower ordinal.
        assert by_name["m"].ordinal < by_name["getB"].ordinal

    def test_field_receiver_typing_including_inherited(self):
        g, _ = build("""
        class Base { Helper h; }
        class Helper { void go(){} }
        class Sub extends Base { void c(){ h.go(); } }
        """)
        (site,) = g.calls
        assert site.receiver_type == "Helper"

    def test_local_and_param_typing(self):
        g, _ = build("""
        class H { void go(){} }
        class C { void c(H p){ p.go(); H l = p; l.go(); } }
        """)
        assert len(g.calls) == 2
        assert all(s.receiver_type == "H" for s in g.calls)

    def test_interface_receiver(self):
        g, _ = build("""
        interface I { void m(); }
        class C { void c(I i){ i.m(); } }
        """)
        (site,) = g.calls
        assert site.receiver_type == "I" and site.dispatch is Dispatch.VIRTUAL

    def test_duplicate_type_name_rejected(self):
        with pytest.raises(FrontendError, match="duplicate type"):
            build("class A {}", "class A {}")

    def test_same_name_same_arity_overload_rejected(self):
        with pytest.raises(FrontendError, match="overload"):
            build("class A { void m(int x){} void m(A y){} }")

    def test_different_arity_overload_allowed(self):
        g, _ = build("class A { void m(){} void m(int x){} }")
        assert {m.arity for m in g.methods.values()} == {0, 1}

    def test_external_supertype_diagnostic(self):
        g, _ = build("class A extends Widget { }")
        assert any("Widget" in d for d in g.diagnostics)

    def test_unresolved_super_call(self):
        g, diags = build("class A { void c(){ super.toString(); } }")
        assert g.calls == ()
        assert any("super call" in d.message for d in diags)

    def test_ordinals_dense_in_source_order(self):
        g, _ = build("""
        class A {
            void x(){} void y(){} void z(){}
            void c(int n){ x(); if (n > 0) { y(); } z(); }
        }
        """)
        sites = g.calls_by_caller("A::c/1")
        assert [s.name for s in sites] == ["x", "y", "z"]
        assert [s.ordinal for s in sites] == [0, 1, 2]

    def test_every_call_is_site_or_warning(self):
        g, diags = build("""
        class A {
            void known(){}
            void c(){ known(); missing(); known(); vanished(); }
        }
        """)
        warnings = [d for d in diags if d.severity == "warning"]
        assert len(g.calls) == 2 and len(warnings) == 2
        assert len(g.library_calls) == 2

    def test_graph_build_is_deterministic(self):
        text = """
        class A { void m(){} void c(){ m(); new A(); } A(){ } }
        """
        g1, _ = build(text)
        g2, _ = build(text)
        assert g1 == g2


class TestAccessorShapes:
    def shape_of(self, text):
        g, _ = build(text)
        shapes = {m.name: m.accessor_shape for m in g.methods.values()}
        return shapes

    def test_canonical_getter(self):
        shapes = self.shape_of("class A { int x; int getX(){ return x; } }")
        assert shapes["getX"] is AccessorShape.GETTER

    def test_this_qualified_getter(self):
        shapes = self.shape_of("class A { int x; int grab(){ return this.x; } }")
        assert shapes["grab"] is AccessorShape.GETTER

    def test_canonical_setter(self):
        shapes = self.shape_of("class A { int x; void setX(int v){ x = v; } }")
        assert shapes["setX"] is AccessorShape.SETTER

    def test_setter_with_shadowing_param(self):
        shapes = self.shape_of("class A { int x; void setX(int x){ this.x = x; } }")
        assert shapes["setX"] is AccessorShape.SETTER

    def test_setter_with_trailing_return_this(self):
        shapes = self.shape_of(
            "class A { A next; void chain(A v){ next = v; return this; } }")
        assert shapes["chain"] is AccessorShape.SETTER

    def test_extra_statement_is_neither(self):
        shapes = self.shape_of(
            "class A { int x; void log(){} int getX(){ log(); return x; } }")
        assert shapes["getX"] is None

    def test_non_field_return_is_neither(self):
        shapes = self.shape_of("class A { int getX(){ return 4; } }")
        assert shapes["getX"] is None

    def test_param_assignment_is_neither(self):
        shapes = self.shape_of("class A { void setX(int x){ x = x; } }")
        assert shapes["setX"] is None

    def test_inherited_field_counts(self):
        g, _ = build(
            "class Base { int x; }",
            "class Sub extends Base { int getX(){ return x; } }")
        assert g.methods["Sub::getX/0"].accessor_shape is AccessorShape.GETTER


class TestNcloc:
    def test_counts_skip_comments_and_blanks(self):
        text = """
        // leading comment
        class A {

            /* block
               comment */
            void m() { } // trailing
        }
        """
        assert count_ncloc([unit(text)]) == 3
