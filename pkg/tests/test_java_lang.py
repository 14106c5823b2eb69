import pytest

from transcheck.errors import MalformedSource, UnsupportedConstruct
from transcheck.java_lang import parse_java, render_java
from transcheck.nodes import ForC, If, Param, Switch, While


def test_single_if_function():
    fn = parse_java("int f(int a){ if(a>0) return 1; return 0; }")
    assert fn.name == "f"
    assert fn.params == [Param("a", "int")]
    assert sum(isinstance(s, If) for s in fn.body) == 1


def test_modifiers_are_accepted_and_normalized():
    fn = parse_java("public static int f(int a) { return a; }")
    assert render_java(fn).startswith("int f(int a)")


def test_else_if_is_nested_if():
    fn = parse_java("""
    int f(int a) {
        if (a > 0) { return 1; } else if (a < 0) { return -1; } else { return 0; }
    }""")
    outer = fn.body[0]
    assert isinstance(outer, If)
    assert len(outer.orelse) == 1 and isinstance(outer.orelse[0], If)


def test_braceless_bodies_normalize_to_blocks():
    sugar = parse_java("int f(int a){ if(a>0) return 1; else return 0; }")
    braced = parse_java("int f(int a){ if(a>0){ return 1; } else { return 0; } }")
    assert sugar == braced


def test_increment_normalizes_to_augmented_assignment():
    sugar = parse_java("int f(int a){ a++; return a; }")
    plain = parse_java("int f(int a){ a += 1; return a; }")
    assert sugar == plain


def test_switch_multi_label_and_default():
    fn = parse_java("""
    int f(int x) {
        switch (x) {
            case 1:
            case 2:
                return 10;
            default:
                return 0;
        }
    }""")
    sw = fn.body[0]
    assert isinstance(sw, Switch)
    assert len(sw.cases) == 2
    assert len(sw.cases[0].labels) == 2
    assert sw.cases[1].labels == []


def test_switch_fallthrough_rejected():
    with pytest.raises(UnsupportedConstruct):
        parse_java("""
        int f(int x) {
            switch (x) {
                case 1:
                    x = 2;
                case 2:
                    return x;
            }
        }""")


def test_loops_parse():
    fn = parse_java("""
    int f(int n) {
        int t = 0;
        for (int i = 0; i < n; i++) { t += i; }
        while (t > 100) { t -= 1; }
        do { t += 1; } while (t < 0);
        return t;
    }""")
    kinds = [type(s) for s in fn.body]
    assert ForC in kinds and While in kinds


def test_unsupported_construct_is_named():
    with pytest.raises(UnsupportedConstruct) as exc:
        parse_java("int f(int n){ break; }")
    assert "break" in str(exc.value)


def test_lambda_like_source_rejected():
    with pytest.raises((MalformedSource, UnsupportedConstruct)):
        parse_java("int f(int n){ Runnable r = () -> n; return n; }")


def test_malformed_source_has_position():
    with pytest.raises(MalformedSource) as exc:
        parse_java("int f(int a){ return a + ; }")
    assert "line" in str(exc.value)


def test_string_escapes_roundtrip():
    fn = parse_java('String f(){ return "a\\"b\\\\c"; }')
    assert parse_java(render_java(fn)) == fn


def test_render_parse_idempotent_examples(corpus):
    for unit in corpus:
        rendered = render_java(unit.ast)
        assert parse_java(rendered) == unit.ast, unit.id


def test_render_deterministic(corpus):
    unit = corpus[0]
    assert render_java(unit.ast) == render_java(unit.ast)


def test_empty_body_renders_minimal():
    fn = parse_java("void f() { }")
    assert render_java(fn) == "void f() {\n}\n"


def test_duplicate_parameter_rejected():
    with pytest.raises(MalformedSource):
        parse_java("int f(int a, int a){ return a; }")


def test_trailing_content_rejected():
    with pytest.raises(MalformedSource):
        parse_java("int f(){ return 1; } int g(){ return 2; }")


def test_ternary_in_binary_operand_reparses():
    fn = parse_java("int f(int a, int b){ return (a > b ? a : b) + 1; }")
    assert parse_java(render_java(fn)) == fn


def test_nested_unary_minus_reparses():
    fn = parse_java("int f(int a){ return -(-a); }")
    assert parse_java(render_java(fn)) == fn
