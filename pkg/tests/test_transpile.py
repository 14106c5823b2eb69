import sys

import pytest

from transcheck.interp import run_function
from transcheck.java_lang import parse_java
from transcheck.nodes import count_conditionals, count_loops
from transcheck.py_lang import parse_python, render_python
from transcheck.sandbox import run_python_tests
from transcheck.transpile import transpile_function
from transcheck.values import values_equal


def translate(src):
    fn = parse_java(src)
    py = transpile_function(fn)
    text = render_python(py)
    # translation output must live inside the python subset
    assert parse_python(text) == py
    return fn, py, text


def test_counts_preserved_on_fixtures(corpus):
    for unit in corpus:
        _, py, _ = translate(unit.source)
        assert len(py.params) == len(unit.ast.params), unit.id
        assert count_conditionals(py) == count_conditionals(unit.ast), unit.id
        assert count_loops(py) == count_loops(unit.ast), unit.id


def test_behavior_preserved_on_fixtures(corpus):
    for unit in corpus:
        _, py, _ = translate(unit.source)
        for t in unit.tests:
            jv = run_function(unit.ast, "java", t.input_list()).value
            pv = run_function(py, "py", t.input_list()).value
            assert values_equal(jv, pv), (unit.id, t.input_list())


def test_behavior_matches_real_python_sample(corpus):
    for unit in corpus[::9]:
        _, _, text = translate(unit.source)
        docs = run_python_tests(text, [t.input_list() for t in unit.tests],
                                (sys.executable,), 10000)
        for t, doc in zip(unit.tests, docs):
            jv = run_function(unit.ast, "java", t.input_list()).value
            assert "ok" in doc and values_equal(jv, doc["ok"]), (unit.id, doc)


def test_int_division_becomes_floor_division():
    _, _, text = translate("int f(int a, int b){ return a / b; }")
    assert "a // b" in text


def test_double_division_stays_true_division():
    _, _, text = translate("double f(double a, double b){ return a / b; }")
    assert "a / b" in text


def test_do_while_adds_no_conditional():
    fn, py, text = translate(
        "int f(int n){ int c = 0; do { c++; } while (c < n); return c; }")
    assert count_conditionals(py) == 0
    assert count_loops(py) == 1
    assert run_function(py, "py", [0]).value == 1
    assert run_function(py, "py", [5]).value == 5


def test_switch_becomes_match():
    _, py, text = translate("""
    int f(int x) {
        switch (x) {
            case 1:
            case 2:
                return 10;
            default:
                return 0;
        }
    }""")
    assert "match x:" in text
    assert "case 1 | 2:" in text
    assert count_conditionals(py) == 1


def test_noncanonical_for_desugars_to_while():
    # the loop variable is reassigned inside the body, so range() would
    # diverge from the Java semantics
    fn, py, text = translate("""
    int f(int n) {
        int t = 0;
        for (int i = 0; i < n; i++) {
            if (t > 5) {
                i += 1;
            }
            t += i;
        }
        return t;
    }""")
    assert "while" in text and "range" not in text
    assert count_loops(py) == 1
    for n in (0, 3, 6, 9):
        assert (run_function(py, "py", [n]).value
                == run_function(fn, "java", [n]).value)


def test_mutated_bound_desugars_to_while():
    fn, py, text = translate("""
    int f(int n) {
        int t = 0;
        for (int i = 0; i < n; i++) {
            n -= 1;
            t += 1;
        }
        return t;
    }""")
    assert "range" not in text
    for n in (0, 1, 5, 10):
        assert (run_function(py, "py", [n]).value
                == run_function(fn, "java", [n]).value)


def test_string_concat_wraps_non_string_side():
    _, _, text = translate('String f(int v){ return "v=" + v; }')
    assert "str(v)" in text


def test_ternary_stays_expression():
    _, py, _ = translate("int f(int a, int b){ return a > b ? a : b; }")
    assert count_conditionals(py) == 0
