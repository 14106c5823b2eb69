import pytest

from transcheck.interp import ProgramCrash, StepLimitExceeded, run_function
from transcheck.java_lang import parse_java
from transcheck.py_lang import parse_python


def run_java(src, args):
    return run_function(parse_java(src), "java", args).value


def run_py(src, args):
    return run_function(parse_python(src), "py", args).value


def test_java_integer_division_truncates_toward_zero():
    src = "int f(int a, int b){ return a / b; }"
    assert run_java(src, [7, 2]) == 3
    assert run_java(src, [-7, 2]) == -3
    assert run_java(src, [7, -2]) == -3


def test_java_modulo_keeps_dividend_sign():
    src = "int f(int a, int b){ return a % b; }"
    assert run_java(src, [7, 3]) == 1
    assert run_java(src, [-7, 3]) == -1
    assert run_java(src, [7, -3]) == 1


def test_python_floor_division():
    src = "def f(a, b):\n    return a // b\n"
    assert run_py(src, [7, 2]) == 3
    assert run_py(src, [-7, 2]) == -4


def test_division_by_zero_crashes():
    with pytest.raises(ProgramCrash):
        run_java("int f(int a){ return a / 0; }", [1])


def test_index_out_of_bounds_crashes():
    with pytest.raises(ProgramCrash):
        run_java("int f(int[] xs){ return xs[3]; }", [[1, 2]])


def test_java_rejects_negative_index():
    with pytest.raises(ProgramCrash):
        run_java("int f(int[] xs){ return xs[0 - 1]; }", [[1, 2]])


def test_arity_mismatch_crashes():
    with pytest.raises(ProgramCrash) as exc:
        run_java("int f(int a){ return a; }", [1, 2])
    assert "arity" in str(exc.value)


def test_step_limit_stops_infinite_loop():
    with pytest.raises(StepLimitExceeded):
        run_function(parse_java("int f(){ while (true) { int x = 1; } return 0; }"),
                     "java", [], step_limit=5000)


def test_short_circuit_avoids_crash():
    src = "boolean f(int a){ return a != 0 && 10 / a > 1; }"
    assert run_java(src, [0]) is False


def test_switch_default_and_fallthrough_free_cases():
    src = """
    int f(int x) {
        switch (x) {
            case 1:
            case 2:
                return 10;
            case 3:
                return 30;
            default:
                return 0;
        }
    }"""
    assert run_java(src, [1]) == 10
    assert run_java(src, [2]) == 10
    assert run_java(src, [3]) == 30
    assert run_java(src, [9]) == 0


def test_switch_without_match_or_default_falls_through():
    src = """
    int f(int x) {
        int r = -1;
        switch (x) {
            case 1:
                r = 10;
                break;
        }
        return r;
    }"""
    assert run_java(src, [5]) == -1


def test_do_while_runs_at_least_once():
    src = "int f(int n){ int c = 0; do { c++; } while (c < n); return c; }"
    assert run_java(src, [0]) == 1
    assert run_java(src, [4]) == 4


def test_string_concat_java_coerces():
    assert run_java('String f(int v){ return "v=" + v; }', [5]) == "v=5"
    assert run_java('String f(boolean b){ return "b=" + b; }', [True]) == "b=true"


def test_python_str_concat_needs_str():
    with pytest.raises(ProgramCrash):
        run_py('def f(v):\n    return "v=" + v\n', [5])


def test_prints_are_captured_not_returned():
    result = run_function(parse_java(
        "int f(){ System.out.println(7); return 1; }"), "java", [])
    assert result.value == 1
    assert result.prints == [7]


def test_recursion():
    src = "int f(int n){ if (n < 2) { return n; } return f(n - 1) + f(n - 2); }"
    assert run_java(src, [10]) == 55


def test_deep_recursion_crashes_not_hangs():
    src = "int f(int n){ if (n == 0) { return 0; } return f(n - 1); }"
    with pytest.raises((ProgramCrash, StepLimitExceeded)):
        run_java(src, [10 ** 6])


def test_undefined_name_crashes():
    with pytest.raises(ProgramCrash):
        run_py("def f():\n    return zz\n", [])


def test_bare_decl_defaults_java():
    src = "int f(boolean c){ int x; if (c) { x = 1; } else { x = 2; } return x; }"
    assert run_java(src, [True]) == 1
    assert run_java(src, [False]) == 2
