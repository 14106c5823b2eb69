import pytest

from transcheck.errors import MalformedSource, UnsupportedConstruct
from transcheck.py_lang import parse_python, render_python
from transcheck.nodes import ForRange, If, IntLit, NewArray, Switch, Unary


def test_single_for_loop():
    fn = parse_python("def f(n):\n    for i in range(n):\n        n += 1\n    return n\n")
    assert isinstance(fn.body[0], ForRange)


def test_range_forms():
    fn = parse_python(
        "def f(n):\n"
        "    t = 0\n"
        "    for i in range(n):\n        t += i\n"
        "    for j in range(2, n):\n        t += j\n"
        "    for k in range(n, 0, -1):\n        t += k\n"
        "    return t\n")
    loops = [s for s in fn.body if isinstance(s, ForRange)]
    assert loops[0].start == IntLit(0) and loops[0].step is None
    assert loops[2].step == Unary("-", IntLit(1))


def test_elif_maps_to_nested_if():
    fn = parse_python(
        "def f(a):\n"
        "    if a > 0:\n        return 1\n"
        "    elif a < 0:\n        return -1\n"
        "    else:\n        return 0\n")
    outer = fn.body[0]
    assert isinstance(outer, If)
    assert len(outer.orelse) == 1 and isinstance(outer.orelse[0], If)


def test_match_maps_to_switch():
    fn = parse_python(
        "def f(x):\n"
        "    match x:\n"
        "        case 1 | 2:\n            return 10\n"
        "        case -1:\n            return -10\n"
        "        case _:\n            return 0\n")
    sw = fn.body[0]
    assert isinstance(sw, Switch)
    assert len(sw.cases) == 3
    assert sw.cases[1].labels == [IntLit(-1)]
    assert sw.cases[2].labels == []


def test_zero_array_idiom():
    fn = parse_python("def f(n):\n    return [0] * n\n")
    assert isinstance(fn.body[0].value, NewArray)


def test_other_list_expressions_rejected():
    with pytest.raises(UnsupportedConstruct):
        parse_python("def f(n):\n    return [1, 2]\n")


def test_comprehension_rejected():
    with pytest.raises(UnsupportedConstruct):
        parse_python("def f(n):\n    return [i for i in range(n)]\n")


def test_lambda_rejected():
    with pytest.raises(UnsupportedConstruct) as exc:
        parse_python("def f(n):\n    g = lambda x: x\n    return g(n)\n")
    assert "Lambda" in str(exc.value)


def test_syntax_error_is_malformed():
    with pytest.raises(MalformedSource):
        parse_python("def f(n)\n    return n\n")


def test_two_functions_rejected():
    with pytest.raises(MalformedSource):
        parse_python("def f():\n    return 1\n\ndef g():\n    return 2\n")


def test_self_recursion_allowed_other_calls_rejected():
    fn = parse_python("def f(n):\n    if n < 2:\n        return n\n    return f(n - 1)\n")
    assert fn.name == "f"
    with pytest.raises(UnsupportedConstruct):
        parse_python("def f(n):\n    return g(n)\n")


def test_render_parse_idempotent_on_examples():
    sources = [
        "def f(a, b):\n    return a + b\n",
        "def f(n):\n    t = 0\n    i = 0\n    while i < n:\n        t += i\n        i += 1\n    return t\n",
        "def f(x):\n    match x:\n        case 1:\n            return 1\n        case _:\n            return 0\n",
        "def f(xs):\n    return xs[0] if len(xs) > 0 else -1\n",
        "def f():\n    pass\n",
        "def f(a):\n    print(a)\n    return not (a > 0) and a < 10\n",
    ]
    for src in sources:
        fn = parse_python(src)
        assert parse_python(render_python(fn)) == fn, src


def test_empty_body_renders_pass():
    fn = parse_python("def f():\n    pass\n")
    assert render_python(fn) == "def f():\n    pass\n"


def test_render_is_deterministic():
    fn = parse_python("def f(a):\n    return a - (a - 1)\n")
    assert render_python(fn) == render_python(fn)
