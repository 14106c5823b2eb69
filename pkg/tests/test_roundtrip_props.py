"""Render/parse idempotence, property-tested over generated subset ASTs."""

from hypothesis import given, settings, strategies as st

from transcheck.java_lang import parse_java, render_java
from transcheck.py_lang import parse_python, render_python
from transcheck.nodes import (
    Assign, Binary, BoolLit, Call, DoWhile, ExprStmt, FloatLit, ForC,
    ForRange, FunctionAst, If, Index, IntLit, Len, Name, NewArray, Param,
    Print, Return, StrLit, Switch, SwitchCase, Ternary, Unary, VarDecl, While,
)

NAMES = ["a", "b", "c", "d", "e"]
FN_NAME = "f"

names = st.sampled_from(NAMES)
int_lits = st.integers(min_value=0, max_value=99).map(IntLit)
float_lits = st.sampled_from([0.0, 0.5, 1.25, 3.75]).map(FloatLit)
bool_lits = st.booleans().map(BoolLit)
str_lits = st.text(alphabet='abz 9"\\', max_size=6).map(StrLit)

_JARITH = ["+", "-", "*", "/", "%"]
_PYARITH = ["+", "-", "*", "/", "//", "%"]
_CMP = ["<", "<=", ">", ">=", "==", "!="]
_BOOL = ["&&", "||"]


def expr_strategy(arith_ops):
    def extend(children):
        return st.one_of(
            st.builds(Unary, st.sampled_from(["-", "!"]), children),
            st.builds(Binary, st.sampled_from(arith_ops + _CMP + _BOOL),
                      children, children),
            st.builds(Ternary, children, children, children),
            st.builds(Index, names.map(Name), children),
            st.builds(Len, names.map(Name)),
            st.builds(NewArray, children),
            st.builds(Call, st.sampled_from(["max", "min"]),
                      st.tuples(children, children).map(list)),
            st.builds(Call, st.just("abs"), st.tuples(children).map(list)),
            st.builds(Call, st.just(FN_NAME), st.tuples(children).map(list)),
        )
    base = st.one_of(int_lits, float_lits, bool_lits, str_lits, names.map(Name))
    return st.recursive(base, extend, max_leaves=8)


def stmt_strategy(exprs, lang):
    targets = st.one_of(names.map(Name), st.builds(Index, names.map(Name), exprs))
    simple = st.one_of(
        st.builds(Assign, targets, st.sampled_from(["=", "+=", "-=", "*="]), exprs),
        st.builds(Return, st.one_of(st.none(), exprs)),
        st.builds(Print, exprs),
        st.builds(ExprStmt, st.builds(Call, st.just(FN_NAME),
                                      st.tuples(exprs).map(list))),
    )
    if lang == "java":
        simple = st.one_of(simple, st.builds(
            VarDecl, st.sampled_from(["int", "boolean", "double", "String", "int[]"]),
            names, exprs))

    def extend(children):
        blocks = st.lists(children, max_size=3)
        case_body = st.lists(simple.filter(lambda s: not isinstance(s, Return)),
                             max_size=2)
        label_lists = st.lists(
            st.integers(min_value=-20, max_value=20).map(IntLit),
            min_size=1, max_size=2, unique_by=lambda l: l.value)
        cases = st.lists(st.builds(SwitchCase, label_lists, case_body),
                         min_size=1, max_size=3)
        with_default = st.tuples(cases, case_body).map(
            lambda t: t[0] + [SwitchCase([], t[1])])
        compound = [
            st.builds(If, exprs, blocks, blocks),
            st.builds(While, exprs, blocks),
            st.builds(Switch, exprs, st.one_of(cases, with_default)),
        ]
        if lang == "java":
            compound.append(st.builds(DoWhile, exprs, blocks))
            compound.append(st.builds(
                ForC,
                st.builds(VarDecl, st.just("int"), names, exprs),
                exprs,
                st.builds(Assign, names.map(Name), st.sampled_from(["+=", "-="]),
                          exprs),
                blocks))
        else:
            compound.append(st.builds(
                ForRange, names, exprs, exprs, st.one_of(st.none(), exprs), blocks))
        return st.one_of(*compound)

    return st.recursive(simple, extend, max_leaves=6)


def function_strategy(lang):
    exprs = expr_strategy(_JARITH if lang == "java" else _PYARITH)
    stmts = stmt_strategy(exprs, lang)
    if lang == "java":
        params = st.lists(
            st.builds(Param, names, st.sampled_from(["int", "boolean", "int[]"])),
            max_size=3, unique_by=lambda p: p.name)
        return st.builds(FunctionAst, st.just(FN_NAME), params,
                         st.lists(stmts, max_size=4), st.just("int"))
    params = st.lists(st.builds(Param, names, st.none()), max_size=3,
                      unique_by=lambda p: p.name)
    return st.builds(FunctionAst, st.just(FN_NAME), params,
                     st.lists(stmts, max_size=4), st.none())


@settings(max_examples=150, deadline=None)
@given(function_strategy("java"))
def test_java_render_parse_idempotent(fn):
    assert parse_java(render_java(fn)) == fn


@settings(max_examples=150, deadline=None)
@given(function_strategy("py"))
def test_python_render_parse_idempotent(fn):
    assert parse_python(render_python(fn)) == fn
