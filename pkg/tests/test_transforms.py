import pytest

from transcheck.errors import IncompatibleFunctions
from transcheck.interp import default_for_type, run_function
from transcheck.java_lang import parse_java, render_java
from transcheck.nodes import count_conditionals, count_loops
from transcheck.rng import SeededRng
from transcheck.transforms import (
    add_conditional, add_loop, add_param, ch_branch_cond, derive_tests,
    merge_functions, rename_param, rm_loop,
)


def outputs(fn, tests):
    out = []
    for t in tests:
        out.append(run_function(fn, "java", t.input_list()).value)
    return out


def fillers(params):
    return [default_for_type(p.type) for p in params]


# --- behavior preservation (execution oracle over the fixture corpus) --------

def test_rename_param_preserves_behavior(corpus):
    for unit in corpus:
        for seed in (1, 2, 3):
            outcome = rename_param(unit.ast, SeededRng(seed))
            if outcome.is_null:
                assert not unit.ast.params
                continue
            assert parse_java(render_java(outcome.result)) == outcome.result
            assert outputs(outcome.result, unit.tests) == outputs(unit.ast, unit.tests)


def test_add_param_preserves_behavior_with_filler(corpus):
    for unit in corpus:
        for seed in (1, 2):
            outcome = add_param(unit.ast, SeededRng(seed))
            variant = outcome.result
            assert len(variant.params) == len(unit.ast.params) + 1
            filler = default_for_type(variant.params[-1].type)
            before = outputs(unit.ast, unit.tests)
            after = [run_function(variant, "java", t.input_list() + [filler]).value
                     for t in unit.tests]
            assert before == after, unit.id


def test_add_conditional_preserves_behavior(corpus):
    for unit in corpus:
        for seed in (1, 2, 3):
            outcome = add_conditional(unit.ast, SeededRng(seed))
            assert parse_java(render_java(outcome.result)) == outcome.result
            assert outputs(outcome.result, unit.tests) == outputs(unit.ast, unit.tests)


def test_add_loop_preserves_behavior(corpus):
    for unit in corpus:
        for seed in (1, 2, 3):
            outcome = add_loop(unit.ast, SeededRng(seed))
            assert parse_java(render_java(outcome.result)) == outcome.result
            assert outputs(outcome.result, unit.tests) == outputs(unit.ast, unit.tests)


def test_merge_preserves_both_sides(corpus):
    mergeable = [u for u in corpus if u.tests]
    pairs = list(zip(mergeable, mergeable[7:] + mergeable[:7]))
    merged_count = 0
    for f_unit, g_unit in pairs:
        try:
            outcome = merge_functions(f_unit.ast, g_unit.ast, SeededRng(5))
        except IncompatibleFunctions:
            continue
        merged_count += 1
        merged = outcome.result
        g_fill = fillers(g_unit.ast.params)
        f_fill = fillers(f_unit.ast.params)
        for t in f_unit.tests:
            got = run_function(merged, "java",
                               t.input_list() + g_fill + [True]).value
            assert got == run_function(f_unit.ast, "java", t.input_list()).value
        for t in g_unit.tests:
            got = run_function(merged, "java",
                               f_fill + t.input_list() + [False]).value
            assert got == run_function(g_unit.ast, "java", t.input_list()).value
    assert merged_count >= 20


# --- structural deltas ---------------------------------------------------------

def test_structural_deltas_over_500_seeded_applications(corpus):
    applications = 0
    for unit in corpus:
        base_c = count_conditionals(unit.ast)
        base_l = count_loops(unit.ast)
        for seed in range(4):
            rng = SeededRng(seed * 1000 + 7)
            out = add_conditional(unit.ast, rng)
            assert count_conditionals(out.result) == base_c + 1
            assert count_loops(out.result) == base_l
            out = add_loop(unit.ast, SeededRng(seed))
            assert count_loops(out.result) == base_l + 1
            assert count_conditionals(out.result) == base_c
            out = add_param(unit.ast, SeededRng(seed))
            assert len(out.result.params) == len(unit.ast.params) + 1
            out = rm_loop(unit.ast, SeededRng(seed))
            if out.is_null:
                assert not _has_for(unit.ast)
            else:
                assert count_loops(out.result) < base_l
            applications += 4
    assert applications >= 500


def _has_for(fn):
    from transcheck.nodes import ForC, walk_stmts

    return any(isinstance(s, ForC) for s in walk_stmts(fn.body))


def test_ch_branch_cond_keeps_counts(corpus):
    for unit in corpus:
        out = ch_branch_cond(unit.ast, SeededRng(11))
        if out.is_null:
            assert count_conditionals(unit.ast) == 0
            continue
        assert parse_java(render_java(out.result)) == out.result
        assert count_conditionals(out.result) == count_conditionals(unit.ast)
        assert count_loops(out.result) == count_loops(unit.ast)


def test_merge_arithmetic(corpus_by_id):
    f = corpus_by_id["p16_max_three"].ast  # 3 params, 2 conditionals
    g = corpus_by_id["p22_sum_even_range"].ast  # 2 params, 1 conditional, 1 loop
    merged = merge_functions(f, g, SeededRng(1)).result
    assert len(merged.params) == 3 + 2 + 1
    assert count_conditionals(merged) == 2 + 1 + 1
    assert count_loops(merged) == 0 + 1


def test_merge_same_function_renames_params(corpus_by_id):
    f = corpus_by_id["p01_add_two"].ast
    merged = merge_functions(f, f, SeededRng(3)).result
    names = [p.name for p in merged.params]
    assert len(names) == len(set(names)) == 5
    assert run_function(merged, "java", [2, 3, 0, 0, True]).value == 5
    assert run_function(merged, "java", [0, 0, 4, 9, False]).value == 13


def test_merge_rejects_recursive(corpus_by_id):
    fib = corpus_by_id["p09_fib_rec"].ast
    other = corpus_by_id["p01_add_two"].ast
    with pytest.raises(IncompatibleFunctions):
        merge_functions(fib, other, SeededRng(1))


def test_merge_rejects_return_type_mismatch(corpus_by_id):
    int_fn = corpus_by_id["p01_add_two"].ast
    str_fn = corpus_by_id["p35_choose_label"].ast
    with pytest.raises(IncompatibleFunctions):
        merge_functions(int_fn, str_fn, SeededRng(1))


# --- null contract and determinism ---------------------------------------------

def test_null_exactly_when_site_absent(corpus_by_id):
    no_params = corpus_by_id["p02_const_five"].ast
    assert rename_param(no_params, SeededRng(1)).is_null
    no_for = corpus_by_id["p10_gcd_loop"].ast  # while loop only
    assert rm_loop(no_for, SeededRng(1)).is_null
    no_branch = corpus_by_id["p01_add_two"].ast
    assert ch_branch_cond(no_branch, SeededRng(1)).is_null
    # add_loop and add_conditional never return null
    assert not add_loop(no_params, SeededRng(1)).is_null
    assert not add_conditional(no_params, SeededRng(1)).is_null


def test_same_seed_same_outcome(corpus_by_id):
    ast = corpus_by_id["p26_is_prime"].ast
    for fn in (rename_param, add_param, add_conditional, add_loop, rm_loop,
               ch_branch_cond):
        a = fn(ast, SeededRng(42))
        b = fn(ast, SeededRng(42))
        assert a.result == b.result and a.rng_draws == b.rng_draws
        c = fn(ast, SeededRng(43))
        assert (a.result, a.rng_draws) != (c.result, c.rng_draws) or fn is rm_loop


def test_transform_does_not_mutate_input(corpus_by_id):
    import copy

    ast = corpus_by_id["p26_is_prime"].ast
    snapshot = copy.deepcopy(ast)
    for fn in (rename_param, add_param, add_conditional, add_loop, rm_loop,
               ch_branch_cond):
        fn(ast, SeededRng(9))
    assert ast == snapshot


def test_rename_example_from_contract(corpus_by_id):
    # f(a,b){return a+b;} with one param renamed: uses follow the rename
    ast = corpus_by_id["p01_add_two"].ast
    out = rename_param(ast, SeededRng(4))
    new_names = {p.name for p in out.result.params}
    old_names = {p.name for p in ast.params}
    assert len(new_names - old_names) == 1
    rendered = render_java(out.result)
    dropped = (old_names - new_names).pop()
    assert dropped not in rendered


def test_add_param_fixes_recursive_calls(corpus_by_id):
    fib = corpus_by_id["p09_fib_rec"].ast
    out = add_param(fib, SeededRng(2))
    filler = default_for_type(out.result.params[-1].type)
    assert run_function(out.result, "java", [10, filler]).value == 55


def test_derive_tests_add_param(corpus_by_id):
    unit = corpus_by_id["p01_add_two"]
    out = add_param(unit.ast, SeededRng(1))
    tests = derive_tests("addParam", out.result, [unit.ast],
                         [list(unit.tests)], SeededRng(1))
    assert all(len(t.inputs) == 3 for t in tests)


def test_derive_tests_merge_sides(corpus_by_id):
    f = corpus_by_id["p01_add_two"]
    g = corpus_by_id["p16_max_three"]
    merged = merge_functions(f.ast, g.ast, SeededRng(1)).result
    for seed in range(8):
        tests = derive_tests("merge", merged, [f.ast, g.ast],
                             [list(f.tests), list(g.tests)], SeededRng(seed))
        assert all(len(t.inputs) == 6 for t in tests)
        flags = {t.inputs[-1] for t in tests}
        assert flags in ({True}, {False})
        for t in tests:
            assert run_function(merged, "java", t.input_list()).value == _thaw(t.expected)


def _thaw(v):
    return [_thaw(x) for x in v] if isinstance(v, tuple) else v
