import json

import pytest

from transcheck.corpus import bundled_corpus_dir, load_corpus, load_program_dir
from transcheck.corpus import TestCase as CorpusCase
from transcheck.errors import TranscheckError
from transcheck.interp import run_function
from transcheck.values import values_equal


def test_bundled_corpus_loads(corpus):
    assert len(corpus) >= 50
    assert all(u.ast is not None for u in corpus)
    assert all(u.tests for u in corpus)


def test_ids_unique_and_sorted(corpus):
    ids = [u.id for u in corpus]
    assert ids == sorted(ids)
    assert len(set(ids)) == len(ids)


def test_expected_values_match_execution(corpus):
    # tests.json carries hand-written expected outputs; the interpreter
    # must reproduce every one of them
    for unit in corpus:
        for t in unit.tests:
            got = run_function(unit.ast, "java", t.input_list()).value
            assert values_equal(got, _thaw(t.expected)), (unit.id, t.input_list())


def _thaw(v):
    return [_thaw(x) for x in v] if isinstance(v, tuple) else v


def test_arity_mismatch_detected(tmp_path):
    d = tmp_path / "prog"
    d.mkdir()
    (d / "func.java").write_text("int f(int a){ return a; }")
    (d / "tests.json").write_text(json.dumps([{"inputs": [1, 2], "expected": 1}]))
    with pytest.raises(TranscheckError) as exc:
        load_program_dir(d)
    assert "arity" in str(exc.value)


def test_unparsable_program_loads_without_ast(tmp_path):
    d = tmp_path / "prog"
    d.mkdir()
    (d / "func.java").write_text("int f(int a){ synchronized(a) { } }")
    (d / "tests.json").write_text("[]")
    unit = load_program_dir(d)
    assert unit.ast is None
    assert unit.parse_error


def test_duplicate_ids_rejected(tmp_path):
    # same id cannot occur; ids are directory names so this is structural,
    # but the loader still guards it
    (tmp_path / "p1").mkdir()
    (tmp_path / "p1" / "func.java").write_text("int f(){ return 1; }")
    corpus = load_corpus(tmp_path)
    assert len(corpus) == 1 and corpus[0].tests == []


def test_missing_corpus_dir_errors(tmp_path):
    with pytest.raises(TranscheckError):
        load_corpus(tmp_path / "nope")


def test_bad_test_case_rejected():
    with pytest.raises(TranscheckError):
        CorpusCase.from_json({"inputs": "not-a-list", "expected": 1})
    with pytest.raises(TranscheckError):
        CorpusCase.from_json({"inputs": []})


def test_meta_counts_present_for_all(corpus):
    for unit in corpus:
        assert {"arity", "conditionals", "loops"} <= set(unit.meta), unit.id
