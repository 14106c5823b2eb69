"""Metamorphic testing engine.

For every budget unit the engine samples input programs, derives
variants through the property's transformations, rejects draws that
fail the preconditions (resampling up to a cap), queries the backend
for each transpile assignment, and evaluates the postcondition over
every combination of the N beam candidates per query. A unit becomes a
violation only when all N^k combinations falsify the postcondition;
violations de-duplicate by a fingerprint over the property name, the
sampled program ids, and the transformation randomness.

Everything derives from (spec, corpus, config, seed): unit randomness
comes from per-unit seeds, so reports are reproducible byte for byte
and independent of worker scheduling.
"""

import itertools
import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .dsl import (
    PropertySpec, SBin, SInspect, SInt, SName, SNot, SNull, SpecExpr,
)
from .errors import (
    BackendUnavailable, EvalError, IncompatibleFunctions,
    InspectionUnavailable, SandboxFailure, ToolchainMissing, TranscheckError,
)
from .inspections import Inspector, outcomes_equal
from .rng import SeededRng, derive_seed, stable_digest
from .transforms import apply_transform, derive_tests
from .translate import Translator, TranslatorParams

RESAMPLE_CAP = 100
DEFAULT_BUDGET_K1 = 500
DEFAULT_BUDGET_KN = 2500
SCHEMA_VERSION = "1"


@dataclass
class Binding:
    """A program identifier's runtime value during one unit."""
    ident: str
    program_id: str | None
    text: str | None
    lang: str
    tests: tuple
    ast: object = None
    is_null: bool = False
    transform_seed: int | None = None
    transform_draws: int | None = None


@dataclass
class ViolationRecord:
    fingerprint: str
    bound_inputs: dict  # ident -> {"program_id": ..} or {"variant_of": .., "text": ..}
    bound_outputs: dict  # ident -> candidate text (first failing combination)
    failed_clause: str

    def to_json(self) -> dict:
        return {"fingerprint": self.fingerprint,
                "bound_inputs": self.bound_inputs,
                "bound_outputs": self.bound_outputs,
                "failed_clause": self.failed_clause}


@dataclass
class TestReport:
    property: str
    k: int
    is_syntactic: bool
    budget: int
    total_tests: int
    violations: list
    skipped: int
    skip_reasons: dict
    vacuous: int
    params: TranslatorParams
    seed: int

    @property
    def violation_pct(self) -> float:
        if self.total_tests == 0:
            return 0.0
        return 100.0 * len(self.violations) / self.total_tests

    def to_json(self) -> dict:
        return {
            "property": self.property,
            "k": self.k,
            "syntactic": self.is_syntactic,
            "budget": self.budget,
            "total_tests": self.total_tests,
            "unique_violations": len(self.violations),
            "violation_pct": round(self.violation_pct, 2),
            "skipped": self.skipped,
            "skip_reasons": dict(sorted(self.skip_reasons.items())),
            "vacuous_passes": self.vacuous,
            "violations": [v.to_json() for v in self.violations],
        }


class _Null:
    pass


_NULL = _Null()


class _RetList:
    __slots__ = ("outcomes",)

    def __init__(self, outcomes):
        self.outcomes = outcomes


def _truthy(v) -> bool:
    if not isinstance(v, bool):
        raise EvalError(f"expected a boolean, got {v!r}")
    return v


def eval_expr(e: SpecExpr, env: dict, inspector: Inspector):
    """Short-circuit evaluation of a property expression over bindings."""
    if isinstance(e, SInt):
        return e.value
    if isinstance(e, SNull):
        return _NULL
    if isinstance(e, SName):
        return env[e.id]
    if isinstance(e, SInspect):
        return _eval_inspect(e, env, inspector)
    if isinstance(e, SNot):
        return not _truthy(eval_expr(e.operand, env, inspector))
    if isinstance(e, SBin):
        if e.op == "==>":
            if not _truthy(eval_expr(e.left, env, inspector)):
                return True
            return _truthy(eval_expr(e.right, env, inspector))
        if e.op == "&&":
            return (_truthy(eval_expr(e.left, env, inspector))
                    and _truthy(eval_expr(e.right, env, inspector)))
        if e.op == "||":
            return (_truthy(eval_expr(e.left, env, inspector))
                    or _truthy(eval_expr(e.right, env, inspector)))
        left = eval_expr(e.left, env, inspector)
        right = eval_expr(e.right, env, inspector)
        return _eval_binop(e.op, left, right)
    raise EvalError(f"cannot evaluate {e!r}")


def _eval_inspect(e: SInspect, env: dict, inspector: Inspector):
    binding = env[e.target]
    if binding.is_null:
        raise EvalError(f"inspection of null program {e.target!r}")
    if e.fn == "arity":
        return inspector.arity(binding.text, e.lang)
    if e.fn == "numConditionals":
        return inspector.num_conditionals(binding.text, e.lang)
    if e.fn == "numLoops":
        return inspector.num_loops(binding.text, e.lang)
    if e.fn == "compiles":
        return inspector.compiles(binding.text, e.lang)
    if e.fn == "retValues":
        return _RetList(inspector.ret_values(binding.text, e.lang, binding.tests))
    raise EvalError(f"unknown inspection {e.fn!r}")


def _eval_binop(op: str, left, right):
    if op in ("+", "-"):
        if not (isinstance(left, int) and isinstance(right, int)):
            raise EvalError(f"{op!r} needs integers")
        return left + right if op == "+" else left - right
    if op in ("<", "<=", ">", ">="):
        if not (isinstance(left, int) and isinstance(right, int)):
            raise EvalError(f"{op!r} needs integers")
        return {"<": left < right, "<=": left <= right,
                ">": left > right, ">=": left >= right}[op]
    # == / !=
    if isinstance(left, _RetList) and isinstance(right, _RetList):
        eq = outcomes_equal(left.outcomes, right.outcomes)
    elif isinstance(left, _Null) or isinstance(right, _Null):
        other = right if isinstance(left, _Null) else left
        if isinstance(other, _Null):
            eq = True
        elif isinstance(other, Binding):
            eq = other.is_null
        else:
            raise EvalError("null compares only against programs")
    elif isinstance(left, int) and isinstance(right, int):
        eq = left == right
    else:
        raise EvalError(f"cannot compare {type(left).__name__} with {type(right).__name__}")
    return eq if op == "==" else not eq


def eval_post(post: SpecExpr, env: dict, inspector: Inspector):
    """(holds, vacuous): vacuous means a top-level implication with a
    false antecedent decided the result."""
    if isinstance(post, SBin) and post.op == "==>":
        if not _truthy(eval_expr(post.left, env, inspector)):
            return True, True
        return _truthy(eval_expr(post.right, env, inspector)), False
    return _truthy(eval_expr(post, env, inspector)), False


def explain_expr(e: SpecExpr, env: dict, inspector: Inspector) -> str:
    """Postcondition rendered with the values each inspection produced."""
    if isinstance(e, SInt):
        return str(e.value)
    if isinstance(e, SNull):
        return "null"
    if isinstance(e, SName):
        binding = env[e.id]
        return f"{e.id}<null>" if binding.is_null else e.id
    if isinstance(e, SInspect):
        try:
            value = _eval_inspect(e, env, inspector)
        except TranscheckError:
            shown = "?"
        else:
            if isinstance(value, _RetList):
                kinds = [o.kind if o.kind != "ok" else json_compact(o.value)
                         for o in value.outcomes]
                shown = "[" + ", ".join(kinds) + "]"
            else:
                shown = str(value)
        return f'{e.fn}({e.target}, "{e.lang}")={shown}'
    if isinstance(e, SNot):
        return f"!({explain_expr(e.operand, env, inspector)})"
    if isinstance(e, SBin):
        return (f"({explain_expr(e.left, env, inspector)} {e.op} "
                f"{explain_expr(e.right, env, inspector)})")
    return repr(e)


def json_compact(v) -> str:
    return json.dumps(v, separators=(",", ":"))


# --- unit execution -----------------------------------------------------------

@dataclass
class _UnitResult:
    unit: int
    kind: str  # "pass" | "vacuous" | "violation" | "skip"
    violation: ViolationRecord | None = None
    reason: str = ""


class _PreconditionFailed(Exception):
    pass


def _sample_bindings(spec: PropertySpec, corpus: list, rng: SeededRng,
                     attempt: int, inspector: Inspector) -> dict:
    """One sampled assignment of inputs and derived variants; raises
    _PreconditionFailed when this draw cannot satisfy the property."""
    env: dict = {}
    for ident in spec.inputs:
        unit = corpus[rng.randrange(len(corpus))]
        env[ident] = Binding(ident, unit.id, unit.source, unit.lang,
                             tuple(unit.tests), unit.ast)
    for ident, call in spec.derived_vars:
        arg_bindings = [env[a] for a in call.args]
        if any(b.ast is None or b.is_null for b in arg_bindings):
            raise _PreconditionFailed(f"{ident}: argument program not transformable")
        t_rng = rng.spawn("transform", attempt, ident)
        t_seed = t_rng.seed
        try:
            outcome = apply_transform(call.fn, [b.ast for b in arg_bindings], t_rng)
        except IncompatibleFunctions as exc:
            raise _PreconditionFailed(f"{ident}: {exc}")
        if outcome.is_null:
            env[ident] = Binding(ident, None, None, call.lang, (), None,
                                 is_null=True, transform_seed=t_seed,
                                 transform_draws=outcome.rng_draws)
            continue
        from .java_lang import render_java

        tests = derive_tests(call.fn, outcome.result,
                             [b.ast for b in arg_bindings],
                             [list(b.tests) for b in arg_bindings], t_rng)
        env[ident] = Binding(ident, None, render_java(outcome.result), call.lang,
                             tuple(tests), outcome.result,
                             transform_seed=t_seed,
                             transform_draws=outcome.rng_draws)
    for pre in spec.preconditions:
        try:
            if not _truthy(eval_expr(pre, env, inspector)):
                raise _PreconditionFailed("precondition evaluated false")
        except (InspectionUnavailable, EvalError) as exc:
            raise _PreconditionFailed(f"precondition not evaluable: {exc}")
    for q in spec.query_block:
        if env[q.source].is_null:
            raise _PreconditionFailed(f"query source {q.source!r} is null")
    return env


def _run_unit(spec: PropertySpec, corpus: list, unit: int, seed: int,
              params: TranslatorParams, translator: Translator,
              inspector: Inspector, resample_cap: int) -> _UnitResult:
    rng = SeededRng(derive_seed(seed, "unit", unit))
    env = None
    for attempt in range(resample_cap):
        try:
            env = _sample_bindings(spec, corpus, rng, attempt, inspector)
            break
        except _PreconditionFailed as exc:
            last_reason = str(exc)
    if env is None:
        return _UnitResult(unit, "skip",
                           reason=f"precondition unsatisfied after {resample_cap} "
                                  f"attempts ({last_reason})")
    candidates = {}
    for q in spec.query_block:
        result = translator.translate(env[q.source].text, q.src_lang,
                                      q.dst_lang, params)
        candidates[q.target] = (q, result.candidates)
    combos = itertools.product(*(range(params.beam) for _ in spec.query_block))
    all_false = True
    any_real_pass = False
    first_false_env = None
    try:
        for combo in combos:
            combo_env = dict(env)
            for (target, (q, texts)), idx in zip(candidates.items(), combo):
                combo_env[target] = Binding(target, None, texts[idx], q.dst_lang,
                                            env[q.source].tests)
            holds, vacuous = eval_post(spec.postcondition, combo_env, inspector)
            if holds:
                all_false = False
                if not vacuous:
                    any_real_pass = True
            elif first_false_env is None:
                first_false_env = combo_env
    except (InspectionUnavailable, ToolchainMissing) as exc:
        return _UnitResult(unit, "skip", reason=f"inspection unavailable: {exc}")
    except SandboxFailure as exc:
        return _UnitResult(unit, "skip", reason=f"sandbox failure: {exc}")
    except EvalError as exc:
        return _UnitResult(unit, "skip", reason=f"evaluation failed: {exc}")
    if all_false:
        record = _make_violation(spec, env, first_false_env, inspector)
        return _UnitResult(unit, "violation", violation=record)
    return _UnitResult(unit, "pass" if any_real_pass else "vacuous")


def _make_violation(spec: PropertySpec, env: dict, combo_env: dict,
                    inspector: Inspector) -> ViolationRecord:
    input_ids = [env[name].program_id for name in spec.inputs]
    transform_parts = [
        [name, env[name].transform_seed, env[name].transform_draws]
        for name, _ in spec.derived_vars
    ]
    fingerprint = stable_digest(spec.name, input_ids, transform_parts)[:24]
    bound_inputs = {}
    for name in spec.inputs:
        bound_inputs[name] = {"program_id": env[name].program_id}
    for name, call in spec.derived_vars:
        binding = env[name]
        bound_inputs[name] = {
            "derived_by": call.fn,
            "from": list(call.args),
            "text": binding.text,
        }
    bound_outputs = {q.target: combo_env[q.target].text
                     for q in spec.query_block}
    failed = explain_expr(spec.postcondition, combo_env, inspector)
    return ViolationRecord(fingerprint, bound_inputs, bound_outputs, failed)


def run_property(spec: PropertySpec, corpus: list, budget: int,
                 params: TranslatorParams, translator: Translator,
                 inspector: Inspector, seed: int,
                 resample_cap: int = RESAMPLE_CAP, jobs: int = 1) -> TestReport:
    """The testing procedure for one property over the corpus."""
    if budget < 1:
        raise TranscheckError("budget must be at least 1")
    if not corpus:
        raise TranscheckError("corpus is empty")

    def unit_task(unit):
        return _run_unit(spec, corpus, unit, seed, params, translator,
                         inspector, resample_cap)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(unit_task, range(budget)))
    else:
        results = [unit_task(u) for u in range(budget)]
    skipped = 0
    skip_reasons: dict = {}
    vacuous = 0
    raw_violations = []
    for r in results:
        if r.kind == "skip":
            skipped += 1
            key = r.reason.split("(")[0].strip()
            skip_reasons[key] = skip_reasons.get(key, 0) + 1
        elif r.kind == "vacuous":
            vacuous += 1
        elif r.kind == "violation":
            raw_violations.append((r.violation.fingerprint, r.unit, r.violation))
    seen = set()
    violations = []
    for fingerprint, _, record in sorted(raw_violations, key=lambda t: (t[0], t[1])):
        if fingerprint not in seen:
            seen.add(fingerprint)
            violations.append(record)
    return TestReport(
        property=spec.name, k=spec.k, is_syntactic=spec.is_syntactic,
        budget=budget, total_tests=budget - skipped, violations=violations,
        skipped=skipped, skip_reasons=skip_reasons, vacuous=vacuous,
        params=params, seed=seed)


# --- suite --------------------------------------------------------------------

@dataclass
class SuiteReport:
    reports: list
    errors: dict  # property name -> error text
    params: TranslatorParams
    seed: int

    @property
    def total_violations(self) -> int:
        return sum(len(r.violations) for r in self.reports)

    @property
    def violated_properties(self) -> int:
        return sum(1 for r in self.reports if r.violations)

    @property
    def violated_syntactic_properties(self) -> int:
        return sum(1 for r in self.reports if r.violations and r.is_syntactic)

    def to_json(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "kind": "suite_report",
            "seed": self.seed,
            "params": self.params.to_json(),
            "totals": {
                "TV": self.total_violations,
                "VP": self.violated_properties,
                "VSP": self.violated_syntactic_properties,
                "properties": len(self.reports),
            },
            "properties": [r.to_json() for r in self.reports],
            "errors": dict(sorted(self.errors.items())),
        }

    def to_document(self) -> str:
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"

    def to_table(self) -> str:
        name_width = max([len(r.property) for r in self.reports] + [8])
        lines = [
            f"{'property':<{name_width}}  {'k':>1}  {'tests':>6}  {'viol':>5}  "
            f"{'pct':>6}  {'skip':>5}  {'vacuous':>7}"
        ]
        for r in self.reports:
            lines.append(
                f"{r.property:<{name_width}}  {r.k:>1}  {r.total_tests:>6}  "
                f"{len(r.violations):>5}  {r.violation_pct:>6.1f}  "
                f"{r.skipped:>5}  {r.vacuous:>7}")
        for name in sorted(self.errors):
            lines.append(f"{name:<{name_width}}  ERROR: {self.errors[name]}")
        lines.append("")
        lines.append(
            f"TV={self.total_violations}  VP={self.violated_properties}  "
            f"VSP={self.violated_syntactic_properties}  "
            f"properties={len(self.reports)}")
        return "\n".join(lines) + "\n"


def budget_for(spec: PropertySpec, budget_k1: int, budget_kn: int) -> int:
    return budget_k1 if spec.k == 1 else budget_kn


def run_suite(specs: list, corpus: list, params: TranslatorParams,
              translator: Translator, inspector: Inspector, seed: int,
              budget_k1: int = DEFAULT_BUDGET_K1,
              budget_kn: int = DEFAULT_BUDGET_KN, jobs: int = 1) -> SuiteReport:
    """Run every property; per-property failures are isolated, backend
    unavailability aborts the suite."""
    if not specs:
        raise TranscheckError("no properties to run")
    reports = []
    errors = {}
    for spec in specs:
        try:
            reports.append(run_property(
                spec, corpus, budget_for(spec, budget_k1, budget_kn), params,
                translator, inspector, seed, jobs=jobs))
        except BackendUnavailable:
            raise
        except TranscheckError as exc:
            errors[spec.name] = str(exc)
    return SuiteReport(reports, errors, params, seed)
