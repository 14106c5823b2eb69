"""Program inspection: arity, conditional/loop counts, compiles, retValues.

Java and Python inspect through their subset parsers; C++ inspects at
keyword level only (plus an external compile command when configured).
Counting rules: a conditional is an if- or switch/match-statement, each
`else if` counting separately, ternaries excluded; a loop is a
for/while/do-while statement, comprehensions excluded.

Execution (retValues) runs Java through the built-in interpreter and
Python either through the interpreter (builtin mode) or through the
sandboxed driver of the configured toolchain.
"""

import re
import threading
from dataclasses import dataclass, field

from .errors import (
    InspectionUnavailable, MalformedSource, SandboxFailure, ToolchainMissing,
    UnsupportedConstruct,
)
from .interp import ProgramCrash, StepLimitExceeded, run_function
from .java_lang import parse_java
from .nodes import FunctionAst, count_conditionals, count_loops
from .py_lang import parse_python
from .values import values_equal
from . import sandbox

DEFAULT_TIMEOUT_MS = 5000


@dataclass(frozen=True)
class ExecOutcome:
    kind: str  # "ok" | "crash" | "timeout" | "compile_fail"
    value: object = None
    detail: str = ""

    @staticmethod
    def ok(value) -> "ExecOutcome":
        return ExecOutcome("ok", value)

    @staticmethod
    def crash(detail: str) -> "ExecOutcome":
        return ExecOutcome("crash", None, detail)


TIMEOUT = ExecOutcome("timeout")


def outcomes_equal(a: list, b: list) -> bool:
    """Pointwise; only ok/ok pairs can be equal, floats with tolerance."""
    if len(a) != len(b):
        return False
    for x, y in zip(a, b):
        if x.kind != "ok" or y.kind != "ok":
            return False
        if not values_equal(x.value, y.value):
            return False
    return True


@dataclass(frozen=True)
class ToolchainConfig:
    """External command configuration; None fields select builtin behavior.

    java_compile/cpp_compile are argv templates containing a "{src}"
    placeholder; py_run is the interpreter argv prefix. py_exec chooses
    how retValues runs Python code: "builtin" interprets in process,
    "sandbox" drives the configured interpreter in a subprocess.
    """
    py_run: tuple | None = None
    java_compile: tuple | None = None
    cpp_compile: tuple | None = None
    py_exec: str = "builtin"
    timeout_ms: int = DEFAULT_TIMEOUT_MS
    step_limit: int = 2_000_000

    def __post_init__(self):
        for name in ("java_compile", "cpp_compile"):
            template = getattr(self, name)
            if template is not None and not any("{src}" in part for part in template):
                raise ValueError(f"{name} template needs a {{src}} placeholder")
        if self.py_exec not in ("builtin", "sandbox"):
            raise ValueError(f"unknown py_exec mode {self.py_exec!r}")
        if self.timeout_ms <= 0:
            raise ValueError("timeout_ms must be positive")

    @staticmethod
    def from_dict(obj: dict) -> "ToolchainConfig":
        kwargs = {}
        for key in ("py_run", "java_compile", "cpp_compile"):
            if obj.get(key):
                kwargs[key] = tuple(obj[key])
        for key in ("py_exec", "timeout_ms", "step_limit"):
            if key in obj:
                kwargs[key] = obj[key]
        return ToolchainConfig(**kwargs)


BUILTIN = ToolchainConfig()


def parse_source(source: str, lang: str) -> FunctionAst:
    if lang == "java":
        return parse_java(source)
    if lang == "py":
        return parse_python(source)
    raise InspectionUnavailable(f"no structural parser for {lang!r}")


def _ast_of(p, lang: str) -> FunctionAst:
    if isinstance(p, FunctionAst):
        return p
    try:
        return parse_source(p, lang)
    except (MalformedSource, UnsupportedConstruct) as exc:
        raise InspectionUnavailable(f"{lang} program does not parse: {exc}")


# --- C++ keyword-level inspection -------------------------------------------

_CPP_NOISE = re.compile(
    r'//[^\n]*|/\*.*?\*/|"(?:\\.|[^"\\])*"|\'(?:\\.|[^\'\\])*\'', re.S)


def _cpp_clean(source: str) -> str:
    return _CPP_NOISE.sub(" ", source)


def _cpp_count(source: str, keywords: tuple) -> int:
    clean = _cpp_clean(source)
    return sum(len(re.findall(rf"\b{kw}\b", clean)) for kw in keywords)


def _cpp_arity(source: str) -> int:
    clean = _cpp_clean(source)
    start = clean.find("(")
    if start < 0:
        raise InspectionUnavailable("no parameter list found in C++ source")
    depth = 0
    commas = 0
    content_start = start + 1
    for i in range(start, len(clean)):
        c = clean[i]
        if c == "(":
            depth += 1
        elif c == ")":
            depth -= 1
            if depth == 0:
                inner = clean[content_start:i].strip()
                if not inner or inner == "void":
                    return 0
                return commas + 1
        elif c == "," and depth == 1:
            commas += 1
    raise InspectionUnavailable("unbalanced parameter list in C++ source")


# --- the five inspection functions -------------------------------------------

def arity(p, lang: str) -> int:
    if lang == "cpp":
        return _cpp_arity(p)
    return len(_ast_of(p, lang).params)


def num_conditionals(p, lang: str) -> int:
    if lang == "cpp":
        return _cpp_count(p, ("if", "switch"))
    return count_conditionals(_ast_of(p, lang))


def num_loops(p, lang: str) -> int:
    if lang == "cpp":
        return _cpp_count(p, ("for", "while"))
    return count_loops(_ast_of(p, lang))


def compiles(p, lang: str, toolchain: ToolchainConfig = BUILTIN) -> bool:
    source = p if isinstance(p, str) else None
    if lang == "py":
        if toolchain.py_run is not None:
            return sandbox.check_python_syntax(source, toolchain.py_run,
                                               toolchain.timeout_ms)
        try:
            _ast_of(p, lang)
            return True
        except InspectionUnavailable:
            return False
    if lang == "java":
        if toolchain.java_compile is not None:
            wrapped = "class TranscheckUnit {\nstatic " + source + "\n}\n"
            return sandbox.run_compile_command(
                toolchain.java_compile, wrapped, "TranscheckUnit.java",
                toolchain.timeout_ms)
        try:
            _ast_of(p, lang)
            return True
        except InspectionUnavailable:
            return False
    if lang == "cpp":
        if toolchain.cpp_compile is None:
            raise ToolchainMissing("no C++ compile command configured")
        wrapped = "#include <bits/stdc++.h>\nusing namespace std;\n" + source + "\n"
        return sandbox.run_compile_command(
            toolchain.cpp_compile, wrapped, "unit.cpp", toolchain.timeout_ms)
    raise InspectionUnavailable(f"unknown language {lang!r}")


def ret_values(p, lang: str, tests: list,
               toolchain: ToolchainConfig = BUILTIN) -> list:
    """One ExecOutcome per test case, executing ``p`` on each input tuple."""
    if lang == "cpp":
        raise SandboxFailure("retValues is unsupported for cpp targets")
    if not tests:
        raise SandboxFailure("retValues needs a nonempty test suite")
    if lang == "py" and toolchain.py_exec == "sandbox":
        interpreter = toolchain.py_run
        if interpreter is None:
            raise ToolchainMissing("sandbox execution needs a py_run interpreter")
        source = p if isinstance(p, str) else None
        raw = sandbox.run_python_tests(
            source, [t.input_list() for t in tests], interpreter,
            toolchain.timeout_ms)
        return [_outcome_from_doc(doc) for doc in raw]
    try:
        ast = _ast_of(p, lang)
    except InspectionUnavailable as exc:
        return [ExecOutcome("compile_fail", None, str(exc)) for _ in tests]
    out = []
    for t in tests:
        try:
            result = run_function(ast, lang, t.input_list(), toolchain.step_limit)
            out.append(ExecOutcome.ok(result.value))
        except ProgramCrash as exc:
            out.append(ExecOutcome.crash(exc.detail))
        except StepLimitExceeded:
            out.append(TIMEOUT)
    return out


def _outcome_from_doc(doc: dict) -> ExecOutcome:
    if "ok" in doc:
        return ExecOutcome.ok(doc["ok"])
    if "crash" in doc:
        return ExecOutcome.crash(str(doc["crash"]))
    if "compile_fail" in doc:
        return ExecOutcome("compile_fail", None, str(doc["compile_fail"]))
    return TIMEOUT


# --- memoizing facade ---------------------------------------------------------

class Inspector:
    """Caches parse results, inspection values, and executions for one run.

    Inspections are pure in (text, lang), and executions are
    deterministic under a fixed toolchain, so memoizing is sound; the
    lock makes the memo safe for the engine's worker pool.
    """

    def __init__(self, toolchain: ToolchainConfig = BUILTIN):
        self.toolchain = toolchain
        self._lock = threading.Lock()
        self._asts: dict = {}
        self._compiles: dict = {}
        self._execs: dict = {}

    def ast(self, source: str, lang: str) -> FunctionAst:
        key = (lang, source)
        with self._lock:
            if key in self._asts:
                hit = self._asts[key]
                if isinstance(hit, str):
                    raise InspectionUnavailable(hit)
                return hit
        try:
            ast = _ast_of(source, lang)
        except InspectionUnavailable as exc:
            with self._lock:
                self._asts[key] = str(exc)
            raise
        with self._lock:
            self._asts[key] = ast
        return ast

    def arity(self, source: str, lang: str) -> int:
        if lang == "cpp":
            return _cpp_arity(source)
        return len(self.ast(source, lang).params)

    def num_conditionals(self, source: str, lang: str) -> int:
        if lang == "cpp":
            return _cpp_count(source, ("if", "switch"))
        return count_conditionals(self.ast(source, lang))

    def num_loops(self, source: str, lang: str) -> int:
        if lang == "cpp":
            return _cpp_count(source, ("for", "while"))
        return count_loops(self.ast(source, lang))

    def compiles(self, source: str, lang: str) -> bool:
        key = (lang, source)
        with self._lock:
            if key in self._compiles:
                return self._compiles[key]
        result = compiles(source, lang, self.toolchain)
        with self._lock:
            self._compiles[key] = result
        return result

    def ret_values(self, source: str, lang: str, tests: tuple) -> list:
        key = (lang, source, tests)
        with self._lock:
            if key in self._execs:
                return self._execs[key]
        result = ret_values(source, lang, list(tests), self.toolchain)
        with self._lock:
            self._execs[key] = result
        return result
