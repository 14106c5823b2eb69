"""Program corpus: loading, validation, and the bundled fixture set.

Corpus layout is one directory per program:

    <corpus>/<program-id>/func.java     (required)
    <corpus>/<program-id>/func.py       (optional, other languages likewise)
    <corpus>/<program-id>/tests.json    (array of {"inputs": [...], "expected": ...})
    <corpus>/<program-id>/meta.json     (optional hand-recorded counts)

Programs whose source falls outside the parser subset load with ast=None
and stay usable for properties that never transform them.
"""

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import MalformedSource, TranscheckError, UnsupportedConstruct
from .java_lang import parse_java
from .nodes import FunctionAst
from .py_lang import parse_python
from .values import is_value

EXTENSIONS = {"java": "java", "py": "py", "cpp": "cpp"}


@dataclass(frozen=True)
class TestCase:
    inputs: tuple
    expected: object

    @staticmethod
    def from_json(obj) -> "TestCase":
        if not isinstance(obj, dict) or "inputs" not in obj or "expected" not in obj:
            raise TranscheckError("test case needs 'inputs' and 'expected'")
        inputs = obj["inputs"]
        if not isinstance(inputs, list) or not all(is_value(v) for v in inputs):
            raise TranscheckError(f"bad test inputs: {inputs!r}")
        if not is_value(obj["expected"]):
            raise TranscheckError(f"bad expected value: {obj['expected']!r}")
        return TestCase(tuple(_freeze(v) for v in inputs), _freeze(obj["expected"]))

    def input_list(self) -> list:
        return [_thaw(v) for v in self.inputs]


def _freeze(v):
    return tuple(_freeze(x) for x in v) if isinstance(v, list) else v


def _thaw(v):
    return [_thaw(x) for x in v] if isinstance(v, tuple) else v


@dataclass
class ProgramUnit:
    id: str
    lang: str
    source: str
    ast: FunctionAst | None
    tests: list  # list[TestCase]
    parse_error: str | None = None
    meta: dict = field(default_factory=dict)

    @property
    def arity_declared(self) -> int | None:
        return len(self.ast.params) if self.ast is not None else None


def load_program_dir(path: Path, lang: str = "java") -> ProgramUnit:
    ext = EXTENSIONS[lang]
    src_path = path / f"func.{ext}"
    source = src_path.read_text(encoding="utf-8")
    ast = None
    parse_error = None
    try:
        ast = parse_java(source) if lang == "java" else parse_python(source)
    except (MalformedSource, UnsupportedConstruct) as exc:
        parse_error = str(exc)
    tests = []
    tests_path = path / "tests.json"
    if tests_path.exists():
        raw = json.loads(tests_path.read_text(encoding="utf-8"))
        if not isinstance(raw, list):
            raise TranscheckError(f"{tests_path}: tests.json must be an array")
        tests = [TestCase.from_json(t) for t in raw]
    meta = {}
    meta_path = path / "meta.json"
    if meta_path.exists():
        meta = json.loads(meta_path.read_text(encoding="utf-8"))
    unit = ProgramUnit(path.name, lang, source, ast, tests, parse_error, meta)
    if ast is not None:
        for t in tests:
            if len(t.inputs) != len(ast.params):
                raise TranscheckError(
                    f"{path.name}: test arity {len(t.inputs)} does not match "
                    f"declared arity {len(ast.params)}")
    return unit


def load_corpus(corpus_dir: str | Path, lang: str = "java") -> list:
    """All programs under ``corpus_dir``, sorted by id for determinism."""
    corpus_dir = Path(corpus_dir)
    if not corpus_dir.is_dir():
        raise TranscheckError(f"corpus directory not found: {corpus_dir}")
    units = []
    for entry in sorted(corpus_dir.iterdir()):
        if entry.is_dir() and (entry / f"func.{EXTENSIONS[lang]}").exists():
            units.append(load_program_dir(entry, lang))
    if not units:
        raise TranscheckError(f"no programs found in {corpus_dir}")
    seen = set()
    for u in units:
        if u.id in seen:
            raise TranscheckError(f"duplicate program id {u.id}")
        seen.add(u.id)
    return units


def bundled_corpus_dir() -> Path:
    """Directory of the fixture corpus shipped with the package."""
    return Path(resources.files("transcheck") / "fixtures" / "corpus")


def bundled_properties_dir(flavor: str) -> Path:
    """Directory of bundled property specs; flavor is 'testing' or 'search'."""
    if flavor not in ("testing", "search"):
        raise ValueError(f"unknown property flavor {flavor!r}")
    return Path(resources.files("transcheck") / "properties" / flavor)
