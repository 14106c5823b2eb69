"""Command-line entry points: test, search, corpus-check."""

import argparse
import json
import os
import shlex
import sys
from dataclasses import dataclass, field, fields
from pathlib import Path

from .corpus import (
    bundled_corpus_dir, bundled_properties_dir, load_corpus, load_program_dir,
)
from .dsl import check_spec, load_spec_file, validate_search_spec
from .engine import Inspector, run_suite
from .errors import BackendUnavailable, TranscheckError
from .inspections import ToolchainConfig
from .mock_backend import MockBackend, MockConfig
from .search import (
    DEFAULT_INIT_TEMPERATURE, DEFAULT_SEARCH_BUDGET, DEFAULT_TEST_BUDGET,
    search_translation,
)
from .translate import (
    CommandBackend, HttpBackend, QueryCache, Translator, TranslatorParams,
)

DEFAULT_SEED = 1729
CACHE_ENV_VAR = "TRANSCHECK_CACHE_DIR"


@dataclass
class RunConfig:
    corpus_dir: str | None = None
    spec_paths: list = field(default_factory=list)
    backend: str = "mock"
    beam: int = 1
    temperature: float = DEFAULT_INIT_TEMPERATURE
    budget_k1: int = 500
    budget_kn: int = 2500
    search_budget: int = DEFAULT_SEARCH_BUDGET
    test_budget: int = DEFAULT_TEST_BUDGET
    seed: int = DEFAULT_SEED
    jobs: int = 1
    cache_dir: str | None = None
    out: str | None = None
    fail_on_violation: bool = False
    toolchain: dict = field(default_factory=dict)
    mock: dict = field(default_factory=dict)

    @staticmethod
    def load(path: str | None) -> "RunConfig":
        config = RunConfig()
        if path is None:
            return config
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
        known = {f.name for f in fields(RunConfig)}
        for key, value in doc.items():
            if key not in known:
                raise TranscheckError(f"unknown config key {key!r}")
            setattr(config, key, value)
        return config


def _build_backend(config: RunConfig):
    spec = config.backend
    if spec == "mock":
        mock_kwargs = dict(config.mock)
        mock_kwargs.setdefault("seed", config.seed)
        return MockBackend(MockConfig(**mock_kwargs))
    if spec.startswith(("http://", "https://")):
        return HttpBackend(spec)
    if spec.startswith("cmd:"):
        return CommandBackend(shlex.split(spec[len("cmd:"):]))
    raise TranscheckError(
        f"unknown backend {spec!r} (expected 'mock', an http(s) URL, or 'cmd:...')")


def _build_translator(config: RunConfig):
    backend = _build_backend(config)
    cache_dir = config.cache_dir or os.environ.get(CACHE_ENV_VAR)
    return Translator(backend, QueryCache(cache_dir)), backend


def _params(config: RunConfig, backend) -> TranslatorParams:
    return TranslatorParams(beam=config.beam, temperature=config.temperature,
                            backend_id=backend.identity)


def _load_specs(config: RunConfig, flavor: str) -> list:
    paths = []
    if config.spec_paths:
        for raw in config.spec_paths:
            p = Path(raw)
            if p.is_dir():
                paths.extend(sorted(p.glob("*.ksp")))
            else:
                paths.append(p)
    else:
        paths = sorted(bundled_properties_dir(flavor).glob("*.ksp"))
    if not paths:
        raise TranscheckError("no property files found")
    specs = []
    problems = []
    for p in paths:
        diags = check_spec(p.read_text(encoding="utf-8"), p.stem)
        if diags:
            problems.extend(f"{p}:{d}" for d in diags)
        else:
            specs.append(load_spec_file(p))
    if problems:
        raise TranscheckError("property diagnostics:\n  " + "\n  ".join(problems))
    return specs


def _load_corpus(config: RunConfig) -> list:
    corpus_dir = config.corpus_dir or bundled_corpus_dir()
    return load_corpus(corpus_dir)


def cmd_test(config: RunConfig) -> int:
    specs = _load_specs(config, "testing")
    corpus = _load_corpus(config)
    translator, backend = _build_translator(config)
    inspector = Inspector(ToolchainConfig.from_dict(config.toolchain))
    suite = run_suite(specs, corpus, _params(config, backend), translator,
                      inspector, config.seed, config.budget_k1,
                      config.budget_kn, config.jobs)
    sys.stdout.write(suite.to_table())
    if config.out:
        Path(config.out).write_text(suite.to_document(), encoding="utf-8")
        print(f"report written to {config.out}", file=sys.stderr)
    print(f"backend calls: {translator.backend_calls}", file=sys.stderr)
    if config.fail_on_violation and suite.total_violations > 0:
        return 1
    return 0


def cmd_search(config: RunConfig, program_path: str) -> int:
    specs = _load_specs(config, "search")
    bad = []
    for spec in specs:
        ok, reasons = validate_search_spec(spec)
        if not ok:
            bad.append(f"{spec.name}: {'; '.join(reasons)}")
    if bad:
        raise TranscheckError("not search-compatible:\n  " + "\n  ".join(bad))
    path = Path(program_path)
    program = load_program_dir(path if path.is_dir() else path.parent)
    if program.ast is None:
        raise TranscheckError(f"program does not parse: {program.parse_error}")
    translator, backend = _build_translator(config)
    inspector = Inspector(ToolchainConfig.from_dict(config.toolchain))
    result = search_translation(
        specs, program, config.search_budget, config.test_budget,
        _params(config, backend), translator, inspector, config.seed,
        config.jobs)
    doc = result.to_document(program.id)
    if config.out:
        Path(config.out).write_text(doc, encoding="utf-8")
        print(f"trace written to {config.out}", file=sys.stderr)
    summary = "all properties satisfied" if result.vp_zero else (
        f"budget exhausted (best VP={result.min_vp}, TV={result.min_tv})"
        if not result.aborted else f"aborted: {result.aborted}")
    print(f"search: {summary} after {result.iterations_used} iteration(s)",
          file=sys.stderr)
    if result.best_translation is not None:
        sys.stdout.write(result.best_translation)
    if result.aborted:
        return 2
    return 0 if result.vp_zero else 1


def cmd_corpus_check(config: RunConfig) -> int:
    corpus = _load_corpus(config)
    problems = 0
    for unit in corpus:
        notes = []
        if unit.ast is None:
            notes.append(f"1-safety-only (no ast: {unit.parse_error})")
        if not unit.tests:
            notes.append("no tests")
        if unit.ast is not None and unit.meta:
            from .inspections import arity, num_conditionals, num_loops

            for key, fn in (("arity", arity), ("conditionals", num_conditionals),
                            ("loops", num_loops)):
                if key in unit.meta and unit.meta[key] != fn(unit.ast, unit.lang):
                    notes.append(f"meta {key}={unit.meta[key]} but counted "
                                 f"{fn(unit.ast, unit.lang)}")
                    problems += 1
        status = "ok" if not notes else "; ".join(notes)
        print(f"{unit.id}: {status}")
    print(f"{len(corpus)} programs checked, {problems} problem(s)")
    return 0 if problems == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="transcheck",
        description="Metamorphic k-safety testing and property-guided "
                    "search for code-translation backends.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--config", help="JSON run configuration file")
        p.add_argument("--corpus", help="program corpus directory")
        p.add_argument("--specs", action="append",
                       help="property file or directory (repeatable)")
        p.add_argument("--backend",
                       help="'mock', an http(s) URL, or 'cmd:<argv>'")
        p.add_argument("--beam", type=int, help="beam size N")
        p.add_argument("--temperature", type=float)
        p.add_argument("--seed", type=int)
        p.add_argument("--jobs", type=int, help="worker threads per property")
        p.add_argument("--cache-dir", help=f"query cache (or ${CACHE_ENV_VAR})")
        p.add_argument("--out", help="write the report/trace document here")

    p_test = sub.add_parser("test", help="run the testing procedure")
    common(p_test)
    p_test.add_argument("--budget", type=int,
                        help="testing budget for every property")
    p_test.add_argument("--fail-on-violation", action="store_true")

    p_search = sub.add_parser("search", help="property-guided parameter search")
    common(p_search)
    p_search.add_argument("program", help="program directory (or its func.java)")
    p_search.add_argument("--search-budget", type=int)
    p_search.add_argument("--test-budget", type=int)

    p_check = sub.add_parser("corpus-check", help="validate a corpus directory")
    common(p_check)
    return parser


def _apply_flags(config: RunConfig, args: argparse.Namespace):
    if getattr(args, "corpus", None):
        config.corpus_dir = args.corpus
    if getattr(args, "specs", None):
        config.spec_paths = args.specs
    for flag, key in (("backend", "backend"), ("beam", "beam"),
                      ("temperature", "temperature"), ("seed", "seed"),
                      ("jobs", "jobs"), ("cache_dir", "cache_dir"),
                      ("out", "out"), ("search_budget", "search_budget"),
                      ("test_budget", "test_budget")):
        value = getattr(args, flag, None)
        if value is not None:
            setattr(config, key, value)
    if getattr(args, "budget", None) is not None:
        config.budget_k1 = args.budget
        config.budget_kn = args.budget
    if getattr(args, "fail_on_violation", False):
        config.fail_on_violation = True


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig.load(args.config)
        _apply_flags(config, args)
        if args.command == "test":
            return cmd_test(config)
        if args.command == "search":
            return cmd_search(config, args.program)
        return cmd_corpus_check(config)
    except BackendUnavailable as exc:
        print(f"error: backend unavailable: {exc}", file=sys.stderr)
        return 2
    except (TranscheckError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
