"""Deterministic mock translation backend for desk-scale experiments.

Translates the Java subset to Python rule by rule, then injects faults:
each candidate independently goes bad with probability

    q = min(1, |temperature - t_star| * gain)

so a hidden optimum temperature t_star exists where the backend is
perfect, and quality degrades linearly away from it. The fault menu
covers every property family: dropping a loop or a conditional breaks
counting and semantic checks, renaming the function breaks recursive
programs, an extra parameter breaks arity, and corrupted text breaks
parsing. Every choice derives from a digest of (query, config seed,
candidate index), making candidates reproducible without shared state.

The ``rig`` knob forces fault patterns for harness tests: "none" keeps
every candidate faithful, "all" makes every candidate faulty, "mixed"
keeps candidate 0 faithful and forces faults on the rest. The same knob
is honored per-query via params.extra["mock_rig"].
"""

from dataclasses import dataclass

from .errors import MalformedSource, UnsupportedConstruct
from .java_lang import parse_java
from .nodes import (
    ForRange, FunctionAst, If, Param, Switch, While, child_blocks,
    used_names,
)
from .py_lang import render_python
from .rng import SeededRng, derive_seed
from .transpile import transpile_function

FAULTS = ("drop-loop", "drop-conditional", "rename-function",
          "add-extra-param", "break-syntax")


@dataclass(frozen=True)
class MockConfig:
    t_star: float = 0.35
    gain: float = 1.0
    seed: int = 0
    rig: str = "prob"  # "prob" | "none" | "all" | "mixed"

    def identity(self) -> str:
        return f"mock:t{self.t_star}:g{self.gain}:s{self.seed}:{self.rig}"


def fault_probability(temperature: float, config: MockConfig) -> float:
    return min(1.0, abs(temperature - config.t_star) * config.gain)


def _blocks_with_parent(body):
    yield body
    for stmt in body:
        for block in child_blocks(stmt):
            yield from _blocks_with_parent(block)


def _sites(fn: FunctionAst, kinds) -> list:
    sites = []
    for block in _blocks_with_parent(fn.body):
        for i, stmt in enumerate(block):
            if isinstance(stmt, kinds):
                sites.append((block, i))
    return sites


def _applicable_faults(fn: FunctionAst) -> list:
    menu = []
    if _sites(fn, (While, ForRange)):
        menu.append("drop-loop")
    if _sites(fn, (If, Switch)):
        menu.append("drop-conditional")
    menu.extend(("rename-function", "add-extra-param", "break-syntax"))
    return menu


def _apply_fault(fn: FunctionAst, fault: str, rng: SeededRng) -> FunctionAst | str:
    """Mutated AST, or corrupted text for the syntax fault."""
    if fault == "drop-loop":
        sites = _sites(fn, (While, ForRange))
        block, idx = sites[rng.randrange(len(sites))]
        del block[idx]
        return fn
    if fault == "drop-conditional":
        sites = _sites(fn, (If, Switch))
        block, idx = sites[rng.randrange(len(sites))]
        del block[idx]
        return fn
    if fault == "rename-function":
        fn.name = f"{fn.name}_{rng.randrange(10, 100)}"
        return fn
    if fault == "add-extra-param":
        taken = used_names(fn)
        while True:
            name = f"extra{rng.randrange(100)}"
            if name not in taken:
                break
        fn.params.append(Param(name, None))
        return fn
    # break-syntax: dropping the def line's colon guarantees a parse error
    text = render_python(fn)
    return text.replace(":", "", 1)


class MockBackend:
    """Rule-based Java-to-Python translator with seeded fault injection."""

    def __init__(self, config: MockConfig = MockConfig()):
        self.config = config
        self.identity = config.identity()

    def query(self, source: str, src_lang: str, dst_lang: str, params) -> list:
        if (src_lang, dst_lang) != ("java", "py"):
            # garbage output models a model asked outside its training pair
            return [f"// unsupported pair {src_lang}->{dst_lang}"] * params.beam
        rig = params.extra_dict().get("mock_rig", self.config.rig)
        q = fault_probability(params.temperature, self.config)
        out = []
        for index in range(params.beam):
            out.append(self._candidate(source, params, index, rig, q))
        return out

    def _candidate(self, source, params, index, rig, q) -> str:
        rng = SeededRng(derive_seed(
            "mock", source, params.beam, round(params.temperature, 4),
            list(params.extra), self.config.seed, index))
        try:
            fn = transpile_function(parse_java(source))
        except (MalformedSource, UnsupportedConstruct) as exc:
            return f"// translation failed: {exc}"
        if rig == "none":
            faulty = False
        elif rig == "all":
            faulty = True
        elif rig == "mixed":
            faulty = index > 0
        else:
            faulty = rng.random() < q
        if not faulty:
            return render_python(fn)
        menu = _applicable_faults(fn)
        fault = menu[rng.randrange(len(menu))]
        mutated = _apply_fault(fn, fault, rng)
        if isinstance(mutated, str):
            return mutated
        return render_python(mutated)

    def faithful_translation(self, source: str) -> str:
        """The fault-free translation, for tests that detect injected faults."""
        return render_python(transpile_function(parse_java(source)))
