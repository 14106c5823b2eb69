"""Seeded program transformations over Java function ASTs.

Each transformation is a pure function of (ast, seed): it deep-copies
the input, draws every random choice from the supplied SeededRng, and
reports how many draws it consumed (rng_draws), which downstream code
folds into cache keys and violation fingerprints. A transformation that
has no applicable site returns a null outcome rather than raising.

Guarantees, by construction:
  * rename_param, add_param, add_conditional, add_loop, merge_functions
    preserve input/output behavior (add_param and merge under filler
    extension of the test inputs, see derive_tests).
  * add_conditional adds exactly one conditional; add_loop exactly one
    loop; add_param exactly one parameter; rm_loop removes at least one
    loop; merge arity/conditional/loop arithmetic is exact.
"""

from copy import deepcopy
from dataclasses import dataclass

from .errors import IncompatibleFunctions
from .interp import default_for_type
from .nodes import (
    Assign, Binary, BoolLit, Call, ForC, FunctionAst, If, IntLit, Name, Param,
    Print, Return, StrLit, Switch, Unary, VarDecl, child_blocks, used_names,
    walk_exprs_of, walk_stmts,
)
from .rng import SeededRng


@dataclass
class TransformOutcome:
    result: FunctionAst | None
    applied_site: str
    rng_draws: int

    @property
    def is_null(self) -> bool:
        return self.result is None


_FRESH_LETTERS = "pqrstuvwxyz"


def _fresh_name(rng: SeededRng, taken: set) -> str:
    while True:
        name = f"{rng.choice(_FRESH_LETTERS)}{rng.randrange(100)}"
        if name not in taken:
            taken.add(name)
            return name


def _rename_everywhere(fn: FunctionAst, old: str, new: str):
    for p in fn.params:
        if p.name == old:
            p.name = new
    for stmt in _all_stmts(fn.body):
        if isinstance(stmt, VarDecl) and stmt.name == old:
            stmt.name = new
        for e in walk_exprs_of(stmt):
            if isinstance(e, Name) and e.id == old:
                e.id = new


def _all_stmts(body):
    for stmt in walk_stmts(body):
        yield stmt
        if isinstance(stmt, ForC):
            if stmt.init is not None:
                yield stmt.init
            if stmt.update is not None:
                yield stmt.update


def _is_recursive(fn: FunctionAst) -> bool:
    for stmt in _all_stmts(fn.body):
        for e in walk_exprs_of(stmt):
            if isinstance(e, Call) and e.func == fn.name:
                return True
    return False


# --- scope-aware site enumeration -------------------------------------------

def _scan(body, scope, slots, branch_sites, top_level):
    """Collect insertion slots (block, index, scope) and branch sites.

    ``scope`` maps initialized, readable variable names to their types;
    slots after a return are unreachable in Java and therefore skipped.
    """
    local = dict(scope)
    for i, stmt in enumerate(body):
        if slots is not None:
            slots.append((body, i, dict(local)))
        if isinstance(stmt, (If, Switch)) and branch_sites is not None:
            branch_sites.append((stmt, dict(local)))
        inner_slots = None if top_level else slots
        if isinstance(stmt, ForC):
            inner_scope = dict(local)
            if isinstance(stmt.init, VarDecl) and stmt.init.init is not None:
                inner_scope[stmt.init.name] = stmt.init.var_type
            _scan(stmt.body, inner_scope, inner_slots, branch_sites, top_level)
        else:
            for block in child_blocks(stmt):
                _scan(block, local, inner_slots, branch_sites, top_level)
        if isinstance(stmt, VarDecl) and stmt.init is not None:
            local[stmt.name] = stmt.var_type
        if isinstance(stmt, Return):
            return
    if slots is not None:
        slots.append((body, len(body), dict(local)))


def _insertion_slots(fn: FunctionAst, top_level_only=False):
    slots = []
    scope = {p.name: p.type for p in fn.params}
    _scan(fn.body, scope, slots, None, top_level_only)
    return slots


def _branch_sites(fn: FunctionAst):
    sites = []
    scope = {p.name: p.type for p in fn.params}
    _scan(fn.body, scope, None, sites, False)
    return sites


# --- random expression generation --------------------------------------------

def _int_operand(rng: SeededRng, int_vars):
    kind = rng.randrange(2 if int_vars else 1)
    if int_vars and kind == 1:
        return Name(rng.choice(int_vars))
    k = rng.randint(-10, 10)
    return Unary("-", IntLit(-k)) if k < 0 else IntLit(k)


def _comparison(rng: SeededRng, int_vars):
    op = rng.choice(["<", ">", "==", "<=", ">=", "!="])
    return Binary(op, _int_operand(rng, int_vars), _int_operand(rng, int_vars))


def random_bool_expr(rng: SeededRng, scope: dict, depth: int = 2):
    """Side-effect-free boolean expression over in-scope ints/booleans."""
    int_vars = sorted(n for n, t in scope.items() if t == "int")
    bool_vars = sorted(n for n, t in scope.items() if t == "boolean")
    choices = ["cmp"]
    if bool_vars:
        choices += ["boolvar", "notbool"]
    if depth > 0:
        choices += ["and", "or", "not"]
    kind = rng.choice(choices)
    if kind == "cmp":
        return _comparison(rng, int_vars)
    if kind == "boolvar":
        return Name(rng.choice(bool_vars))
    if kind == "notbool":
        return Unary("!", Name(rng.choice(bool_vars)))
    if kind == "not":
        return Unary("!", random_bool_expr(rng, scope, depth - 1))
    sub_l = random_bool_expr(rng, scope, depth - 1)
    sub_r = random_bool_expr(rng, scope, depth - 1)
    return Binary("&&" if kind == "and" else "||", sub_l, sub_r)


def _random_int_expr(rng: SeededRng, scope: dict):
    int_vars = sorted(n for n, t in scope.items() if t == "int")
    if int_vars and rng.randrange(2) == 1:
        return Binary(rng.choice(["+", "-"]), Name(rng.choice(int_vars)),
                      _int_operand(rng, int_vars))
    return _int_operand(rng, int_vars)


def _random_str_expr(rng: SeededRng, scope: dict):
    str_vars = sorted(n for n, t in scope.items() if t == "String")
    pool = ["alpha", "beta", "gamma", "delta"]
    if str_vars and rng.randrange(2) == 1:
        return Name(rng.choice(str_vars))
    return StrLit(rng.choice(pool))


# --- the seven transformations ------------------------------------------------

def rename_param(fn: FunctionAst, rng: SeededRng) -> TransformOutcome:
    """Rename one uniformly chosen parameter to a fresh identifier."""
    if not fn.params:
        return TransformOutcome(None, "no parameters", rng.draws)
    out = deepcopy(fn)
    idx = rng.randrange(len(out.params))
    old = out.params[idx].name
    new = _fresh_name(rng, used_names(out))
    _rename_everywhere(out, old, new)
    return TransformOutcome(out, f"parameter {old!r} -> {new!r}", rng.draws)


def add_param(fn: FunctionAst, rng: SeededRng) -> TransformOutcome:
    """Append one unused parameter of a random scalar type.

    Recursive call sites get the parameter's filler value appended so
    the function still compiles and behaves identically.
    """
    out = deepcopy(fn)
    name = _fresh_name(rng, used_names(out))
    p_type = rng.choice(["int", "boolean"])
    out.params.append(Param(name, p_type))
    filler = IntLit(0) if p_type == "int" else BoolLit(False)
    for stmt in _all_stmts(out.body):
        for e in walk_exprs_of(stmt):
            if isinstance(e, Call) and e.func == out.name:
                e.args.append(deepcopy(filler))
    return TransformOutcome(out, f"appended {p_type} parameter {name!r}", rng.draws)


def add_conditional(fn: FunctionAst, rng: SeededRng) -> TransformOutcome:
    """Insert an if over a random condition whose body only prints."""
    out = deepcopy(fn)
    slots = _insertion_slots(out)
    block, idx, scope = slots[rng.randrange(len(slots))]
    cond = random_bool_expr(rng, scope)
    block.insert(idx, If(cond, [Print(IntLit(rng.randrange(1000)))], []))
    return TransformOutcome(out, f"if inserted at slot {idx}", rng.draws)


def add_loop(fn: FunctionAst, rng: SeededRng) -> TransformOutcome:
    """Insert a bounded for-loop writing only a fresh local.

    Inserted loops are top-level statements; they never nest inside an
    existing loop or branch.
    """
    out = deepcopy(fn)
    slots = _insertion_slots(out, top_level_only=True)
    block, idx, _ = slots[rng.randrange(len(slots))]
    taken = used_names(out)
    counter = _fresh_name(rng, taken)
    sink = _fresh_name(rng, taken)
    bound = rng.randint(1, 3)
    loop = ForC(
        VarDecl("int", counter, IntLit(0)),
        Binary("<", Name(counter), IntLit(bound)),
        Assign(Name(counter), "+=", IntLit(1)),
        [VarDecl("int", sink, Binary("+", Name(counter), IntLit(1)))],
    )
    block.insert(idx, loop)
    return TransformOutcome(out, f"for-loop (bound {bound}) at slot {idx}", rng.draws)


def rm_loop(fn: FunctionAst, rng: SeededRng) -> TransformOutcome:
    """Delete one uniformly chosen for-loop, subtree included."""
    out = deepcopy(fn)
    sites = []
    for block in _blocks(out.body):
        for i, stmt in enumerate(block):
            if isinstance(stmt, ForC):
                sites.append((block, i))
    if not sites:
        return TransformOutcome(None, "no for-loop", rng.draws)
    block, idx = sites[rng.randrange(len(sites))]
    del block[idx]
    return TransformOutcome(out, f"for-loop removed at index {idx}", rng.draws)


def _blocks(body):
    yield body
    for stmt in body:
        for block in child_blocks(stmt):
            yield from _blocks(block)


def ch_branch_cond(fn: FunctionAst, rng: SeededRng) -> TransformOutcome:
    """Replace the condition of a random if or the subject of a random switch."""
    out = deepcopy(fn)
    sites = _branch_sites(out)
    if not sites:
        return TransformOutcome(None, "no if or switch", rng.draws)
    stmt, scope = sites[rng.randrange(len(sites))]
    if isinstance(stmt, If):
        stmt.cond = random_bool_expr(rng, scope)
        return TransformOutcome(out, "if condition replaced", rng.draws)
    labels_are_strings = any(
        isinstance(label, StrLit) for case in stmt.cases for label in case.labels)
    if labels_are_strings:
        stmt.subject = _random_str_expr(rng, scope)
    else:
        stmt.subject = _random_int_expr(rng, scope)
    return TransformOutcome(out, "switch subject replaced", rng.draws)


def merge_functions(f: FunctionAst, g: FunctionAst, rng: SeededRng) -> TransformOutcome:
    """Combine two functions behind a trailing boolean selector parameter.

    Raises IncompatibleFunctions when the pair cannot form one valid
    function (mismatched return types, or recursion that would dangle
    once the function is renamed).
    """
    if f.return_type != g.return_type:
        raise IncompatibleFunctions(
            f"return types differ: {f.return_type} vs {g.return_type}")
    if _is_recursive(f) or _is_recursive(g):
        raise IncompatibleFunctions("cannot merge recursive functions")
    f = deepcopy(f)
    g = deepcopy(g)
    taken = used_names(f) | used_names(g)
    f_names = used_names(f)
    for p in list(g.params):
        if p.name in f_names:
            _rename_everywhere(g, p.name, _fresh_name(rng, taken))
    # locals may not shadow parameters in Java, so g's locals must also
    # steer clear of f's parameters (and vice versa)
    f_param_names = {q.name for q in f.params}
    g_param_names = {q.name for q in g.params}
    for stmt in _all_stmts(g.body):
        if isinstance(stmt, VarDecl) and stmt.name in f_param_names:
            _rename_everywhere(g, stmt.name, _fresh_name(rng, taken))
    for stmt in _all_stmts(f.body):
        if isinstance(stmt, VarDecl) and stmt.name in g_param_names:
            _rename_everywhere(f, stmt.name, _fresh_name(rng, taken))
    flag = _fresh_name(rng, taken | f_param_names | {p.name for p in g.params})
    base = f"{f.name}_{g.name}"
    name = base
    i = 2
    while name in taken:
        name = f"{base}{i}"
        i += 1
    merged = FunctionAst(
        name,
        f.params + g.params + [Param(flag, "boolean")],
        [If(Name(flag), f.body, g.body)],
        f.return_type,
    )
    return TransformOutcome(merged, f"merged behind flag {flag!r}", rng.draws)


TRANSFORM_IMPLS = {
    "renameParam": rename_param,
    "addParam": add_param,
    "addConditional": add_conditional,
    "addLoop": add_loop,
    "rmLoop": rm_loop,
    "chBranchCond": ch_branch_cond,
    "merge": merge_functions,
}


def apply_transform(fn_name: str, arg_asts: list, rng: SeededRng) -> TransformOutcome:
    impl = TRANSFORM_IMPLS[fn_name]
    if fn_name == "merge":
        return impl(arg_asts[0], arg_asts[1], rng)
    return impl(arg_asts[0], rng)


# --- test-input derivation -----------------------------------------------------

def derive_tests(fn_name: str, variant: FunctionAst, arg_asts: list,
                 arg_tests: list, rng: SeededRng) -> list:
    """Test inputs for a transformed variant, filler-extended when needed.

    Behavior-preserving transforms keep the original inputs. add_param
    appends the new parameter's type default. merge picks one side (a
    seeded draw), maps that side's tests through, and fills the other
    side's parameters plus the selector flag.
    """
    from .corpus import TestCase

    if fn_name == "addParam":
        filler = default_for_type(variant.params[-1].type)
        return [TestCase(t.inputs + (filler,), t.expected) for t in arg_tests[0]]
    if fn_name == "merge":
        f_ast, g_ast = arg_asts
        take_f = rng.randrange(2) == 0
        f_fill = tuple(default_for_type(p.type) for p in f_ast.params)
        g_fill = tuple(default_for_type(p.type) for p in g_ast.params)
        if take_f:
            return [TestCase(t.inputs + g_fill + (True,), t.expected)
                    for t in arg_tests[0]]
        return [TestCase(f_fill + t.inputs + (False,), t.expected)
                for t in arg_tests[1]]
    return list(arg_tests[0])
