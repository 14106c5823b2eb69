"""AST node set shared by the Java and Python subset front ends.

One node vocabulary covers both languages; each language's parser and
renderer only uses the subset of nodes valid there (e.g. ForC/DoWhile
are Java-only, ForRange is Python-only). Structural equality is plain
dataclass equality, which is what the render/parse idempotence
invariant is stated over.
"""

from dataclasses import dataclass, field


# --- expressions -----------------------------------------------------------

class Expr:
    pass


@dataclass
class IntLit(Expr):
    value: int


@dataclass
class FloatLit(Expr):
    value: float


@dataclass
class BoolLit(Expr):
    value: bool


@dataclass
class StrLit(Expr):
    value: str


@dataclass
class NullLit(Expr):
    pass


@dataclass
class Name(Expr):
    id: str


@dataclass
class Unary(Expr):
    op: str  # "-" | "!"
    operand: Expr


@dataclass
class Binary(Expr):
    # ops: + - * / // % < <= > >= == != && ||
    op: str
    left: Expr
    right: Expr


@dataclass
class Ternary(Expr):
    cond: Expr
    then: Expr
    other: Expr


@dataclass
class Index(Expr):
    base: Expr
    index: Expr


@dataclass
class Len(Expr):
    base: Expr


@dataclass
class NewArray(Expr):
    # zero-filled int array; Java `new int[n]`, Python `[0] * n`
    size: Expr


@dataclass
class Call(Expr):
    # func is a canonical name: "max" | "min" | "abs" | "str" or the
    # enclosing function's own name (self-recursion)
    func: str
    args: list


# --- statements ------------------------------------------------------------

class Stmt:
    pass


@dataclass
class VarDecl(Stmt):
    # Java-only; type in {"int","boolean","double","String","int[]"}
    var_type: str
    name: str
    init: Expr | None


@dataclass
class Assign(Stmt):
    target: Expr  # Name or Index
    op: str  # "=" "+=" "-=" "*=" "/=" "//=" "%="
    value: Expr


@dataclass
class If(Stmt):
    cond: Expr
    then: list
    orelse: list = field(default_factory=list)


@dataclass
class SwitchCase:
    labels: list  # literal Exprs; empty list means default
    body: list = field(default_factory=list)


@dataclass
class Switch(Stmt):
    subject: Expr
    cases: list = field(default_factory=list)  # list[SwitchCase]; default last if present


@dataclass
class While(Stmt):
    cond: Expr
    body: list = field(default_factory=list)


@dataclass
class DoWhile(Stmt):
    cond: Expr
    body: list = field(default_factory=list)


@dataclass
class ForC(Stmt):
    # classic Java for(init; cond; update)
    init: Stmt | None
    cond: Expr | None
    update: Stmt | None
    body: list = field(default_factory=list)


@dataclass
class ForRange(Stmt):
    # Python `for var in range(start, stop[, step])`
    var: str
    start: Expr
    stop: Expr
    step: Expr | None
    body: list = field(default_factory=list)


@dataclass
class Return(Stmt):
    value: Expr | None


@dataclass
class Print(Stmt):
    value: Expr


@dataclass
class ExprStmt(Stmt):
    expr: Expr


@dataclass
class Param:
    name: str
    type: str | None  # None for Python parameters


@dataclass
class FunctionAst:
    name: str
    params: list  # list[Param]
    body: list  # list[Stmt]
    return_type: str | None = None  # Java only


# --- generic traversal -----------------------------------------------------

def child_blocks(stmt: Stmt):
    """Yield every statement list nested directly inside ``stmt``."""
    if isinstance(stmt, If):
        yield stmt.then
        yield stmt.orelse
    elif isinstance(stmt, Switch):
        for case in stmt.cases:
            yield case.body
    elif isinstance(stmt, (While, DoWhile, ForC, ForRange)):
        yield stmt.body


def walk_stmts(body: list):
    """Depth-first iteration over all statements below ``body``."""
    for stmt in body:
        yield stmt
        for block in child_blocks(stmt):
            yield from walk_stmts(block)


def walk_blocks(body: list):
    """Depth-first iteration over all statement lists, starting with ``body``."""
    yield body
    for stmt in body:
        for block in child_blocks(stmt):
            yield from walk_blocks(block)


def sub_exprs(e: Expr):
    if isinstance(e, Unary):
        yield e.operand
    elif isinstance(e, Binary):
        yield e.left
        yield e.right
    elif isinstance(e, Ternary):
        yield e.cond
        yield e.then
        yield e.other
    elif isinstance(e, Index):
        yield e.base
        yield e.index
    elif isinstance(e, Len):
        yield e.base
    elif isinstance(e, NewArray):
        yield e.size
    elif isinstance(e, Call):
        yield from e.args


def walk_exprs_of(stmt: Stmt):
    roots = []
    if isinstance(stmt, VarDecl) and stmt.init is not None:
        roots.append(stmt.init)
    elif isinstance(stmt, Assign):
        roots.extend([stmt.target, stmt.value])
    elif isinstance(stmt, (If, While, DoWhile)):
        roots.append(stmt.cond)
    elif isinstance(stmt, Switch):
        roots.append(stmt.subject)
        for case in stmt.cases:
            roots.extend(case.labels)
    elif isinstance(stmt, ForC):
        if stmt.cond is not None:
            roots.append(stmt.cond)
    elif isinstance(stmt, ForRange):
        roots.append(Name(stmt.var))
        roots.append(stmt.start)
        roots.append(stmt.stop)
        if stmt.step is not None:
            roots.append(stmt.step)
    elif isinstance(stmt, Return) and stmt.value is not None:
        roots.append(stmt.value)
    elif isinstance(stmt, Print):
        roots.append(stmt.value)
    elif isinstance(stmt, ExprStmt):
        roots.append(stmt.expr)
    stack = list(roots)
    while stack:
        e = stack.pop()
        yield e
        stack.extend(sub_exprs(e))


def used_names(fn: FunctionAst) -> set:
    """Every identifier appearing anywhere in the function."""
    names = {fn.name}
    names.update(p.name for p in fn.params)
    for stmt in walk_stmts(fn.body):
        if isinstance(stmt, VarDecl):
            names.add(stmt.name)
        if isinstance(stmt, ForRange):
            names.add(stmt.var)
        for e in walk_exprs_of(stmt):
            if isinstance(e, Name):
                names.add(e.id)
            elif isinstance(e, Call):
                names.add(e.func)
        if isinstance(stmt, ForC):
            for inner in (stmt.init, stmt.update):
                if inner is not None:
                    if isinstance(inner, VarDecl):
                        names.add(inner.name)
                    for e in walk_exprs_of(inner):
                        if isinstance(e, Name):
                            names.add(e.id)
    return names


def count_conditionals(fn: FunctionAst) -> int:
    """if- plus switch/match-statements; ternaries deliberately excluded."""
    n = 0
    for stmt in _walk_all(fn.body):
        if isinstance(stmt, (If, Switch)):
            n += 1
    return n


def count_loops(fn: FunctionAst) -> int:
    """for/while/do-while statements; comprehensions don't exist in the subset."""
    n = 0
    for stmt in _walk_all(fn.body):
        if isinstance(stmt, (While, DoWhile, ForC, ForRange)):
            n += 1
    return n


def _walk_all(body: list):
    # like walk_stmts but also descends into ForC init/update slots
    for stmt in walk_stmts(body):
        yield stmt
        if isinstance(stmt, ForC):
            if stmt.init is not None:
                yield stmt.init
            if stmt.update is not None:
                yield stmt.update
