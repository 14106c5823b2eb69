"""Python subset front end.

Parsing leans on the standard library ast module, then maps the CPython
tree onto the shared node set, rejecting anything outside the subset:
one top-level def; if/elif/else, while, for-over-range, match/case,
return, print, (augmented) assignment; expressions over ints, floats,
bools, strings, names, arithmetic, comparisons, and/or/not, x if c else
y, indexing, len(), max/min/abs/str calls, self-recursion, and the
`[0] * n` zero-array idiom.
"""

import ast as pyast

from .errors import MalformedSource, UnsupportedConstruct
from .nodes import (
    Assign, Binary, BoolLit, Call, Expr, ExprStmt, FloatLit, ForRange,
    FunctionAst, If, Index, IntLit, Len, Name, NewArray, NullLit, Param,
    Print, Return, Stmt, StrLit, Switch, SwitchCase, Ternary, Unary, While,
)

ALLOWED_CALLS = ("len", "max", "min", "abs", "str")

_BINOPS = {
    pyast.Add: "+", pyast.Sub: "-", pyast.Mult: "*",
    pyast.Div: "/", pyast.FloorDiv: "//", pyast.Mod: "%",
}
_CMPOPS = {
    pyast.Eq: "==", pyast.NotEq: "!=",
    pyast.Lt: "<", pyast.LtE: "<=", pyast.Gt: ">", pyast.GtE: ">=",
}
_AUGOPS = {
    pyast.Add: "+=", pyast.Sub: "-=", pyast.Mult: "*=",
    pyast.Div: "/=", pyast.FloorDiv: "//=", pyast.Mod: "%=",
}


def _no(node, construct):
    line = getattr(node, "lineno", None)
    raise UnsupportedConstruct(construct, line)


def parse_python(source: str) -> FunctionAst:
    """Parse one Python function; raises MalformedSource/UnsupportedConstruct."""
    try:
        module = pyast.parse(source)
    except SyntaxError as exc:
        raise MalformedSource(f"python syntax error: {exc.msg} (line {exc.lineno})")
    if len(module.body) != 1 or not isinstance(module.body[0], pyast.FunctionDef):
        raise MalformedSource("expected exactly one top-level function definition")
    fdef = module.body[0]
    if fdef.decorator_list:
        _no(fdef, "decorator")
    a = fdef.args
    if a.posonlyargs or a.kwonlyargs or a.vararg or a.kwarg or a.defaults or a.kw_defaults:
        _no(fdef, "non-positional parameters")
    params = [Param(arg.arg, None) for arg in a.args]
    fn = FunctionAst(fdef.name, params, _stmts(fdef.body, fdef.name), None)
    seen = set()
    for p in fn.params:
        if p.name in seen:
            raise MalformedSource(f"duplicate parameter name {p.name!r}")
        seen.add(p.name)
    return fn


def _stmts(body, self_name) -> list:
    out = []
    for node in body:
        if isinstance(node, pyast.Pass):
            continue
        out.append(_stmt(node, self_name))
    return out


def _stmt(node, self_name) -> Stmt:
    if isinstance(node, pyast.Return):
        return Return(None if node.value is None else _expr(node.value, self_name))
    if isinstance(node, pyast.Assign):
        if len(node.targets) != 1:
            _no(node, "chained assignment")
        target = _expr(node.targets[0], self_name)
        if not isinstance(target, (Name, Index)):
            _no(node, "assignment target")
        return Assign(target, "=", _expr(node.value, self_name))
    if isinstance(node, pyast.AugAssign):
        op = _AUGOPS.get(type(node.op))
        if op is None:
            _no(node, f"augmented {type(node.op).__name__}")
        target = _expr(node.target, self_name)
        return Assign(target, op, _expr(node.value, self_name))
    if isinstance(node, pyast.If):
        return If(_expr(node.test, self_name),
                  _stmts(node.body, self_name),
                  _stmts(node.orelse, self_name))
    if isinstance(node, pyast.While):
        if node.orelse:
            _no(node, "while-else")
        return While(_expr(node.test, self_name), _stmts(node.body, self_name))
    if isinstance(node, pyast.For):
        return _for(node, self_name)
    if isinstance(node, pyast.Match):
        return _match(node, self_name)
    if isinstance(node, pyast.Expr):
        call = node.value
        if (isinstance(call, pyast.Call) and isinstance(call.func, pyast.Name)
                and call.func.id == "print"):
            if len(call.args) != 1 or call.keywords:
                _no(node, "print with other than one argument")
            return Print(_expr(call.args[0], self_name))
        return ExprStmt(_expr(call, self_name))
    _no(node, type(node).__name__)


def _for(node: pyast.For, self_name) -> ForRange:
    if node.orelse:
        _no(node, "for-else")
    if not isinstance(node.target, pyast.Name):
        _no(node, "destructuring loop target")
    it = node.iter
    if not (isinstance(it, pyast.Call) and isinstance(it.func, pyast.Name)
            and it.func.id == "range" and not it.keywords
            and 1 <= len(it.args) <= 3):
        _no(node, "for over non-range iterable")
    args = [_expr(a, self_name) for a in it.args]
    if len(args) == 1:
        start, stop, step = IntLit(0), args[0], None
    elif len(args) == 2:
        start, stop, step = args[0], args[1], None
    else:
        start, stop, step = args
    return ForRange(node.target.id, start, stop, step,
                    _stmts(node.body, self_name))


def _match(node: pyast.Match, self_name) -> Switch:
    subject = _expr(node.subject, self_name)
    cases = []
    for idx, mcase in enumerate(node.cases):
        if mcase.guard is not None:
            _no(node, "match guard")
        labels = _match_labels(mcase.pattern)
        if labels is None:  # wildcard
            if idx != len(node.cases) - 1:
                _no(node, "wildcard case before last")
            cases.append(SwitchCase([], _stmts(mcase.body, self_name)))
        else:
            cases.append(SwitchCase(labels, _stmts(mcase.body, self_name)))
    return Switch(subject, cases)


def _match_labels(pattern):
    if isinstance(pattern, pyast.MatchAs) and pattern.pattern is None:
        return None
    if isinstance(pattern, pyast.MatchOr):
        labels = []
        for p in pattern.patterns:
            sub = _match_labels(p)
            if sub is None:
                _no(pattern, "wildcard inside or-pattern")
            labels.extend(sub)
        return labels
    if isinstance(pattern, pyast.MatchValue):
        return [_literal(pattern.value)]
    _no(pattern, f"match pattern {type(pattern).__name__}")


def _literal(node) -> Expr:
    if isinstance(node, pyast.Constant):
        v = node.value
        if isinstance(v, bool):
            return BoolLit(v)
        if isinstance(v, int):
            return IntLit(v)
        if isinstance(v, str):
            return StrLit(v)
    if (isinstance(node, pyast.UnaryOp) and isinstance(node.op, pyast.USub)
            and isinstance(node.operand, pyast.Constant)
            and isinstance(node.operand.value, int)):
        return IntLit(-node.operand.value)
    _no(node, "case label")


def _expr(node, self_name) -> Expr:
    if isinstance(node, pyast.Constant):
        v = node.value
        if isinstance(v, bool):
            return BoolLit(v)
        if isinstance(v, int):
            return IntLit(v)
        if isinstance(v, float):
            return FloatLit(v)
        if isinstance(v, str):
            return StrLit(v)
        if v is None:
            return NullLit()
        _no(node, f"literal {v!r}")
    if isinstance(node, pyast.Name):
        return Name(node.id)
    if isinstance(node, pyast.UnaryOp):
        if isinstance(node.op, pyast.USub):
            return Unary("-", _expr(node.operand, self_name))
        if isinstance(node.op, pyast.Not):
            return Unary("!", _expr(node.operand, self_name))
        _no(node, f"unary {type(node.op).__name__}")
    if isinstance(node, pyast.BinOp):
        op = _BINOPS.get(type(node.op))
        if op is None:
            _no(node, f"operator {type(node.op).__name__}")
        # `[0] * n` is the zero-array idiom, not a list operation
        if op == "*" and isinstance(node.left, pyast.List):
            elts = node.left.elts
            if (len(elts) == 1 and isinstance(elts[0], pyast.Constant)
                    and elts[0].value == 0):
                return NewArray(_expr(node.right, self_name))
            _no(node, "list expression")
        return Binary(op, _expr(node.left, self_name), _expr(node.right, self_name))
    if isinstance(node, pyast.BoolOp):
        op = "&&" if isinstance(node.op, pyast.And) else "||"
        vals = [_expr(v, self_name) for v in node.values]
        e = vals[0]
        for v in vals[1:]:
            e = Binary(op, e, v)
        return e
    if isinstance(node, pyast.Compare):
        if len(node.ops) != 1:
            _no(node, "chained comparison")
        op = _CMPOPS.get(type(node.ops[0]))
        if op is None:
            _no(node, f"comparison {type(node.ops[0]).__name__}")
        return Binary(op, _expr(node.left, self_name),
                      _expr(node.comparators[0], self_name))
    if isinstance(node, pyast.IfExp):
        return Ternary(_expr(node.test, self_name),
                       _expr(node.body, self_name),
                       _expr(node.orelse, self_name))
    if isinstance(node, pyast.Subscript):
        if isinstance(node.slice, pyast.Slice):
            _no(node, "slice")
        return Index(_expr(node.value, self_name), _expr(node.slice, self_name))
    if isinstance(node, pyast.Call):
        if not isinstance(node.func, pyast.Name) or node.keywords:
            _no(node, "call form")
        fname = node.func.id
        args = [_expr(a, self_name) for a in node.args]
        if fname == "len":
            if len(args) != 1:
                _no(node, "len arity")
            return Len(args[0])
        if fname == "range":
            _no(node, "range outside for")
        if fname in ALLOWED_CALLS or fname == self_name:
            return Call(fname, args)
        _no(node, f"call to {fname}")
    _no(node, type(node).__name__)


# --- rendering ---------------------------------------------------------------

_PREC = {
    "||": 1, "&&": 2,
    "==": 4, "!=": 4, "<": 4, "<=": 4, ">": 4, ">=": 4,
    "+": 5, "-": 5,
    "*": 6, "/": 6, "//": 6, "%": 6,
}
_PYOPS = {"&&": "and", "||": "or"}


def _render_expr(e: Expr, parent_prec=0) -> str:
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, FloatLit):
        return repr(e.value)
    if isinstance(e, BoolLit):
        return "True" if e.value else "False"
    if isinstance(e, StrLit):
        return '"' + e.value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(e, NullLit):
        return "None"
    if isinstance(e, Name):
        return e.id
    if isinstance(e, Unary):
        if e.op == "!":
            inner = _render_expr(e.operand, 3)
            text = f"not {inner}"
            return f"({text})" if parent_prec >= 3 else text
        text = f"-{_render_expr(e.operand, 6)}"
        return f"({text})" if parent_prec >= 7 else text
    if isinstance(e, Binary):
        prec = _PREC[e.op]
        op = _PYOPS.get(e.op, e.op)
        # comparisons are non-associative here (Python would chain them);
        # the floor of 1 keeps conditional expressions parenthesized
        left = _render_expr(e.left, prec if prec == 4 else max(prec - 1, 1))
        right = _render_expr(e.right, prec)
        text = f"{left} {op} {right}"
        return f"({text})" if prec <= parent_prec else text
    if isinstance(e, Ternary):
        text = (f"{_render_expr(e.then, 1)} if {_render_expr(e.cond, 1)}"
                f" else {_render_expr(e.other)}")
        return f"({text})" if parent_prec > 0 else text
    if isinstance(e, Index):
        return f"{_render_expr(e.base, 7)}[{_render_expr(e.index)}]"
    if isinstance(e, Len):
        return f"len({_render_expr(e.base)})"
    if isinstance(e, NewArray):
        text = f"[0] * {_render_expr(e.size, 6)}"
        return f"({text})" if parent_prec >= 6 else text
    if isinstance(e, Call):
        args = ", ".join(_render_expr(a) for a in e.args)
        return f"{e.func}({args})"
    raise TypeError(f"cannot render {e!r}")


def _render_block(body: list, out: list, depth: int):
    pad = "    " * depth
    if not body:
        out.append(f"{pad}pass")
        return
    for stmt in body:
        if isinstance(stmt, Assign):
            out.append(f"{pad}{_render_expr(stmt.target)} {stmt.op} {_render_expr(stmt.value)}")
        elif isinstance(stmt, Return):
            if stmt.value is None:
                out.append(f"{pad}return")
            else:
                out.append(f"{pad}return {_render_expr(stmt.value)}")
        elif isinstance(stmt, Print):
            out.append(f"{pad}print({_render_expr(stmt.value)})")
        elif isinstance(stmt, ExprStmt):
            out.append(f"{pad}{_render_expr(stmt.expr)}")
        elif isinstance(stmt, If):
            _render_if(stmt, out, depth, "if")
        elif isinstance(stmt, While):
            out.append(f"{pad}while {_render_expr(stmt.cond)}:")
            _render_block(stmt.body, out, depth + 1)
        elif isinstance(stmt, ForRange):
            args = [_render_expr(stmt.start), _render_expr(stmt.stop)]
            if stmt.step is not None:
                args.append(_render_expr(stmt.step))
            if stmt.step is None and isinstance(stmt.start, IntLit) and stmt.start.value == 0:
                args = [args[1]]
            out.append(f"{pad}for {stmt.var} in range({', '.join(args)}):")
            _render_block(stmt.body, out, depth + 1)
        elif isinstance(stmt, Switch):
            out.append(f"{pad}match {_render_expr(stmt.subject)}:")
            for case in stmt.cases:
                if case.labels:
                    label = " | ".join(_render_expr(l) for l in case.labels)
                    out.append(f"{pad}    case {label}:")
                else:
                    out.append(f"{pad}    case _:")
                _render_block(case.body, out, depth + 2)
        else:
            raise TypeError(f"cannot render statement {stmt!r} as Python")


def _render_if(stmt: If, out: list, depth: int, keyword: str):
    pad = "    " * depth
    out.append(f"{pad}{keyword} {_render_expr(stmt.cond)}:")
    _render_block(stmt.then, out, depth + 1)
    orelse = stmt.orelse
    if len(orelse) == 1 and isinstance(orelse[0], If):
        _render_if(orelse[0], out, depth, "elif")
    elif orelse:
        out.append(f"{pad}else:")
        _render_block(orelse, out, depth + 1)


def render_python(fn: FunctionAst) -> str:
    params = ", ".join(p.name for p in fn.params)
    out = [f"def {fn.name}({params}):"]
    _render_block(fn.body, out, 1)
    return "\n".join(out) + "\n"
