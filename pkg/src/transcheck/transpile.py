"""Rule-based Java-to-Python transpilation over the shared AST.

Statement-by-statement mapping designed to preserve the structural
measures (parameter count, conditional count, loop count) and the
input/output behavior of subset programs:

  * classic for-loops become range-loops when the header matches the
    canonical counting pattern and the body leaves the header variables
    alone; otherwise they desugar to init + while.
  * do-while becomes `first = True; while first or cond:` so that no
    extra conditional appears.
  * switch becomes match/case, one conditional either way.
  * `/` between ints becomes `//` (declared types make operand types
    known); string concatenation wraps the non-string side in str().
"""

from copy import deepcopy

from .nodes import (
    Assign, Binary, BoolLit, Call, DoWhile, Expr, ExprStmt, FloatLit, ForC,
    ForRange, FunctionAst, If, Index, IntLit, Len, Name, NewArray, NullLit,
    Param, Print, Return, StrLit, Switch, SwitchCase, Ternary, Unary, VarDecl,
    While, sub_exprs, used_names, walk_stmts,
)


class _Types:
    """Static types of names, from declarations (Java requires them all)."""

    def __init__(self, fn: FunctionAst):
        self.map = {p.name: p.type for p in fn.params}
        self.ret = fn.return_type
        self.fn_name = fn.name
        for stmt in walk_stmts(fn.body):
            if isinstance(stmt, VarDecl):
                self.map[stmt.name] = stmt.var_type
            if isinstance(stmt, ForC) and isinstance(stmt.init, VarDecl):
                self.map[stmt.init.name] = stmt.init.var_type

    def of(self, e: Expr) -> str | None:
        if isinstance(e, IntLit):
            return "int"
        if isinstance(e, FloatLit):
            return "double"
        if isinstance(e, BoolLit):
            return "boolean"
        if isinstance(e, StrLit):
            return "String"
        if isinstance(e, NullLit):
            return None
        if isinstance(e, Name):
            return self.map.get(e.id)
        if isinstance(e, Unary):
            return "boolean" if e.op == "!" else self.of(e.operand)
        if isinstance(e, Binary):
            if e.op in ("&&", "||", "==", "!=", "<", "<=", ">", ">="):
                return "boolean"
            lt, rt = self.of(e.left), self.of(e.right)
            if e.op == "+" and ("String" in (lt, rt)):
                return "String"
            if "double" in (lt, rt):
                return "double"
            return "int"
        if isinstance(e, Ternary):
            return self.of(e.then) or self.of(e.other)
        if isinstance(e, Index):
            return "int"
        if isinstance(e, Len):
            return "int"
        if isinstance(e, NewArray):
            return "int[]"
        if isinstance(e, Call):
            if e.func == self.fn_name:
                return self.ret
            if e.func in ("max", "min", "abs"):
                types = [self.of(a) for a in e.args]
                return "double" if "double" in types else "int"
        return None


def _fresh(base: str, taken: set) -> str:
    if base not in taken:
        taken.add(base)
        return base
    i = 2
    while f"{base}{i}" in taken:
        i += 1
    taken.add(f"{base}{i}")
    return f"{base}{i}"


class _Transpiler:
    def __init__(self, fn: FunctionAst):
        self.types = _Types(fn)
        self.taken = set(used_names(fn))

    def expr(self, e: Expr) -> Expr:
        if isinstance(e, (IntLit, FloatLit, BoolLit, StrLit, NullLit, Name)):
            return deepcopy(e)
        if isinstance(e, Unary):
            return Unary(e.op, self.expr(e.operand))
        if isinstance(e, Binary):
            left, right = self.expr(e.left), self.expr(e.right)
            if e.op == "/":
                lt, rt = self.types.of(e.left), self.types.of(e.right)
                if lt != "double" and rt != "double":
                    return Binary("//", left, right)
                return Binary("/", left, right)
            if e.op == "+":
                lt, rt = self.types.of(e.left), self.types.of(e.right)
                if "String" in (lt, rt):
                    if lt != "String":
                        left = Call("str", [left])
                    if rt != "String":
                        right = Call("str", [right])
            return Binary(e.op, left, right)
        if isinstance(e, Ternary):
            return Ternary(self.expr(e.cond), self.expr(e.then), self.expr(e.other))
        if isinstance(e, Index):
            return Index(self.expr(e.base), self.expr(e.index))
        if isinstance(e, Len):
            return Len(self.expr(e.base))
        if isinstance(e, NewArray):
            return NewArray(self.expr(e.size))
        if isinstance(e, Call):
            return Call(e.func, [self.expr(a) for a in e.args])
        raise TypeError(f"cannot transpile expression {e!r}")

    def block(self, body: list) -> list:
        out = []
        for stmt in body:
            out.extend(self.stmt(stmt))
        return out

    def stmt(self, stmt) -> list:
        if isinstance(stmt, VarDecl):
            if stmt.init is None:
                return []  # bound at first assignment, as in the source's use
            return [Assign(Name(stmt.name), "=", self.expr(stmt.init))]
        if isinstance(stmt, Assign):
            op = stmt.op
            value = self.expr(stmt.value)
            if op == "/=" and self.types.of(stmt.target) != "double":
                op = "//="
            if (op == "+=" and self.types.of(stmt.target) == "String"
                    and self.types.of(stmt.value) != "String"):
                value = Call("str", [value])
            return [Assign(self.expr(stmt.target), op, value)]
        if isinstance(stmt, If):
            return [If(self.expr(stmt.cond), self.block(stmt.then),
                       self.block(stmt.orelse))]
        if isinstance(stmt, Switch):
            # match without a wildcard falls through silently, same as a
            # switch without default
            cases = [SwitchCase([self.expr(l) for l in c.labels], self.block(c.body))
                     for c in stmt.cases]
            return [Switch(self.expr(stmt.subject), cases)]
        if isinstance(stmt, While):
            return [While(self.expr(stmt.cond), self.block(stmt.body))]
        if isinstance(stmt, DoWhile):
            flag = _fresh("ran_once", self.taken)
            cond = Binary("||", Unary("!", Name(flag)), self.expr(stmt.cond))
            body = [Assign(Name(flag), "=", BoolLit(True))] + self.block(stmt.body)
            return [Assign(Name(flag), "=", BoolLit(False)), While(cond, body)]
        if isinstance(stmt, ForC):
            return self.for_c(stmt)
        if isinstance(stmt, Return):
            return [Return(None if stmt.value is None else self.expr(stmt.value))]
        if isinstance(stmt, Print):
            return [Print(self.expr(stmt.value))]
        if isinstance(stmt, ExprStmt):
            return [ExprStmt(self.expr(stmt.expr))]
        raise TypeError(f"cannot transpile statement {stmt!r}")

    def for_c(self, stmt: ForC) -> list:
        rng = self.range_pattern(stmt)
        if rng is not None:
            var, start, stop, step = rng
            return [ForRange(var, self.expr(start), self.expr(stop),
                             None if step is None else self.expr(step),
                             self.block(stmt.body))]
        out = []
        if stmt.init is not None:
            out.extend(self.stmt(stmt.init))
        cond = self.expr(stmt.cond) if stmt.cond is not None else BoolLit(True)
        body = self.block(stmt.body)
        if stmt.update is not None:
            body.extend(self.stmt(stmt.update))
        out.append(While(cond, body))
        return out

    def range_pattern(self, stmt: ForC):
        """(var, start, stop, step) for canonical counting loops, else None."""
        init, cond, update = stmt.init, stmt.cond, stmt.update
        if not (isinstance(init, VarDecl) and init.var_type == "int"
                and init.init is not None):
            return None
        var = init.name
        if not (isinstance(cond, Binary) and isinstance(cond.left, Name)
                and cond.left.id == var and cond.op in ("<", "<=", ">", ">=")):
            return None
        if not (isinstance(update, Assign) and isinstance(update.target, Name)
                and update.target.id == var and update.op in ("+=", "-=")
                and isinstance(update.value, IntLit) and update.value.value > 0):
            return None
        delta = update.value.value
        ascending = update.op == "+="
        if ascending and cond.op not in ("<", "<="):
            return None
        if not ascending and cond.op not in (">", ">="):
            return None
        # range evaluates the bound once, so it is only equivalent if the
        # body leaves the loop variable and every name in the bound alone
        header_names = {var}
        stack = [cond]
        while stack:
            e = stack.pop()
            if isinstance(e, Name):
                header_names.add(e.id)
            stack.extend(sub_exprs(e))
        for inner in walk_stmts(stmt.body):
            if isinstance(inner, Assign) and isinstance(inner.target, Name):
                if inner.target.id in header_names:
                    return None
            if isinstance(inner, VarDecl) and inner.name in header_names:
                return None
            if (isinstance(inner, ForC) and isinstance(inner.init, VarDecl)
                    and inner.init.name in header_names):
                return None
        bound = cond.right
        if cond.op == "<":
            stop = bound
        elif cond.op == "<=":
            stop = (IntLit(bound.value + 1) if isinstance(bound, IntLit)
                    else Binary("+", bound, IntLit(1)))
        elif cond.op == ">":
            stop = bound
        else:  # >=
            stop = (IntLit(bound.value - 1) if isinstance(bound, IntLit)
                    else Binary("-", bound, IntLit(1)))
        step = None
        if not ascending:
            step = Unary("-", IntLit(delta))
        elif delta != 1:
            step = IntLit(delta)
        return init.name, init.init, stop, step


def transpile_function(fn: FunctionAst) -> FunctionAst:
    """Translate a Java FunctionAst into a Python FunctionAst."""
    tr = _Transpiler(fn)
    params = [Param(p.name, None) for p in fn.params]
    return FunctionAst(fn.name, params, tr.block(fn.body), None)
