"""In-process interpreter for the shared AST subset.

Runs a FunctionAst on concrete argument values under either Java or
Python arithmetic rules (the two differ on integer division and modulo
of negative operands). A step budget bounds runaway programs, mapping
them to a Timeout outcome instead of hanging the host.
"""

from dataclasses import dataclass

from .nodes import (
    Assign, Binary, BoolLit, Call, DoWhile, ExprStmt, FloatLit, ForC,
    ForRange, FunctionAst, If, Index, IntLit, Len, Name, NewArray, NullLit,
    Print, Return, StrLit, Switch, Ternary, Unary, VarDecl, While,
)
from .values import values_equal

DEFAULT_STEP_LIMIT = 2_000_000


class ProgramCrash(Exception):
    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(detail)


class StepLimitExceeded(Exception):
    pass


class _ReturnSignal(Exception):
    def __init__(self, value):
        self.value = value


@dataclass
class RunResult:
    value: object
    prints: list


_TYPE_DEFAULT = {"int": 0, "boolean": False, "double": 0.0, "String": "", "int[]": None}


def default_for_type(type_tag: str):
    return _TYPE_DEFAULT.get(type_tag, 0)


class Interpreter:
    def __init__(self, fn: FunctionAst, lang: str, step_limit: int = DEFAULT_STEP_LIMIT):
        assert lang in ("java", "py")
        self.fn = fn
        self.lang = lang
        self.step_limit = step_limit
        self.steps = 0

    def run(self, args: list) -> RunResult:
        """Execute the function; raises ProgramCrash/StepLimitExceeded."""
        self.steps = 0
        prints = []
        try:
            value = self._call(list(args), prints)
        except RecursionError:
            raise ProgramCrash("recursion depth exceeded")
        return RunResult(value, prints)

    def _call(self, args: list, prints: list):
        if len(args) != len(self.fn.params):
            raise ProgramCrash(
                f"arity mismatch: got {len(args)} arguments for "
                f"{len(self.fn.params)} parameters")
        env = {p.name: v for p, v in zip(self.fn.params, args)}
        try:
            self._exec_block(self.fn.body, env, prints)
        except _ReturnSignal as ret:
            return ret.value
        return None

    def _tick(self):
        self.steps += 1
        if self.steps > self.step_limit:
            raise StepLimitExceeded()

    def _exec_block(self, body, env, prints):
        for stmt in body:
            self._exec(stmt, env, prints)

    def _exec(self, stmt, env, prints):
        self._tick()
        if isinstance(stmt, VarDecl):
            env[stmt.name] = (self._eval(stmt.init, env, prints)
                              if stmt.init is not None
                              else default_for_type(stmt.var_type))
        elif isinstance(stmt, Assign):
            self._assign(stmt, env, prints)
        elif isinstance(stmt, If):
            if self._truth(self._eval(stmt.cond, env, prints)):
                self._exec_block(stmt.then, env, prints)
            else:
                self._exec_block(stmt.orelse, env, prints)
        elif isinstance(stmt, Switch):
            self._exec_switch(stmt, env, prints)
        elif isinstance(stmt, While):
            while self._truth(self._eval(stmt.cond, env, prints)):
                self._tick()
                self._exec_block(stmt.body, env, prints)
        elif isinstance(stmt, DoWhile):
            while True:
                self._tick()
                self._exec_block(stmt.body, env, prints)
                if not self._truth(self._eval(stmt.cond, env, prints)):
                    break
        elif isinstance(stmt, ForC):
            if stmt.init is not None:
                self._exec(stmt.init, env, prints)
            while stmt.cond is None or self._truth(self._eval(stmt.cond, env, prints)):
                self._tick()
                self._exec_block(stmt.body, env, prints)
                if stmt.update is not None:
                    self._exec(stmt.update, env, prints)
        elif isinstance(stmt, ForRange):
            start = self._eval(stmt.start, env, prints)
            stop = self._eval(stmt.stop, env, prints)
            step = (self._eval(stmt.step, env, prints)
                    if stmt.step is not None else 1)
            try:
                rng = range(start, stop, step)
            except (TypeError, ValueError) as exc:
                raise ProgramCrash(f"bad range: {exc}")
            for v in rng:
                self._tick()
                env[stmt.var] = v
                self._exec_block(stmt.body, env, prints)
        elif isinstance(stmt, Return):
            raise _ReturnSignal(
                None if stmt.value is None else self._eval(stmt.value, env, prints))
        elif isinstance(stmt, Print):
            prints.append(self._eval(stmt.value, env, prints))
        elif isinstance(stmt, ExprStmt):
            self._eval(stmt.expr, env, prints)
        else:
            raise ProgramCrash(f"cannot execute {type(stmt).__name__}")

    def _exec_switch(self, stmt, env, prints):
        subject = self._eval(stmt.subject, env, prints)
        default_body = None
        for case in stmt.cases:
            if not case.labels:
                default_body = case.body
                continue
            for label in case.labels:
                if values_equal(subject, self._eval(label, env, prints), tol=0.0):
                    self._exec_block(case.body, env, prints)
                    return
        if default_body is not None:
            self._exec_block(default_body, env, prints)

    def _assign(self, stmt, env, prints):
        value = self._eval(stmt.value, env, prints)
        if stmt.op != "=":
            current = self._eval(stmt.target, env, prints)
            value = self._binop(stmt.op[:-1], current, value)
        target = stmt.target
        if isinstance(target, Name):
            env[target.id] = value
        elif isinstance(target, Index):
            arr = self._eval(target.base, env, prints)
            idx = self._eval(target.index, env, prints)
            if not isinstance(arr, list):
                raise ProgramCrash("indexing a non-array value")
            try:
                arr[self._index(idx, arr)] = value
            except IndexError:
                raise ProgramCrash(f"index {idx} out of bounds")
        else:
            raise ProgramCrash("bad assignment target")

    def _index(self, idx, arr):
        if not isinstance(idx, int) or isinstance(idx, bool):
            raise ProgramCrash("non-integer index")
        if self.lang == "java" and idx < 0:
            raise ProgramCrash(f"index {idx} out of bounds")
        if idx >= len(arr) or idx < -len(arr):
            raise ProgramCrash(f"index {idx} out of bounds")
        return idx

    def _truth(self, v) -> bool:
        if self.lang == "java":
            if not isinstance(v, bool):
                raise ProgramCrash("condition is not boolean")
            return v
        return bool(v)

    def _eval(self, e, env, prints):
        self._tick()
        if isinstance(e, IntLit):
            return e.value
        if isinstance(e, FloatLit):
            return e.value
        if isinstance(e, BoolLit):
            return e.value
        if isinstance(e, StrLit):
            return e.value
        if isinstance(e, NullLit):
            return None
        if isinstance(e, Name):
            if e.id not in env:
                raise ProgramCrash(f"undefined variable {e.id!r}")
            return env[e.id]
        if isinstance(e, Unary):
            v = self._eval(e.operand, env, prints)
            if e.op == "-":
                if not isinstance(v, (int, float)) or isinstance(v, bool):
                    raise ProgramCrash("negating a non-number")
                return -v
            return not self._truth(v)
        if isinstance(e, Binary):
            if e.op == "&&":
                return (self._truth(self._eval(e.left, env, prints))
                        and self._truth(self._eval(e.right, env, prints)))
            if e.op == "||":
                return (self._truth(self._eval(e.left, env, prints))
                        or self._truth(self._eval(e.right, env, prints)))
            return self._binop(e.op, self._eval(e.left, env, prints),
                               self._eval(e.right, env, prints))
        if isinstance(e, Ternary):
            if self._truth(self._eval(e.cond, env, prints)):
                return self._eval(e.then, env, prints)
            return self._eval(e.other, env, prints)
        if isinstance(e, Index):
            arr = self._eval(e.base, env, prints)
            idx = self._eval(e.index, env, prints)
            if isinstance(arr, list):
                return arr[self._index(idx, arr)]
            if isinstance(arr, str) and self.lang == "py":
                try:
                    return arr[idx]
                except (IndexError, TypeError) as exc:
                    raise ProgramCrash(str(exc))
            raise ProgramCrash("indexing a non-array value")
        if isinstance(e, Len):
            v = self._eval(e.base, env, prints)
            if isinstance(v, (list, str)):
                return len(v)
            raise ProgramCrash("length of a non-array value")
        if isinstance(e, NewArray):
            n = self._eval(e.size, env, prints)
            if not isinstance(n, int) or isinstance(n, bool) or n < 0:
                raise ProgramCrash(f"bad array size {n!r}")
            if n > 1_000_000:
                raise ProgramCrash(f"array size {n} over limit")
            return [0] * n
        if isinstance(e, Call):
            args = [self._eval(a, env, prints) for a in e.args]
            return self._call_fn(e.func, args, prints)
        raise ProgramCrash(f"cannot evaluate {type(e).__name__}")

    def _call_fn(self, func, args, prints):
        if func == self.fn.name:
            return self._call(args, prints)
        try:
            if func == "max":
                return max(args) if len(args) != 1 else max(args[0])
            if func == "min":
                return min(args) if len(args) != 1 else min(args[0])
            if func == "abs":
                return abs(args[0])
            if func == "str" and self.lang == "py":
                return _py_str(args[0])
        except (TypeError, ValueError, RecursionError) as exc:
            raise ProgramCrash(f"{func}: {exc}")
        raise ProgramCrash(f"undefined function {func!r}")

    def _binop(self, op, a, b):
        if op in ("==", "!="):
            eq = values_equal(a, b, tol=0.0)
            return eq if op == "==" else not eq
        if op in ("<", "<=", ">", ">="):
            if not _both_numbers(a, b):
                raise ProgramCrash(f"bad operands for {op}")
            return {"<": a < b, "<=": a <= b, ">": a > b, ">=": a >= b}[op]
        if op == "+":
            if isinstance(a, str) or isinstance(b, str):
                if self.lang == "java":
                    return _java_str(a) + _java_str(b)
                if isinstance(a, str) and isinstance(b, str):
                    return a + b
                raise ProgramCrash("cannot concatenate str and non-str")
            if not _both_numbers(a, b):
                raise ProgramCrash("bad operands for +")
            return a + b
        if not _both_numbers(a, b):
            raise ProgramCrash(f"bad operands for {op}")
        if op == "-":
            return a - b
        if op == "*":
            return a * b
        try:
            if op == "/":
                if self.lang == "java":
                    if isinstance(a, int) and isinstance(b, int):
                        q = abs(a) // abs(b)
                        return q if (a >= 0) == (b >= 0) else -q
                    return a / b
                return a / b
            if op == "//":
                return a // b
            if op == "%":
                if self.lang == "java" and isinstance(a, int) and isinstance(b, int):
                    return a - (abs(a) // abs(b)) * b * (1 if (a >= 0) == (b >= 0) else -1)
                return a % b
        except ZeroDivisionError:
            raise ProgramCrash("division by zero")
        raise ProgramCrash(f"unknown operator {op}")


def _both_numbers(a, b) -> bool:
    return (isinstance(a, (int, float)) and not isinstance(a, bool)
            and isinstance(b, (int, float)) and not isinstance(b, bool))


def _java_str(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if v is None:
        return "null"
    return str(v)


def _py_str(v) -> str:
    return str(v)


def run_function(fn: FunctionAst, lang: str, args: list,
                 step_limit: int = DEFAULT_STEP_LIMIT) -> RunResult:
    return Interpreter(fn, lang, step_limit).run(args)
