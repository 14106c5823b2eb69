"""Java subset front end: lexer, recursive-descent parser, renderer.

Grammar (one top-level function per compilation unit):

    function   := modifier* type IDENT '(' params? ')' block
    modifier   := 'public' | 'private' | 'static' | 'final'
    type       := ('int' | 'boolean' | 'double' | 'String' | 'void') '[]'?
    params     := type IDENT (',' type IDENT)*
    block      := '{' stmt* '}'
    stmt       := varDecl | ifStmt | whileStmt | doWhileStmt | forStmt
                | switchStmt | returnStmt | printStmt | simpleStmt ';' | block
    varDecl    := type IDENT ('=' expr)? ';'
    ifStmt     := 'if' '(' expr ')' body ('else' (ifStmt | body))?
    whileStmt  := 'while' '(' expr ')' body
    doWhileStmt:= 'do' block 'while' '(' expr ')' ';'
    forStmt    := 'for' '(' forInit? ';' expr? ';' simpleStmt? ')' body
    switchStmt := 'switch' '(' expr ')' '{' switchCase* '}'
    switchCase := ('case' literal ':')+ stmt* ('break' ';')?
                | 'default' ':' stmt* ('break' ';')?
    returnStmt := 'return' expr? ';'
    printStmt  := 'System' '.' 'out' '.' 'println' '(' expr ')' ';'
    simpleStmt := lvalue ('=' | '+=' | '-=' | '*=' | '/=' | '%=') expr
                | lvalue '++' | lvalue '--'
                | call

Expressions follow the usual Java precedence ladder; supported calls are
Math.max/Math.min/Math.abs and self-recursion. `?:`, `[]`, `.length` and
`new int[n]` round out the subset. Single statements in place of braced
bodies and `i++` sugar are normalized at parse time, so render(parse(t))
is a fixed point even when t uses the sugared forms.
"""

from .errors import MalformedSource, UnsupportedConstruct
from .nodes import (
    Assign, Binary, BoolLit, Call, DoWhile, Expr, ExprStmt, FloatLit, ForC,
    FunctionAst, If, Index, IntLit, Len, Name, NewArray, NullLit, Param,
    Print, Return, Stmt, StrLit, Switch, SwitchCase, Ternary, Unary, VarDecl,
    While,
)

SCALAR_TYPES = ("int", "boolean", "double", "String", "void")
KEYWORDS = {
    "if", "else", "while", "do", "for", "switch", "case", "default",
    "break", "return", "true", "false", "null", "new",
    "int", "boolean", "double", "String", "void",
    "public", "private", "static", "final",
}
MODIFIERS = {"public", "private", "static", "final"}
BUILTIN_CALLS = {"Math.max": "max", "Math.min": "min", "Math.abs": "abs"}

_PUNCT = [
    "==>",  # never valid Java; kept out by order below
    "==", "!=", "<=", ">=", "&&", "||", "++", "--",
    "+=", "-=", "*=", "/=", "%=",
    "{", "}", "(", ")", "[", "]", ";", ",", ".", ":", "?",
    "<", ">", "=", "+", "-", "*", "/", "%", "!",
]
_PUNCT = [p for p in _PUNCT if p != "==>"]


class Token:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind = kind  # "ident" | "int" | "float" | "string" | "punct" | "eof"
        self.text = text
        self.line = line
        self.col = col

    def __repr__(self):
        return f"Token({self.kind},{self.text!r})"


def tokenize(src: str) -> list:
    toks = []
    i, line, col = 0, 1, 1
    n = len(src)
    while i < n:
        c = src[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if src.startswith("//", i):
            j = src.find("\n", i)
            i = n if j < 0 else j
            continue
        if src.startswith("/*", i):
            j = src.find("*/", i + 2)
            if j < 0:
                raise MalformedSource(f"unterminated comment at line {line}")
            skipped = src[i:j + 2]
            line += skipped.count("\n")
            i = j + 2
            continue
        if c == '"':
            j = i + 1
            buf = []
            while j < n and src[j] != '"':
                if src[j] == "\\":
                    if j + 1 >= n:
                        break
                    esc = src[j + 1]
                    buf.append({"n": "\n", "t": "\t", '"': '"', "\\": "\\"}.get(esc, esc))
                    j += 2
                else:
                    buf.append(src[j])
                    j += 1
            if j >= n:
                raise MalformedSource(f"unterminated string at line {line}")
            toks.append(Token("string", "".join(buf), line, col))
            col += j + 1 - i
            i = j + 1
            continue
        if c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            if j < n and src[j] == "." and j + 1 < n and src[j + 1].isdigit():
                j += 1
                while j < n and src[j].isdigit():
                    j += 1
                toks.append(Token("float", src[i:j], line, col))
            else:
                toks.append(Token("int", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(Token("ident", src[i:j], line, col))
            col += j - i
            i = j
            continue
        for p in _PUNCT:
            if src.startswith(p, i):
                toks.append(Token("punct", p, line, col))
                i += len(p)
                col += len(p)
                break
        else:
            raise MalformedSource(f"unexpected character {c!r} at line {line}")
    toks.append(Token("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.pos = 0

    # -- token helpers
    def peek(self, offset=0) -> Token:
        return self.toks[min(self.pos + offset, len(self.toks) - 1)]

    def at(self, text) -> bool:
        t = self.peek()
        return t.kind == "punct" and t.text == text or t.kind == "ident" and t.text == text

    def advance(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def expect(self, text) -> Token:
        if not self.at(text):
            t = self.peek()
            raise MalformedSource(
                f"expected {text!r} but found {t.text!r} at line {t.line}")
        return self.advance()

    def fail_unsupported(self, construct):
        raise UnsupportedConstruct(construct, self.peek().line)

    # -- declarations
    def parse_function(self) -> FunctionAst:
        while self.peek().kind == "ident" and self.peek().text in MODIFIERS:
            self.advance()
        ret_type = self.parse_type(allow_void=True)
        name_tok = self.advance()
        if name_tok.kind != "ident" or name_tok.text in KEYWORDS:
            raise MalformedSource(f"expected function name at line {name_tok.line}")
        self.expect("(")
        params = []
        if not self.at(")"):
            while True:
                p_type = self.parse_type(allow_void=False)
                p_name = self.advance()
                if p_name.kind != "ident" or p_name.text in KEYWORDS:
                    raise MalformedSource(f"expected parameter name at line {p_name.line}")
                params.append(Param(p_name.text, p_type))
                if self.at(","):
                    self.advance()
                    continue
                break
        self.expect(")")
        body = self.parse_block()
        if self.peek().kind != "eof":
            t = self.peek()
            raise MalformedSource(
                f"trailing content after function at line {t.line}: {t.text!r}")
        seen = set()
        for p in params:
            if p.name in seen:
                raise MalformedSource(f"duplicate parameter name {p.name!r}")
            seen.add(p.name)
        return FunctionAst(name_tok.text, params, body, ret_type)

    def parse_type(self, allow_void) -> str:
        t = self.peek()
        if t.kind != "ident" or t.text not in SCALAR_TYPES:
            raise MalformedSource(f"expected a type but found {t.text!r} at line {t.line}")
        if t.text == "void" and not allow_void:
            raise MalformedSource(f"void is only valid as a return type (line {t.line})")
        self.advance()
        if self.at("["):
            if t.text != "int":
                self.fail_unsupported(f"{t.text}[] array")
            self.advance()
            self.expect("]")
            return "int[]"
        return t.text

    # -- statements
    def parse_block(self) -> list:
        self.expect("{")
        body = []
        while not self.at("}"):
            body.append(self.parse_stmt())
        self.expect("}")
        return body

    def parse_body(self) -> list:
        """A braced block or a single statement (normalized to a list)."""
        if self.at("{"):
            return self.parse_block()
        return [self.parse_stmt()]

    def parse_stmt(self) -> Stmt:
        t = self.peek()
        if t.kind == "ident":
            if t.text == "if":
                return self.parse_if()
            if t.text == "while":
                self.advance()
                self.expect("(")
                cond = self.parse_expr()
                self.expect(")")
                return While(cond, self.parse_body())
            if t.text == "do":
                self.advance()
                body = self.parse_block()
                self.expect("while")
                self.expect("(")
                cond = self.parse_expr()
                self.expect(")")
                self.expect(";")
                return DoWhile(cond, body)
            if t.text == "for":
                return self.parse_for()
            if t.text == "switch":
                return self.parse_switch()
            if t.text == "return":
                self.advance()
                value = None if self.at(";") else self.parse_expr()
                self.expect(";")
                return Return(value)
            if t.text in ("break", "continue"):
                self.fail_unsupported(f"{t.text} outside switch")
            if t.text in SCALAR_TYPES:
                return self.parse_var_decl()
            if t.text == "System":
                return self.parse_print()
            stmt = self.parse_simple_stmt()
            self.expect(";")
            return stmt
        if self.at("{"):
            # bare nested block: splice is not meaning-preserving for decls,
            # so keep it out of the subset
            self.fail_unsupported("anonymous block")
        raise MalformedSource(f"unexpected token {t.text!r} at line {t.line}")

    def parse_var_decl(self) -> VarDecl:
        var_type = self.parse_type(allow_void=False)
        name = self.advance()
        if name.kind != "ident" or name.text in KEYWORDS:
            raise MalformedSource(f"expected variable name at line {name.line}")
        init = None
        if self.at("="):
            self.advance()
            init = self.parse_expr()
        self.expect(";")
        return VarDecl(var_type, name.text, init)

    def parse_if(self) -> If:
        self.expect("if")
        self.expect("(")
        cond = self.parse_expr()
        self.expect(")")
        then = self.parse_body()
        orelse = []
        if self.at("else"):
            self.advance()
            if self.at("if"):
                orelse = [self.parse_if()]
            else:
                orelse = self.parse_body()
        return If(cond, then, orelse)

    def parse_for(self) -> ForC:
        self.expect("for")
        self.expect("(")
        init = None
        if not self.at(";"):
            if self.peek().kind == "ident" and self.peek().text in SCALAR_TYPES:
                var_type = self.parse_type(allow_void=False)
                name = self.advance()
                self.expect("=")
                init = VarDecl(var_type, name.text, self.parse_expr())
            else:
                init = self.parse_simple_stmt()
        self.expect(";")
        cond = None if self.at(";") else self.parse_expr()
        self.expect(";")
        update = None if self.at(")") else self.parse_simple_stmt()
        self.expect(")")
        return ForC(init, cond, update, self.parse_body())

    def parse_switch(self) -> Switch:
        self.expect("switch")
        self.expect("(")
        subject = self.parse_expr()
        self.expect(")")
        self.expect("{")
        cases = []
        seen_default = False
        while not self.at("}"):
            labels = []
            if self.at("default"):
                self.advance()
                self.expect(":")
                if seen_default:
                    raise MalformedSource("duplicate default case")
                seen_default = True
            else:
                while self.at("case"):
                    self.advance()
                    labels.append(self.parse_case_label())
                    self.expect(":")
                if not labels:
                    t = self.peek()
                    raise MalformedSource(f"expected case/default at line {t.line}")
            body = []
            terminated = False
            while not (self.at("case") or self.at("default") or self.at("}")):
                if self.at("break"):
                    self.advance()
                    self.expect(";")
                    terminated = True
                    break
                stmt = self.parse_stmt()
                body.append(stmt)
                if isinstance(stmt, Return):
                    terminated = True
                    break
            if not terminated and not self.at("}"):
                self.fail_unsupported("switch fall-through")
            cases.append(SwitchCase(labels, body))
        self.expect("}")
        # default, when present, must be the last case for the match rendering
        for case in cases[:-1]:
            if not case.labels:
                self.fail_unsupported("default before last case")
        return Switch(subject, cases)

    def parse_case_label(self) -> Expr:
        neg = False
        if self.at("-"):
            self.advance()
            neg = True
        t = self.advance()
        if t.kind == "int":
            v = int(t.text)
            return IntLit(-v if neg else v)
        if t.kind == "string" and not neg:
            return StrLit(t.text)
        raise MalformedSource(f"unsupported case label at line {t.line}")

    def parse_print(self) -> Print:
        self.expect("System")
        self.expect(".")
        self.expect("out")
        self.expect(".")
        tok = self.advance()
        if tok.text != "println":
            self.fail_unsupported(f"System.out.{tok.text}")
        self.expect("(")
        value = self.parse_expr()
        self.expect(")")
        self.expect(";")
        return Print(value)

    def parse_simple_stmt(self) -> Stmt:
        target = self.parse_postfix()
        if self.at("++") or self.at("--"):
            op = self.advance().text
            self._check_lvalue(target)
            return Assign(target, "+=" if op == "++" else "-=", IntLit(1))
        for op in ("=", "+=", "-=", "*=", "/=", "%="):
            if self.at(op):
                self.advance()
                self._check_lvalue(target)
                return Assign(target, op, self.parse_expr())
        if isinstance(target, Call):
            return ExprStmt(target)
        t = self.peek()
        raise MalformedSource(f"expected assignment or call at line {t.line}")

    def _check_lvalue(self, e):
        if not isinstance(e, (Name, Index)):
            raise MalformedSource("assignment target must be a variable or element")

    # -- expressions
    def parse_expr(self) -> Expr:
        return self.parse_ternary()

    def parse_ternary(self) -> Expr:
        cond = self.parse_or()
        if self.at("?"):
            self.advance()
            then = self.parse_expr()
            self.expect(":")
            other = self.parse_ternary()
            return Ternary(cond, then, other)
        return cond

    def parse_or(self) -> Expr:
        e = self.parse_and()
        while self.at("||"):
            self.advance()
            e = Binary("||", e, self.parse_and())
        return e

    def parse_and(self) -> Expr:
        e = self.parse_equality()
        while self.at("&&"):
            self.advance()
            e = Binary("&&", e, self.parse_equality())
        return e

    def parse_equality(self) -> Expr:
        e = self.parse_relational()
        while self.at("==") or self.at("!="):
            op = self.advance().text
            e = Binary(op, e, self.parse_relational())
        return e

    def parse_relational(self) -> Expr:
        e = self.parse_additive()
        while self.at("<") or self.at("<=") or self.at(">") or self.at(">="):
            op = self.advance().text
            e = Binary(op, e, self.parse_additive())
        return e

    def parse_additive(self) -> Expr:
        e = self.parse_multiplicative()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            e = Binary(op, e, self.parse_multiplicative())
        return e

    def parse_multiplicative(self) -> Expr:
        e = self.parse_unary()
        while self.at("*") or self.at("/") or self.at("%"):
            op = self.advance().text
            e = Binary(op, e, self.parse_unary())
        return e

    def parse_unary(self) -> Expr:
        if self.at("-"):
            self.advance()
            return Unary("-", self.parse_unary())
        if self.at("!"):
            self.advance()
            return Unary("!", self.parse_unary())
        return self.parse_postfix()

    def parse_postfix(self) -> Expr:
        e = self.parse_primary()
        while True:
            if self.at("["):
                self.advance()
                idx = self.parse_expr()
                self.expect("]")
                e = Index(e, idx)
            elif self.at(".") and self.peek(1).text == "length":
                self.advance()
                self.advance()
                if self.at("("):
                    self.fail_unsupported("String.length()")
                e = Len(e)
            else:
                return e

    def parse_primary(self) -> Expr:
        t = self.peek()
        if t.kind == "int":
            self.advance()
            return IntLit(int(t.text))
        if t.kind == "float":
            self.advance()
            return FloatLit(float(t.text))
        if t.kind == "string":
            self.advance()
            return StrLit(t.text)
        if t.kind == "punct" and t.text == "(":
            self.advance()
            e = self.parse_expr()
            self.expect(")")
            return e
        if t.kind == "ident":
            if t.text == "true":
                self.advance()
                return BoolLit(True)
            if t.text == "false":
                self.advance()
                return BoolLit(False)
            if t.text == "null":
                self.advance()
                return NullLit()
            if t.text == "new":
                self.advance()
                self.expect("int")
                self.expect("[")
                size = self.parse_expr()
                self.expect("]")
                return NewArray(size)
            if t.text == "Math":
                self.advance()
                self.expect(".")
                fn = self.advance()
                full = f"Math.{fn.text}"
                if full not in BUILTIN_CALLS:
                    self.fail_unsupported(full)
                return Call(BUILTIN_CALLS[full], self.parse_args())
            if t.text in KEYWORDS:
                raise MalformedSource(f"unexpected keyword {t.text!r} at line {t.line}")
            self.advance()
            if self.at("("):
                return Call(t.text, self.parse_args())
            return Name(t.text)
        raise MalformedSource(f"unexpected token {t.text!r} at line {t.line}")

    def parse_args(self) -> list:
        self.expect("(")
        args = []
        if not self.at(")"):
            while True:
                args.append(self.parse_expr())
                if self.at(","):
                    self.advance()
                    continue
                break
        self.expect(")")
        return args


def parse_java(source: str) -> FunctionAst:
    """Parse one Java function; raises MalformedSource/UnsupportedConstruct."""
    fn = _Parser(tokenize(source)).parse_function()
    _validate_calls(fn)
    return fn


def _validate_calls(fn: FunctionAst):
    from .nodes import walk_stmts, walk_exprs_of

    allowed = {"max", "min", "abs", fn.name}
    for stmt in walk_stmts(fn.body):
        for e in walk_exprs_of(stmt):
            if isinstance(e, Call) and e.func not in allowed:
                raise UnsupportedConstruct(f"call to {e.func}")


# --- rendering --------------------------------------------------------------

_PREC = {
    "||": 1, "&&": 2,
    "==": 3, "!=": 3,
    "<": 4, "<=": 4, ">": 4, ">=": 4,
    "+": 5, "-": 5,
    "*": 6, "/": 6, "%": 6,
}


def _render_expr(e: Expr, parent_prec=0) -> str:
    if isinstance(e, IntLit):
        return str(e.value)
    if isinstance(e, FloatLit):
        s = repr(e.value)
        return s if "." in s or "e" in s else s + ".0"
    if isinstance(e, BoolLit):
        return "true" if e.value else "false"
    if isinstance(e, StrLit):
        return '"' + e.value.replace("\\", "\\\\").replace('"', '\\"') + '"'
    if isinstance(e, NullLit):
        return "null"
    if isinstance(e, Name):
        return e.id
    if isinstance(e, Unary):
        inner = _render_expr(e.operand, 6)
        if e.op == "-" and inner.startswith("-"):
            inner = f"({inner})"  # avoid `--` tokenizing as decrement
        text = f"{e.op}{inner}"
        return f"({text})" if parent_prec >= 7 else text
    if isinstance(e, Binary):
        prec = _PREC[e.op]
        # floor of 1 keeps ternaries inside binary operands parenthesized
        left = _render_expr(e.left, max(prec - 1, 1))
        right = _render_expr(e.right, prec)
        text = f"{left} {e.op} {right}"
        return f"({text})" if prec <= parent_prec else text
    if isinstance(e, Ternary):
        text = (f"{_render_expr(e.cond, 1)} ? {_render_expr(e.then)}"
                f" : {_render_expr(e.other)}")
        return f"({text})" if parent_prec > 0 else text
    if isinstance(e, Index):
        return f"{_render_expr(e.base, 7)}[{_render_expr(e.index)}]"
    if isinstance(e, Len):
        return f"{_render_expr(e.base, 7)}.length"
    if isinstance(e, NewArray):
        return f"new int[{_render_expr(e.size)}]"
    if isinstance(e, Call):
        mapped = {v: k for k, v in BUILTIN_CALLS.items()}.get(e.func, e.func)
        args = ", ".join(_render_expr(a) for a in e.args)
        return f"{mapped}({args})"
    raise TypeError(f"cannot render {e!r}")


def _render_simple(stmt: Stmt) -> str:
    if isinstance(stmt, VarDecl):
        if stmt.init is None:
            return f"{stmt.var_type} {stmt.name}"
        return f"{stmt.var_type} {stmt.name} = {_render_expr(stmt.init)}"
    if isinstance(stmt, Assign):
        return f"{_render_expr(stmt.target)} {stmt.op} {_render_expr(stmt.value)}"
    if isinstance(stmt, ExprStmt):
        return _render_expr(stmt.expr)
    raise TypeError(f"not a simple statement: {stmt!r}")


def _render_block(body: list, out: list, depth: int):
    pad = "    " * depth
    if not body:
        return
    for stmt in body:
        if isinstance(stmt, (VarDecl, Assign, ExprStmt)):
            out.append(f"{pad}{_render_simple(stmt)};")
        elif isinstance(stmt, Return):
            if stmt.value is None:
                out.append(f"{pad}return;")
            else:
                out.append(f"{pad}return {_render_expr(stmt.value)};")
        elif isinstance(stmt, Print):
            out.append(f"{pad}System.out.println({_render_expr(stmt.value)});")
        elif isinstance(stmt, If):
            _render_if(stmt, out, depth)
        elif isinstance(stmt, While):
            out.append(f"{pad}while ({_render_expr(stmt.cond)}) {{")
            _render_block(stmt.body, out, depth + 1)
            out.append(f"{pad}}}")
        elif isinstance(stmt, DoWhile):
            out.append(f"{pad}do {{")
            _render_block(stmt.body, out, depth + 1)
            out.append(f"{pad}}} while ({_render_expr(stmt.cond)});")
        elif isinstance(stmt, ForC):
            init = _render_simple(stmt.init) if stmt.init is not None else ""
            cond = _render_expr(stmt.cond) if stmt.cond is not None else ""
            update = _render_simple(stmt.update) if stmt.update is not None else ""
            out.append(f"{pad}for ({init}; {cond}; {update}) {{")
            _render_block(stmt.body, out, depth + 1)
            out.append(f"{pad}}}")
        elif isinstance(stmt, Switch):
            out.append(f"{pad}switch ({_render_expr(stmt.subject)}) {{")
            for case in stmt.cases:
                if case.labels:
                    for label in case.labels:
                        out.append(f"{pad}    case {_render_expr(label)}:")
                else:
                    out.append(f"{pad}    default:")
                _render_block(case.body, out, depth + 2)
                if not (case.body and isinstance(case.body[-1], Return)):
                    out.append(f"{pad}        break;")
            out.append(f"{pad}}}")
        else:
            raise TypeError(f"cannot render statement {stmt!r} as Java")


def _render_if(stmt: If, out: list, depth: int):
    pad = "    " * depth
    out.append(f"{pad}if ({_render_expr(stmt.cond)}) {{")
    _render_block(stmt.then, out, depth + 1)
    orelse = stmt.orelse
    if len(orelse) == 1 and isinstance(orelse[0], If):
        out.append(f"{pad}}} else " + f"if ({_render_expr(orelse[0].cond)}) {{")
        _render_block(orelse[0].then, out, depth + 1)
        # re-enter chain handling for the nested else
        nested = orelse[0].orelse
        while len(nested) == 1 and isinstance(nested[0], If):
            out.append(f"{pad}}} else if ({_render_expr(nested[0].cond)}) {{")
            _render_block(nested[0].then, out, depth + 1)
            nested = nested[0].orelse
        if nested:
            out.append(f"{pad}}} else {{")
            _render_block(nested, out, depth + 1)
        out.append(f"{pad}}}")
    elif orelse:
        out.append(f"{pad}}} else {{")
        _render_block(orelse, out, depth + 1)
        out.append(f"{pad}}}")
    else:
        out.append(f"{pad}}}")


def render_java(fn: FunctionAst) -> str:
    params = ", ".join(f"{p.type} {p.name}" for p in fn.params)
    ret = fn.return_type or "void"
    out = [f"{ret} {fn.name}({params}) {{"]
    _render_block(fn.body, out, 1)
    out.append("}")
    return "\n".join(out) + "\n"
