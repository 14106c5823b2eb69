"""The k-safety property language for translation backends.

A property file (extension .ksp, one property per file, name = file
stem) declares input programs, derived variants, preconditions, output
programs, a query block of transpile assignments, and a postcondition:

    input pj1;
    var pj2 := renameParam(pj1, "java");
    requires pj2 != null;
    output pp1;
    output pp2;
    {
      pp1 = transpile(pj1, "java", "py")
      pp2 = transpile(pj2, "java", "py")
    }
    ensures compiles(pp1, "py") && compiles(pp2, "py")
      ==> retValues(pp1, "py") == retValues(pp2, "py");

Expression precedence, loosest first: `==>` (right-associative), `||`,
`&&`, `!`, comparisons, `+`/`-`. Comparisons bind tighter than `==>`,
and comparisons are non-associative. Comments run from `//` to end of
line. `null` compares only against program identifiers.
"""

from dataclasses import dataclass, field

from .errors import TranscheckError

LANGS = ("java", "py", "cpp")

# name -> (program-arg count, usable in search properties)
TRANSFORM_FNS = {
    "renameParam": (1, True),
    "addParam": (1, True),
    "addConditional": (1, True),
    "addLoop": (1, True),
    "rmLoop": (1, False),
    "chBranchCond": (1, True),
    "merge": (2, False),
}

# name -> result type
INSPECT_FNS = {
    "arity": "int",
    "numConditionals": "int",
    "numLoops": "int",
    "compiles": "bool",
    "retValues": "rv",
}

SYNTACTIC_INSPECTS = ("arity", "numConditionals", "numLoops")


@dataclass(frozen=True)
class Diagnostic:
    line: int
    col: int
    message: str

    def __str__(self):
        return f"{self.line}:{self.col}: {self.message}"


class SpecParseError(TranscheckError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


# --- expression nodes -------------------------------------------------------

class SpecExpr:
    pass


@dataclass(frozen=True)
class SInt(SpecExpr):
    value: int


@dataclass(frozen=True)
class SNull(SpecExpr):
    pass


@dataclass(frozen=True)
class SName(SpecExpr):
    id: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class SNot(SpecExpr):
    operand: SpecExpr


@dataclass(frozen=True)
class SBin(SpecExpr):
    # op in: ==> || && == != < <= > >= + -
    op: str
    left: SpecExpr
    right: SpecExpr


@dataclass(frozen=True)
class SInspect(SpecExpr):
    fn: str
    target: str
    lang: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)


@dataclass(frozen=True)
class TransformCall:
    fn: str
    args: tuple  # program identifiers
    lang: str


@dataclass(frozen=True)
class QueryStmt:
    target: str
    source: str
    src_lang: str
    dst_lang: str


@dataclass
class PropertySpec:
    name: str
    inputs: list
    derived_vars: list  # list[(ident, TransformCall)]
    preconditions: list  # list[SpecExpr]
    outputs: list
    query_block: list  # list[QueryStmt]
    postcondition: SpecExpr
    k: int = 0
    search_compatible: bool = False

    def __post_init__(self):
        self.k = len(self.query_block)
        self.search_compatible = validate_search_spec(self)[0]

    @property
    def inspect_fns(self) -> frozenset:
        """All inspection functions mentioned anywhere in the property."""
        found = set()
        for e in [self.postcondition, *self.preconditions]:
            found.update(_inspects_in(e))
        return frozenset(found)

    @property
    def is_syntactic(self) -> bool:
        return self.inspect_fns <= set(SYNTACTIC_INSPECTS)


def _inspects_in(e: SpecExpr):
    if isinstance(e, SInspect):
        yield e.fn
    elif isinstance(e, SNot):
        yield from _inspects_in(e.operand)
    elif isinstance(e, SBin):
        yield from _inspects_in(e.left)
        yield from _inspects_in(e.right)


def idents_in(e: SpecExpr) -> set:
    if isinstance(e, SName):
        return {e.id}
    if isinstance(e, SInspect):
        return {e.target}
    if isinstance(e, SNot):
        return idents_in(e.operand)
    if isinstance(e, SBin):
        return idents_in(e.left) | idents_in(e.right)
    return set()


# --- lexer -------------------------------------------------------------------

_PUNCT = ["==>", ":=", "==", "!=", "<=", ">=", "&&", "||",
          "{", "}", "(", ")", ";", ",", "<", ">", "=", "+", "-", "!"]


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col


def _tokenize(src: str):
    toks, diags = [], []
    i, line, col = 0, 1, 1
    n = len(src)
    while i < n:
        c = src[i]
        if c == "\n":
            i, line, col = i + 1, line + 1, 1
            continue
        if c in " \t\r":
            i += 1
            col += 1
            continue
        if src.startswith("//", i):
            j = src.find("\n", i)
            i = n if j < 0 else j
            continue
        if c == '"':
            j = src.find('"', i + 1)
            if j < 0:
                diags.append(Diagnostic(line, col, "unterminated string"))
                break
            toks.append(_Tok("string", src[i + 1:j], line, col))
            col += j + 1 - i
            i = j + 1
            continue
        if c.isdigit():
            j = i
            while j < n and src[j].isdigit():
                j += 1
            toks.append(_Tok("int", src[i:j], line, col))
            col += j - i
            i = j
            continue
        if c.isalpha() or c == "_":
            j = i
            while j < n and (src[j].isalnum() or src[j] == "_"):
                j += 1
            toks.append(_Tok("ident", src[i:j], line, col))
            col += j - i
            i = j
            continue
        for p in _PUNCT:
            if src.startswith(p, i):
                toks.append(_Tok("punct", p, line, col))
                i += len(p)
                col += len(p)
                break
        else:
            diags.append(Diagnostic(line, col, f"unexpected character {c!r}"))
            i += 1
            col += 1
    toks.append(_Tok("eof", "", line, col))
    return toks, diags


# --- parser ------------------------------------------------------------------

class _SpecParser:
    def __init__(self, tokens):
        self.toks = tokens
        self.pos = 0
        self.diags = []

    def peek(self) -> _Tok:
        return self.toks[self.pos]

    def at(self, text) -> bool:
        t = self.peek()
        return t.text == text and t.kind in ("punct", "ident")

    def advance(self) -> _Tok:
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def error(self, message, tok=None):
        tok = tok or self.peek()
        self.diags.append(Diagnostic(tok.line, tok.col, message))
        raise SpecParseError(self.diags)

    def expect(self, text) -> _Tok:
        if not self.at(text):
            t = self.peek()
            self.error(f"expected {text!r}, found {t.text!r}" if t.kind != "eof"
                       else f"expected {text!r}, found end of file")
        return self.advance()

    def expect_ident(self, what) -> _Tok:
        t = self.peek()
        if t.kind != "ident":
            self.error(f"expected {what}, found {t.text!r}")
        return self.advance()

    def expect_lang(self) -> str:
        t = self.peek()
        if t.kind != "string":
            self.error("expected a language tag string")
        if t.text not in LANGS:
            self.error(f"unknown language tag {t.text!r} (expected one of {', '.join(LANGS)})", t)
        self.advance()
        return t.text

    # declarations
    def parse(self, name: str) -> PropertySpec:
        inputs, derived, pres, outputs = [], [], [], []
        while not self.at("{"):
            t = self.peek()
            if self.at("input"):
                self.advance()
                inputs.append(self.expect_ident("input name").text)
                self.expect(";")
            elif self.at("var"):
                self.advance()
                ident = self.expect_ident("variable name").text
                self.expect(":=")
                derived.append((ident, self.parse_transform_call()))
                self.expect(";")
            elif self.at("requires"):
                self.advance()
                pres.append(self.parse_expr())
                self.expect(";")
            elif self.at("output"):
                self.advance()
                outputs.append(self.expect_ident("output name").text)
                self.expect(";")
            else:
                self.error(f"expected a declaration or '{{', found {t.text!r}")
        queries = self.parse_block()
        self.expect("ensures")
        post = self.parse_expr()
        self.expect(";")
        if self.peek().kind != "eof":
            self.error(f"trailing content after postcondition: {self.peek().text!r}")
        return PropertySpec(name, inputs, derived, pres, outputs, queries, post)

    def parse_transform_call(self) -> TransformCall:
        fn_tok = self.expect_ident("transformation function")
        if fn_tok.text not in TRANSFORM_FNS:
            self.error(f"unknown transformation function {fn_tok.text!r}", fn_tok)
        self.expect("(")
        args = [self.expect_ident("program identifier").text]
        while self.at(","):
            self.advance()
            if self.peek().kind == "string":
                break
            args.append(self.expect_ident("program identifier").text)
        lang = self.expect_lang()
        self.expect(")")
        nargs = TRANSFORM_FNS[fn_tok.text][0]
        if len(args) != nargs:
            self.error(f"{fn_tok.text} takes {nargs} program argument(s), got {len(args)}",
                       fn_tok)
        return TransformCall(fn_tok.text, tuple(args), lang)

    def parse_block(self) -> list:
        self.expect("{")
        queries = []
        while not self.at("}"):
            target = self.expect_ident("output identifier").text
            self.expect("=")
            fn = self.expect_ident("'transpile'")
            if fn.text != "transpile":
                self.error("query block only supports transpile assignments", fn)
            self.expect("(")
            source = self.expect_ident("program identifier").text
            self.expect(",")
            src_lang = self.expect_lang()
            self.expect(",")
            dst_lang = self.expect_lang()
            self.expect(")")
            if self.at(";"):
                self.advance()
            queries.append(QueryStmt(target, source, src_lang, dst_lang))
        self.expect("}")
        return queries

    # expressions
    def parse_expr(self) -> SpecExpr:
        return self.parse_implies()

    def parse_implies(self) -> SpecExpr:
        left = self.parse_or()
        if self.at("==>"):
            self.advance()
            return SBin("==>", left, self.parse_implies())
        return left

    def parse_or(self) -> SpecExpr:
        e = self.parse_and()
        while self.at("||"):
            self.advance()
            e = SBin("||", e, self.parse_and())
        return e

    def parse_and(self) -> SpecExpr:
        e = self.parse_not()
        while self.at("&&"):
            self.advance()
            e = SBin("&&", e, self.parse_not())
        return e

    def parse_not(self) -> SpecExpr:
        if self.at("!"):
            self.advance()
            return SNot(self.parse_not())
        return self.parse_cmp()

    def parse_cmp(self) -> SpecExpr:
        e = self.parse_additive()
        for op in ("==", "!=", "<=", ">=", "<", ">"):
            if self.at(op):
                self.advance()
                return SBin(op, e, self.parse_additive())
        return e

    def parse_additive(self) -> SpecExpr:
        e = self.parse_primary()
        while self.at("+") or self.at("-"):
            op = self.advance().text
            e = SBin(op, e, self.parse_primary())
        return e

    def parse_primary(self) -> SpecExpr:
        t = self.peek()
        if t.kind == "int":
            self.advance()
            return SInt(int(t.text))
        if self.at("("):
            self.advance()
            e = self.parse_expr()
            self.expect(")")
            return e
        if t.kind == "ident":
            if t.text == "null":
                self.advance()
                return SNull()
            if t.text in INSPECT_FNS:
                self.advance()
                self.expect("(")
                target = self.expect_ident("program identifier")
                self.expect(",")
                lang = self.expect_lang()
                self.expect(")")
                return SInspect(t.text, target.text, lang, target.line, target.col)
            if t.text in TRANSFORM_FNS:
                self.error(f"transformation {t.text!r} is only allowed in var declarations", t)
            self.advance()
            if self.at("("):
                self.error(f"unknown function {t.text!r}", t)
            return SName(t.text, t.line, t.col)
        self.error(f"expected an expression, found {t.text!r}")


# --- semantic checks ---------------------------------------------------------

def _type_of(e: SpecExpr, kinds: dict, diags: list) -> str:
    """Expression type: 'int' | 'bool' | 'rv' | 'prog' | 'null' | 'error'."""
    if isinstance(e, SInt):
        return "int"
    if isinstance(e, SNull):
        return "null"
    if isinstance(e, SName):
        if e.id not in kinds:
            diags.append(Diagnostic(e.line, e.col, f"undeclared identifier {e.id!r}"))
            return "error"
        return "prog"
    if isinstance(e, SInspect):
        if e.target not in kinds:
            diags.append(Diagnostic(e.line, e.col, f"undeclared identifier {e.target!r}"))
            return "error"
        return INSPECT_FNS[e.fn]
    if isinstance(e, SNot):
        t = _type_of(e.operand, kinds, diags)
        if t not in ("bool", "error"):
            diags.append(Diagnostic(0, 0, f"'!' needs a boolean operand, got {t}"))
        return "bool"
    if isinstance(e, SBin):
        lt = _type_of(e.left, kinds, diags)
        rt = _type_of(e.right, kinds, diags)
        if "error" in (lt, rt):
            return "error"
        if e.op in ("&&", "||", "==>"):
            if lt != "bool" or rt != "bool":
                diags.append(Diagnostic(0, 0, f"{e.op!r} needs boolean operands, got {lt}/{rt}"))
            return "bool"
        if e.op in ("+", "-"):
            if lt != "int" or rt != "int":
                diags.append(Diagnostic(0, 0, f"{e.op!r} needs integer operands, got {lt}/{rt}"))
            return "int"
        if e.op in ("<", "<=", ">", ">="):
            if lt != "int" or rt != "int":
                diags.append(Diagnostic(0, 0, f"{e.op!r} needs integer operands, got {lt}/{rt}"))
            return "bool"
        # == / !=
        ok = ({lt, rt} == {"int"} or {lt, rt} == {"rv"}
              or {lt, rt} == {"prog", "null"})
        if not ok:
            diags.append(Diagnostic(
                0, 0, f"{e.op!r} compares two integers, two retValues, or a program "
                      f"against null, got {lt}/{rt}"))
        return "bool"
    return "error"


def _semantic_diags(spec: PropertySpec) -> list:
    diags = []
    kinds = {}
    for name in spec.inputs:
        if name in kinds:
            diags.append(Diagnostic(0, 0, f"duplicate declaration of {name!r}"))
        kinds[name] = "input"
    for name, call in spec.derived_vars:
        for arg in call.args:
            if arg not in kinds:
                diags.append(Diagnostic(
                    0, 0, f"variable {name!r} uses undeclared program {arg!r}"))
            elif kinds[arg] == "output":
                diags.append(Diagnostic(
                    0, 0, f"variable {name!r} cannot be derived from output {arg!r}"))
        if name in kinds:
            diags.append(Diagnostic(0, 0, f"duplicate declaration of {name!r}"))
        kinds[name] = "var"
    pre_kinds = dict(kinds)
    for name in spec.outputs:
        if name in kinds:
            diags.append(Diagnostic(0, 0, f"duplicate declaration of {name!r}"))
        kinds[name] = "output"
    for pre in spec.preconditions:
        for ident in idents_in(pre):
            if ident in kinds and ident not in pre_kinds:
                diags.append(Diagnostic(
                    0, 0, f"precondition references output {ident!r} before any query runs"))
        if _type_of(pre, kinds, diags) not in ("bool", "error"):
            diags.append(Diagnostic(0, 0, "precondition must be boolean"))
    assigned = set()
    for q in spec.query_block:
        if q.target not in kinds or kinds[q.target] != "output":
            diags.append(Diagnostic(0, 0, f"query target {q.target!r} is not a declared output"))
        elif q.target in assigned:
            diags.append(Diagnostic(0, 0, f"output {q.target!r} assigned more than once"))
        assigned.add(q.target)
        if q.source not in kinds or kinds[q.source] == "output":
            diags.append(Diagnostic(
                0, 0, f"query source {q.source!r} must be an input or derived variable"))
        if q.src_lang == q.dst_lang:
            diags.append(Diagnostic(
                0, 0, f"query for {q.target!r} translates {q.src_lang} to itself"))
    for name in spec.outputs:
        if name not in assigned:
            diags.append(Diagnostic(0, 0, f"output {name!r} is never assigned"))
    if not spec.query_block:
        diags.append(Diagnostic(0, 0, "query block is empty"))
    if _type_of(spec.postcondition, kinds, diags) not in ("bool", "error"):
        diags.append(Diagnostic(0, 0, "postcondition must be boolean"))
    return diags


def check_spec(text: str, name: str = "<anonymous>") -> list:
    """All diagnostics for a property text; empty list means it parses clean."""
    try:
        spec = _parse(text, name)
    except SpecParseError as exc:
        return exc.diagnostics
    return _semantic_diags(spec)


def _parse(text: str, name: str) -> PropertySpec:
    toks, diags = _tokenize(text)
    if diags:
        raise SpecParseError(diags)
    return _SpecParser(toks).parse(name)


def parse_spec(text: str, name: str = "<anonymous>") -> PropertySpec:
    """Parse and validate one property; raises SpecParseError on any diagnostic."""
    spec = _parse(text, name)
    diags = _semantic_diags(spec)
    if diags:
        raise SpecParseError(diags)
    return spec


def load_spec_file(path) -> PropertySpec:
    from pathlib import Path

    path = Path(path)
    return parse_spec(path.read_text(encoding="utf-8"), path.stem)


def validate_search_spec(spec: PropertySpec):
    """(ok, reasons): whether the parameter search can drive this property.

    A search-compatible property takes exactly one user input, derives
    only equivalent-or-harder variants from it, and has an implication
    postcondition whose antecedent mentions only the variants and their
    translations, so that a violation always blames the user program's
    own translation.
    """
    reasons = []
    if len(spec.inputs) != 1:
        reasons.append(f"needs exactly one input, has {len(spec.inputs)}")
    for name, call in spec.derived_vars:
        if not TRANSFORM_FNS[call.fn][1]:
            reasons.append(
                f"variable {name!r} uses {call.fn}, which can make the variant "
                f"easier than the input")
    post = spec.postcondition
    if not (isinstance(post, SBin) and post.op == "==>"):
        reasons.append("postcondition is not an implication")
        return False, reasons
    variant_idents = {name for name, _ in spec.derived_vars}
    variant_idents.update(q.target for q in spec.query_block
                          if q.source in variant_idents)
    stray = idents_in(post.left) - variant_idents
    if stray:
        reasons.append(
            "antecedent must only mention variants and their translations, "
            f"also mentions: {', '.join(sorted(stray))}")
    return not reasons, reasons


# --- rendering ----------------------------------------------------------------

_S_PREC = {"==>": 1, "||": 2, "&&": 3,
           "==": 5, "!=": 5, "<": 5, "<=": 5, ">": 5, ">=": 5,
           "+": 6, "-": 6}


def render_expr(e: SpecExpr, parent_prec=0) -> str:
    if isinstance(e, SInt):
        return str(e.value)
    if isinstance(e, SNull):
        return "null"
    if isinstance(e, SName):
        return e.id
    if isinstance(e, SInspect):
        return f'{e.fn}({e.target}, "{e.lang}")'
    if isinstance(e, SNot):
        return f"!{render_expr(e.operand, 4)}"
    if isinstance(e, SBin):
        prec = _S_PREC[e.op]
        right_assoc = e.op == "==>"
        non_assoc = prec == 5
        left = render_expr(e.left, prec if (right_assoc or non_assoc) else prec - 1)
        right = render_expr(e.right, prec if non_assoc else prec - 1 if right_assoc else prec)
        text = f"{left} {e.op} {right}"
        return f"({text})" if prec <= parent_prec else text
    raise TypeError(f"cannot render {e!r}")


def render_spec(spec: PropertySpec) -> str:
    out = []
    for name in spec.inputs:
        out.append(f"input {name};")
    for name, call in spec.derived_vars:
        args = ", ".join(call.args)
        out.append(f'var {name} := {call.fn}({args}, "{call.lang}");')
    for pre in spec.preconditions:
        out.append(f"requires {render_expr(pre)};")
    for name in spec.outputs:
        out.append(f"output {name};")
    out.append("{")
    for q in spec.query_block:
        out.append(f'  {q.target} = transpile({q.source}, "{q.src_lang}", "{q.dst_lang}")')
    out.append("}")
    out.append(f"ensures {render_expr(spec.postcondition)};")
    return "\n".join(out) + "\n"
