"""Identity-definition DSL: parser, resolver, and canonical printer.

The grammar (free-form whitespace, ``#`` line comments):

    document   := { statement }
    statement  := termDef | certDef | sumDef | recDef | checkDef
    termDef    := "term" NAME "(" params ")" ":=" product
    product    := factor { ("*" | "/") factor }
    factor     := "binom" "(" linear "," linear ")"
                | "pow" "(" INT "," linear ")"
                | "sign" "(" linear ")"
                | "(" polyExpr ")" | polyAtom
    certDef    := "cert" NAME "(" params ")" ":=" ratExpr
    sumDef     := "sum" NAME "(" NAME ")" ":=" sumCall [ sumCall ]
                  "==" closedForm [ "for" NAME ">=" SINT ]
    sumCall    := "sum" "(" NAME "," bound "," bound "," NAME ")"
    bound      := linear | "floor2" "(" linear ")"
    recDef     := "recurrence" NAME "(" NAME "," NAME ")" ":="
                  "[" ratExpr { "," ratExpr } "]" "*" NAME "cert" NAME
    checkDef   := "check" KIND NAME [ "[" SINT "," SINT "]" ]

``sign(e)`` denotes (-1)^e and ``floor2(e)`` denotes floor(e/2).  In a
nested sumDef the outer call comes first and both calls name the same
summand term, whose parameters must be exactly the sum's parameter plus
the loop variables.  Closed forms are expressions over the parameter,
rational constants, ``pow(INT, param)`` and ``sign(param)``; they fold
into the canonical sum-of-(poly * base^n * (-1)^(parity*n)) shape.
Recurrence coefficients may only mention the shift variable.

Every error -- lexical, syntactic, resolution, arity -- carries the
1-based line and column where it was detected.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .hyperterm import HyperTerm
from .identities import LEMMA_IDS, ClosedForm, IdentityCase, Loop, SumBound
from .symalg import LinearForm, MultiPoly, RationalFunction

KEYWORDS = {"term", "cert", "sum", "recurrence", "check", "for",
            "binom", "pow", "sign", "floor2"}
CHECK_KINDS = {"oracle", "verify", "involution", "lemma"}
INVOLUTION_MODELS = {"thm1", "thm2", "thm3"}


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.message = message
        self.line = line
        self.col = col


# ---------------------------------------------------------------------------
# lexer


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, SYM, EOF
    text: str
    line: int
    col: int


_SYMBOLS = (":=", "==", ">=", "(", ")", "[", "]", ",", "+", "-", "*", "/", "^")


def tokenize(text: str) -> list[Token]:
    out: list[Token] = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch in " \t\r":
            i += 1
            col += 1
            continue
        if ch == "#":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            out.append(Token("INT", text[i:j], line, col))
            col += j - i
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            out.append(Token("NAME", text[i:j], line, col))
            col += j - i
            i = j
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                out.append(Token("SYM", sym, line, col))
                col += len(sym)
                i += len(sym)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col)
    out.append(Token("EOF", "", line, col))
    return out


# ---------------------------------------------------------------------------
# expression AST


@dataclass(frozen=True)
class ENum:
    value: int
    line: int
    col: int


@dataclass(frozen=True)
class EVar:
    name: str
    line: int
    col: int


@dataclass(frozen=True)
class ENeg:
    arg: object
    line: int
    col: int


@dataclass(frozen=True)
class EBin:
    op: str
    left: object
    right: object
    line: int
    col: int


@dataclass(frozen=True)
class ECall:
    func: str
    args: tuple
    line: int
    col: int


# ---------------------------------------------------------------------------
# definitions and documents


@dataclass(frozen=True)
class TermDef:
    name: str
    params: tuple[str, ...]
    term: HyperTerm


@dataclass(frozen=True)
class CertDef:
    name: str
    params: tuple[str, ...]
    rf: RationalFunction


@dataclass(frozen=True)
class SumDef:
    name: str
    case: IdentityCase
    term_name: str


@dataclass(frozen=True)
class RecurrenceDef:
    name: str
    shift_var: str
    sum_var: str
    coeffs: tuple[RationalFunction, ...]
    term_name: str
    cert_name: str


@dataclass(frozen=True)
class CheckDef:
    kind: str
    target: str
    range: tuple[int, int] | None


Definition = TermDef | CertDef | SumDef | RecurrenceDef | CheckDef


@dataclass
class SpecDocument:
    definitions: list = field(default_factory=list)

    def __post_init__(self):
        self.terms: dict[str, TermDef] = {}
        self.certs: dict[str, CertDef] = {}
        self.sums: dict[str, SumDef] = {}
        self.recurrences: dict[str, RecurrenceDef] = {}
        self.checks: list[CheckDef] = []
        for d in self.definitions:
            self._index(d)

    def _index(self, d) -> None:
        if isinstance(d, TermDef):
            self.terms[d.name] = d
        elif isinstance(d, CertDef):
            self.certs[d.name] = d
        elif isinstance(d, SumDef):
            self.sums[d.name] = d
        elif isinstance(d, RecurrenceDef):
            self.recurrences[d.name] = d
        elif isinstance(d, CheckDef):
            self.checks.append(d)

    def names(self) -> set[str]:
        return (set(self.terms) | set(self.certs) | set(self.sums)
                | set(self.recurrences))

    def add(self, d) -> None:
        self.definitions.append(d)
        self._index(d)

    def __eq__(self, other) -> bool:
        if not isinstance(other, SpecDocument):
            return NotImplemented
        return self.definitions == other.definitions


# ---------------------------------------------------------------------------
# parser


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    # -- token plumbing ----------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        t = self.tokens[self.pos]
        if t.kind != "EOF":
            self.pos += 1
        return t

    def expect(self, kind: str, text: str | None = None) -> Token:
        t = self.peek()
        if t.kind != kind or (text is not None and t.text != text):
            want = text if text is not None else kind
            raise ParseError(f"expected {want!r}, found {t.text or 'end of input'!r}",
                             t.line, t.col)
        return self.advance()

    def accept(self, kind: str, text: str | None = None) -> Token | None:
        t = self.peek()
        if t.kind == kind and (text is None or t.text == text):
            return self.advance()
        return None

    def error(self, message: str, tok: Token | None = None) -> ParseError:
        t = tok or self.peek()
        return ParseError(message, t.line, t.col)

    # -- expressions ---------------------------------------------------------

    def parse_expr(self):
        node = self.parse_mul()
        while True:
            t = self.peek()
            if t.kind == "SYM" and t.text in ("+", "-"):
                self.advance()
                rhs = self.parse_mul()
                node = EBin(t.text, node, rhs, t.line, t.col)
            else:
                return node

    def parse_mul(self):
        node = self.parse_unary()
        while True:
            t = self.peek()
            if t.kind == "SYM" and t.text in ("*", "/"):
                self.advance()
                rhs = self.parse_unary()
                node = EBin(t.text, node, rhs, t.line, t.col)
            else:
                return node

    def parse_unary(self):
        t = self.peek()
        if t.kind == "SYM" and t.text == "-":
            self.advance()
            return ENeg(self.parse_unary(), t.line, t.col)
        return self.parse_power()

    def parse_power(self):
        node = self.parse_atom()
        t = self.peek()
        if t.kind == "SYM" and t.text == "^":
            self.advance()
            e = self.expect("INT")
            return EBin("^", node, ENum(int(e.text), e.line, e.col), t.line, t.col)
        return node

    def parse_atom(self):
        t = self.peek()
        if t.kind == "INT":
            self.advance()
            return ENum(int(t.text), t.line, t.col)
        if t.kind == "NAME":
            if t.text in ("binom", "pow", "sign", "floor2"):
                self.advance()
                self.expect("SYM", "(")
                args = [self.parse_expr()]
                while self.accept("SYM", ","):
                    args.append(self.parse_expr())
                self.expect("SYM", ")")
                return ECall(t.text, tuple(args), t.line, t.col)
            self.advance()
            return EVar(t.text, t.line, t.col)
        if t.kind == "SYM" and t.text == "(":
            self.advance()
            node = self.parse_expr()
            self.expect("SYM", ")")
            return node
        raise self.error(f"expected an expression, found {t.text or 'end of input'!r}")

    def parse_signed_int(self) -> int:
        neg = self.accept("SYM", "-") is not None
        t = self.expect("INT")
        return -int(t.text) if neg else int(t.text)

    # -- statements ---------------------------------------------------------

    def parse_document(self) -> SpecDocument:
        doc = SpecDocument()
        while self.peek().kind != "EOF":
            t = self.peek()
            if t.kind != "NAME":
                raise self.error(f"expected a statement keyword, found {t.text!r}")
            if t.text == "term":
                doc.add(self.parse_term_def(doc))
            elif t.text == "cert":
                doc.add(self.parse_cert_def(doc))
            elif t.text == "sum":
                doc.add(self.parse_sum_def(doc))
            elif t.text == "recurrence":
                doc.add(self.parse_recurrence_def(doc))
            elif t.text == "check":
                doc.add(self.parse_check_def(doc))
            else:
                raise self.error(
                    f"expected term/cert/sum/recurrence/check, found {t.text!r}")
        return doc

    def _def_name(self, doc: SpecDocument) -> Token:
        t = self.expect("NAME")
        if t.text in KEYWORDS:
            raise self.error(f"{t.text!r} is a reserved word", t)
        if t.text in doc.names():
            raise self.error(f"duplicate definition of {t.text!r}", t)
        return t

    def _params(self) -> tuple[str, ...]:
        self.expect("SYM", "(")
        params = [self.expect("NAME").text]
        while self.accept("SYM", ","):
            params.append(self.expect("NAME").text)
        self.expect("SYM", ")")
        if len(set(params)) != len(params):
            raise self.error("duplicate parameter name")
        return tuple(params)

    def parse_term_def(self, doc: SpecDocument) -> TermDef:
        self.expect("NAME", "term")
        name = self._def_name(doc)
        params = self._params()
        self.expect("SYM", ":=")
        expr = self.parse_expr()
        term = _TermBuilder(params).build(expr)
        return TermDef(name.text, params, term)

    def parse_cert_def(self, doc: SpecDocument) -> CertDef:
        self.expect("NAME", "cert")
        name = self._def_name(doc)
        params = self._params()
        self.expect("SYM", ":=")
        rf = _to_rf(self.parse_expr(), set(params))
        return CertDef(name.text, params, rf)

    def _parse_bound(self) -> SumBound:
        t = self.peek()
        if t.kind == "NAME" and t.text == "floor2":
            self.advance()
            self.expect("SYM", "(")
            form = _to_linear(self.parse_expr(), self._bound_vars)
            self.expect("SYM", ")")
            return SumBound("floored-half", form)
        return SumBound("affine", _to_linear(self.parse_expr(), self._bound_vars))

    def _parse_sum_call(self) -> tuple[str, SumBound, SumBound, str, Token]:
        self.expect("NAME", "sum")
        self.expect("SYM", "(")
        var = self.expect("NAME").text
        self.expect("SYM", ",")
        lower = self._parse_bound()
        self.expect("SYM", ",")
        upper = self._parse_bound()
        self.expect("SYM", ",")
        ref = self.expect("NAME")
        self.expect("SYM", ")")
        # the loop variable scopes over any *inner* call's bounds, not its own
        self._bound_vars.add(var)
        return var, lower, upper, ref.text, ref

    def parse_sum_def(self, doc: SpecDocument) -> SumDef:
        self.expect("NAME", "sum")
        name = self._def_name(doc)
        self.expect("SYM", "(")
        param = self.expect("NAME").text
        self.expect("SYM", ")")
        self.expect("SYM", ":=")
        self._bound_vars = {param}
        calls = [self._parse_sum_call()]
        if self.peek().kind == "NAME" and self.peek().text == "sum":
            calls.append(self._parse_sum_call())
        self.expect("SYM", "==")
        rhs = _to_closed_form(self.parse_expr(), param)
        valid_from = 0
        if self.accept("NAME", "for"):
            pt = self.expect("NAME")
            if pt.text != param:
                raise self.error(f"range variable must be {param!r}", pt)
            self.expect("SYM", ">=")
            valid_from = self.parse_signed_int()
        term_name, ref_tok = calls[0][3], calls[0][4]
        for c in calls[1:]:
            if c[3] != term_name:
                raise self.error("nested sum calls must name the same term", c[4])
        if term_name not in doc.terms:
            raise self.error(f"undefined term {term_name!r}", ref_tok)
        tdef = doc.terms[term_name]
        loop_vars = [c[0] for c in calls]
        expected = {param, *loop_vars}
        if set(tdef.params) != expected:
            raise self.error(
                f"term {term_name!r} has parameters {tdef.params}, "
                f"expected {tuple(sorted(expected))}", ref_tok)
        loops = tuple(Loop(c[0], c[1], c[2]) for c in calls)
        case = IdentityCase(
            case_id=name.text, param=param, loops=loops,
            summand=tdef.term, rhs=rhs, valid_from=valid_from)
        return SumDef(name.text, case, term_name)

    def parse_recurrence_def(self, doc: SpecDocument) -> RecurrenceDef:
        self.expect("NAME", "recurrence")
        name = self._def_name(doc)
        self.expect("SYM", "(")
        shift_var = self.expect("NAME").text
        self.expect("SYM", ",")
        sum_var = self.expect("NAME").text
        self.expect("SYM", ")")
        self.expect("SYM", ":=")
        self.expect("SYM", "[")
        coeffs = [_to_rf(self.parse_expr(), {shift_var})]
        while self.accept("SYM", ","):
            coeffs.append(_to_rf(self.parse_expr(), {shift_var}))
        self.expect("SYM", "]")
        self.expect("SYM", "*")
        term_tok = self.expect("NAME")
        if term_tok.text not in doc.terms:
            raise self.error(f"undefined term {term_tok.text!r}", term_tok)
        self.expect("NAME", "cert")
        cert_tok = self.expect("NAME")
        if cert_tok.text not in doc.certs:
            raise self.error(f"undefined cert {cert_tok.text!r}", cert_tok)
        tparams = doc.terms[term_tok.text].params
        for v in (shift_var, sum_var):
            if v not in tparams:
                raise self.error(
                    f"term {term_tok.text!r} has no parameter {v!r}", term_tok)
        return RecurrenceDef(name.text, shift_var, sum_var, tuple(coeffs),
                             term_tok.text, cert_tok.text)

    def parse_check_def(self, doc: SpecDocument) -> CheckDef:
        self.expect("NAME", "check")
        kind_tok = self.expect("NAME")
        kind = kind_tok.text
        if kind not in CHECK_KINDS:
            raise self.error(
                f"unknown check kind {kind!r} (expected one of "
                f"{sorted(CHECK_KINDS)})", kind_tok)
        target_tok = self.expect("NAME")
        target = target_tok.text
        known: set[str]
        if kind == "oracle":
            known = set(doc.sums)
        elif kind == "verify":
            known = set(doc.recurrences)
        elif kind == "involution":
            known = INVOLUTION_MODELS
        else:
            known = set(LEMMA_IDS)
        if target not in known:
            raise self.error(
                f"{kind} check names unknown target {target!r}", target_tok)
        rng = None
        if self.accept("SYM", "["):
            lo = self.parse_signed_int()
            self.expect("SYM", ",")
            hi = self.parse_signed_int()
            self.expect("SYM", "]")
            rng = (lo, hi)
        return CheckDef(kind, target, rng)


# ---------------------------------------------------------------------------
# evaluators


def _to_rf(node, params: set[str]) -> RationalFunction:
    if isinstance(node, ENum):
        return RationalFunction.const(node.value)
    if isinstance(node, EVar):
        if node.name not in params:
            raise ParseError(f"undefined name {node.name!r}", node.line, node.col)
        return RationalFunction.var(node.name)
    if isinstance(node, ENeg):
        return -_to_rf(node.arg, params)
    if isinstance(node, EBin):
        lhs = _to_rf(node.left, params)
        if node.op == "^":
            e = node.right.value
            out = RationalFunction.const(1)
            for _ in range(e):
                out = out * lhs
            return out
        rhs = _to_rf(node.right, params)
        if node.op == "+":
            return lhs + rhs
        if node.op == "-":
            return lhs - rhs
        if node.op == "*":
            return lhs * rhs
        try:
            return lhs / rhs
        except ZeroDivisionError:
            raise ParseError("division by zero", node.line, node.col) from None
    raise ParseError(f"{node.func} is not allowed in a rational expression",
                     node.line, node.col)


def _to_linear(node, params: set[str]) -> LinearForm:
    if isinstance(node, ENum):
        return LinearForm.const_form(node.value)
    if isinstance(node, EVar):
        if node.name not in params:
            raise ParseError(f"undefined name {node.name!r}", node.line, node.col)
        return LinearForm.var(node.name)
    if isinstance(node, ENeg):
        return -_to_linear(node.arg, params)
    if isinstance(node, EBin):
        if node.op in ("+", "-"):
            lhs = _to_linear(node.left, params)
            rhs = _to_linear(node.right, params)
            return lhs + rhs if node.op == "+" else lhs - rhs
        if node.op == "*":
            lhs = _to_linear(node.left, params)
            rhs = _to_linear(node.right, params)
            if lhs.is_const():
                return rhs.scaled(lhs.const)
            if rhs.is_const():
                return lhs.scaled(rhs.const)
            raise ParseError("argument must be affine with integer coefficients",
                             node.line, node.col)
    raise ParseError("argument must be affine with integer coefficients",
                     node.line, node.col)


class _CF:
    """Closed-form expression value: (base, parity) -> polynomial."""

    def __init__(self, parts: dict[tuple[int, int], MultiPoly]):
        self.parts = {k: p for k, p in parts.items() if not p.is_zero()}

    @staticmethod
    def const(c: Fraction | int) -> "_CF":
        return _CF({(1, 0): MultiPoly.const(c)})

    def __add__(self, other: "_CF") -> "_CF":
        out = dict(self.parts)
        for k, p in other.parts.items():
            out[k] = out.get(k, MultiPoly.zero()) + p
        return _CF(out)

    def __neg__(self) -> "_CF":
        return _CF({k: -p for k, p in self.parts.items()})

    def __mul__(self, other: "_CF") -> "_CF":
        out: dict[tuple[int, int], MultiPoly] = {}
        for (b1, p1), q1 in self.parts.items():
            for (b2, p2), q2 in other.parts.items():
                k = (b1 * b2, p1 ^ p2)
                out[k] = out.get(k, MultiPoly.zero()) + q1 * q2
        return _CF(out)

    def is_const(self) -> bool:
        return all(k == (1, 0) and p.is_const() for k, p in self.parts.items())

    def as_fraction(self) -> Fraction:
        return self.parts.get((1, 0), MultiPoly.zero()).as_fraction()


def _to_closed_form(node, param: str) -> ClosedForm:
    cf = _cf_eval(node, param)
    parts = tuple((base, parity, poly)
                  for (base, parity), poly in sorted(cf.parts.items()))
    return ClosedForm(param, parts)


def _cf_eval(node, param: str) -> _CF:
    if isinstance(node, ENum):
        return _CF.const(node.value)
    if isinstance(node, EVar):
        if node.name != param:
            raise ParseError(f"undefined name {node.name!r}", node.line, node.col)
        return _CF({(1, 0): MultiPoly.var(param)})
    if isinstance(node, ENeg):
        return -_cf_eval(node.arg, param)
    if isinstance(node, ECall):
        if node.func not in ("pow", "sign"):
            raise ParseError(f"{node.func} is not allowed in a closed form",
                             node.line, node.col)
        if node.func == "pow":
            if len(node.args) != 2 or not isinstance(node.args[0], ENum):
                raise ParseError("pow needs an integer base and an affine exponent",
                                 node.line, node.col)
            base = node.args[0].value
            if base < 2:
                raise ParseError("pow base must be >= 2", node.line, node.col)
            exp = _to_linear(node.args[1], {param})
            a, b = exp.coeff(param), exp.const
            if a < 0:
                raise ParseError("pow exponent must be nondecreasing in the parameter",
                                 node.line, node.col)
            scale = Fraction(base) ** b
            return _CF({(base**a, 0): MultiPoly.const(scale)})
        exp = _to_linear(node.args[0], {param}) if len(node.args) == 1 else None
        if exp is None:
            raise ParseError("sign takes one affine argument", node.line, node.col)
        scale = -1 if exp.const % 2 else 1
        return _CF({(1, exp.coeff(param) % 2): MultiPoly.const(scale)})
    if isinstance(node, EBin):
        lhs = _cf_eval(node.left, param)
        if node.op == "^":
            out = _CF.const(1)
            for _ in range(node.right.value):
                out = out * lhs
            return out
        rhs = _cf_eval(node.right, param)
        if node.op == "+":
            return lhs + rhs
        if node.op == "-":
            return lhs + (-rhs)
        if node.op == "*":
            return lhs * rhs
        if not rhs.is_const():
            raise ParseError("closed forms may only be divided by constants",
                             node.line, node.col)
        c = rhs.as_fraction()
        if c == 0:
            raise ParseError("division by zero", node.line, node.col)
        return lhs * _CF.const(Fraction(1) / c)
    raise ParseError("malformed closed form", node.line, node.col)


class _TermBuilder:
    """Folds a product expression into a HyperTerm."""

    def __init__(self, params: tuple[str, ...]):
        self.params = set(params)
        self.param_order = params
        self.sign = LinearForm.make()
        self.powers: list[tuple[int, LinearForm]] = []
        self.binomials: list[tuple[LinearForm, LinearForm]] = []
        self.prefactor = RationalFunction.const(1)

    def build(self, node) -> HyperTerm:
        self._fold(node)
        return HyperTerm(
            sign_exp=self.sign,
            powers=tuple(self.powers),
            binomials=tuple(self.binomials),
            prefactor=self.prefactor,
            variables=self.param_order,
        )

    def _fold(self, node) -> None:
        if isinstance(node, EBin) and node.op == "*":
            self._fold(node.left)
            self._fold(node.right)
            return
        if isinstance(node, EBin) and node.op == "/":
            self._fold(node.left)
            divisor = _to_rf(node.right, self.params)
            if divisor.is_zero():
                raise ParseError("division by zero", node.line, node.col)
            self.prefactor = self.prefactor / divisor
            return
        if isinstance(node, ECall):
            if node.func == "binom":
                if len(node.args) != 2:
                    raise ParseError("binom takes two arguments", node.line, node.col)
                top = _to_linear(node.args[0], self.params)
                bottom = _to_linear(node.args[1], self.params)
                self.binomials.append((top, bottom))
                return
            if node.func == "pow":
                if len(node.args) != 2 or not isinstance(node.args[0], ENum):
                    raise ParseError("pow needs an integer base and an affine exponent",
                                     node.line, node.col)
                base = node.args[0].value
                if base < 2:
                    raise ParseError("pow base must be >= 2", node.line, node.col)
                self.powers.append((base, _to_linear(node.args[1], self.params)))
                return
            if node.func == "sign":
                if len(node.args) != 1:
                    raise ParseError("sign takes one argument", node.line, node.col)
                self.sign = self.sign + _to_linear(node.args[0], self.params)
                return
            raise ParseError(f"unknown factor {node.func!r}", node.line, node.col)
        # plain polynomial / rational factor
        self.prefactor = self.prefactor * _to_rf(node, self.params)


# ---------------------------------------------------------------------------
# public surface


def parse_document(text: str) -> SpecDocument:
    """Parse a spec document; raises ParseError with line/column on failure."""
    return _Parser(text).parse_document()


parse_spec = parse_document


def _linear_str(lf: LinearForm) -> str:
    return str(lf)


def _term_str(t: HyperTerm) -> str:
    parts: list[str] = []
    if t.sign_exp.coeffs or t.sign_exp.const:
        parts.append(f"sign({_linear_str(t.sign_exp)})")
    for base, exp in t.powers:
        parts.append(f"pow({base}, {_linear_str(exp)})")
    for top, bottom in t.binomials:
        parts.append(f"binom({_linear_str(top)}, {_linear_str(bottom)})")
    if not (t.prefactor.num == MultiPoly.const(1)) or not parts:
        parts.append(f"({t.prefactor.num})")
    s = " * ".join(parts)
    if not (t.prefactor.den == MultiPoly.const(1)):
        s += f" / ({t.prefactor.den})"
    return s


def _rf_str(rf: RationalFunction) -> str:
    if rf.den == MultiPoly.const(1):
        return f"({rf.num})"
    return f"({rf.num}) / ({rf.den})"


def _closed_form_str(cf: ClosedForm) -> str:
    chunks = []
    for base, parity, poly in cf.parts:
        factors = [f"({poly})"]
        if base != 1:
            factors.append(f"pow({base}, {cf.param})")
        if parity:
            factors.append(f"sign({cf.param})")
        chunks.append("*".join(factors))
    return " + ".join(chunks) if chunks else "(0)"


def _bound_str(b: SumBound) -> str:
    if b.kind == "floored-half":
        return f"floor2({_linear_str(b.form)})"
    return _linear_str(b.form)


def print_document(doc: SpecDocument) -> str:
    """Canonical text whose re-parse equals the document."""
    lines = []
    for d in doc.definitions:
        if isinstance(d, TermDef):
            lines.append(f"term {d.name}({', '.join(d.params)}) := {_term_str(d.term)}")
        elif isinstance(d, CertDef):
            lines.append(f"cert {d.name}({', '.join(d.params)}) := {_rf_str(d.rf)}")
        elif isinstance(d, SumDef):
            case = d.case
            calls = " ".join(
                f"sum({lp.var}, {_bound_str(lp.lower)}, {_bound_str(lp.upper)}, "
                f"{d.term_name})" for lp in case.loops)
            lines.append(
                f"sum {d.name}({case.param}) := {calls} == "
                f"{_closed_form_str(case.rhs)} for {case.param} >= {case.valid_from}")
        elif isinstance(d, RecurrenceDef):
            coeffs = ", ".join(_rf_str(c) for c in d.coeffs)
            lines.append(
                f"recurrence {d.name}({d.shift_var}, {d.sum_var}) := "
                f"[{coeffs}] * {d.term_name} cert {d.cert_name}")
        elif isinstance(d, CheckDef):
            rng = f" [{d.range[0]}, {d.range[1]}]" if d.range else ""
            lines.append(f"check {d.kind} {d.target}{rng}")
    return "\n".join(lines) + "\n"
