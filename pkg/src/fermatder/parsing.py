"""Text formats: polynomial expressions, field literals, matrices, images, ring specs.

Expressions are parsed by recursive descent::

    expr    := ['+'|'-'] product (('+'|'-') product)*
    product := power (['*'|'/'] power)*          juxtaposition multiplies
    power   := atom ['^' uint]
    atom    := uint | 'w' | 'i' | 'x' uint | '(' expr ')' | '-' power

``w`` is the generator zeta_k of the coefficient field and ``i`` its power
zeta^(k/4) (only when 4 | k). Division is allowed by nonzero constants only,
which is how rational literals such as ``2/3`` are read.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Generic, TypeVar

from .exactla import Matrix
from .field import CycloNum, FieldSpec, UnsupportedElementError, imaginary_unit
from .ring import Monomial, RingElem, RingSpec


class ParseError(ValueError):
    """Malformed input; carries the byte offset and the 1-based line/column."""

    kind = "syntax error"

    def __init__(self, message: str, text: str, offset: int):
        self.text = text
        self.offset = offset
        self.line = text.count("\n", 0, offset) + 1
        self.column = offset - (text.rfind("\n", 0, offset) + 1) + 1
        self.detail = message
        super().__init__(
            f"{self.kind} at line {self.line}, column {self.column} (offset {offset}): {message}"
        )


class LexicalError(ParseError):
    kind = "lexical error"


class GrammarError(ParseError):
    kind = "syntax error"


class VariableIndexError(ParseError):
    kind = "arity error"


class LiteralError(ParseError):
    kind = "unsupported literal"


_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<num>\d+)|(?P<var>x\d+)|(?P<w>w)|(?P<i>i)|(?P<op>[-+*/^()])"
)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int


def tokenize(text: str, base: int = 0, full: str | None = None) -> list[Token]:
    full = text if full is None else full
    out: list[Token] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise LexicalError(f"unexpected character {text[pos]!r}", full, base + pos)
        kind = m.lastgroup
        if kind != "ws":
            out.append(Token(m.group() if kind == "op" else kind, m.group(), base + pos))
        pos = m.end()
    out.append(Token("eof", "", base + len(text)))
    return out


T = TypeVar("T")


class _Parser(Generic[T]):
    def __init__(self, tokens: list[Token], full: str, field: FieldSpec,
                 const: Callable[[CycloNum], T], var: Callable[[int, Token], T],
                 as_const: Callable[[T], CycloNum | None]):
        self.toks, self.pos, self.full = tokens, 0, full
        self.field, self.const, self.var, self.as_const = field, const, var, as_const

    @property
    def tok(self) -> Token:
        return self.toks[self.pos]

    def take(self) -> Token:
        t = self.toks[self.pos]
        self.pos += 1
        return t

    def fail(self, msg: str, tok: Token | None = None):
        tok = tok or self.tok
        raise GrammarError(msg, self.full, tok.offset)

    def parse(self) -> T:
        v = self.expr()
        if self.tok.kind != "eof":
            if self.tok.kind == ")":
                self.fail("unbalanced ')'")
            self.fail(f"unexpected {self.tok.text!r}")
        return v

    def expr(self) -> T:
        neg = False
        if self.tok.kind in ("+", "-"):
            neg = self.take().kind == "-"
        v = self.product()
        if neg:
            v = -v
        while self.tok.kind in ("+", "-"):
            op = self.take().kind
            rhs = self.product()
            v = v + rhs if op == "+" else v - rhs
        return v

    _STARTS = ("num", "var", "w", "i", "(")

    def product(self) -> T:
        v = self.power()
        while True:
            k = self.tok.kind
            if k == "*":
                self.take()
                v = v * self.power()
            elif k == "/":
                slash = self.take()
                rhs_tok = self.tok
                rhs = self.power()
                c = self.as_const(rhs)
                if c is None:
                    self.fail("can only divide by a constant", rhs_tok)
                if not c:
                    self.fail("division by zero", slash)
                v = v * c.inverse()
            elif k in self._STARTS:
                v = v * self.power()
            else:
                return v

    def power(self) -> T:
        v = self.atom()
        if self.tok.kind == "^":
            self.take()
            t = self.tok
            if t.kind != "num":
                self.fail("exponent must be a nonnegative integer")
            self.take()
            v = v ** int(t.text)
        return v

    def atom(self) -> T:
        t = self.tok
        if t.kind == "num":
            self.take()
            return self.const(self.field.rational(int(t.text)))
        if t.kind == "w":
            self.take()
            return self.const(self.field.zeta)
        if t.kind == "i":
            self.take()
            try:
                return self.const(imaginary_unit(self.field))
            except UnsupportedElementError as exc:
                raise LiteralError(str(exc), self.full, t.offset) from None
        if t.kind == "var":
            self.take()
            return self.var(int(t.text[1:]), t)
        if t.kind == "(":
            self.take()
            v = self.expr()
            if self.tok.kind != ")":
                self.fail("expected ')'")
            self.take()
            return v
        if t.kind == "-":
            self.take()
            return -self.power()
        if t.kind == "eof":
            self.fail("unexpected end of input")
        self.fail(f"unexpected {t.text!r}")


def parse_expression(text: str, spec: RingSpec, *, _base: int = 0, _full: str | None = None) -> RingElem:
    """Parse a polynomial expression and return its normal form in ``spec``."""
    full = text if _full is None else _full

    def var(idx: int, tok: Token) -> RingElem:
        if not 1 <= idx <= spec.n:
            raise VariableIndexError(f"variable x{idx} outside x1..x{spec.n}", full, tok.offset)
        return spec.variable(idx)

    def as_const(v: RingElem) -> CycloNum | None:
        return v.coefficient((0,) * spec.n) if v.is_constant() else None

    toks = tokenize(text, _base, full)
    return _Parser(toks, full, spec.field, spec.constant, var, as_const).parse()


def parse_coefficient(text: str, field: FieldSpec, *, _base: int = 0, _full: str | None = None) -> CycloNum:
    """Parse a field literal such as ``-3``, ``2/5``, ``1/2 - 1/2*w`` or ``i``."""
    full = text if _full is None else _full

    def var(idx: int, tok: Token) -> CycloNum:
        raise VariableIndexError(f"variable x{idx} not allowed in a coefficient", full, tok.offset)

    toks = tokenize(text, _base, full)
    return _Parser(toks, full, field, lambda c: c, var, lambda c: c).parse()


def _split(text: str, sep: str, base: int = 0) -> list[tuple[str, int]]:
    out, start = [], 0
    for m in re.finditer(re.escape(sep), text):
        out.append((text[start:m.start()], base + start))
        start = m.end()
    out.append((text[start:], base + start))
    return out


def parse_matrix(text: str, field: FieldSpec) -> Matrix:
    """Rows separated by ';', entries by ','; e.g. ``0,0,-1; 0,0,-i; 1,i,0``."""
    rows = []
    for row_text, row_off in _split(text, ";"):
        if not row_text.strip():
            raise GrammarError("empty matrix row", text, row_off)
        rows.append([
            parse_coefficient(cell, field, _base=off, _full=text)
            for cell, off in _split(row_text, ",", row_off)
        ])
    if any(len(r) != len(rows[0]) for r in rows):
        bad = next(i for i, r in enumerate(rows) if len(r) != len(rows[0]))
        raise GrammarError("rows have different lengths", text, _split(text, ";")[bad][1])
    return Matrix(field, rows)


_IMAGE_HEAD = re.compile(r"\s*d\(\s*x(\d+)\s*\)\s*=")


def parse_images(text: str, spec: RingSpec) -> list[RingElem]:
    """``d(x1)=<expr>; ...; d(xn)=<expr>``, every variable exactly once."""
    images: dict[int, RingElem] = {}
    for part, off in _split(text, ";"):
        if not part.strip():
            continue
        m = _IMAGE_HEAD.match(part)
        if m is None:
            raise GrammarError("expected 'd(x<i>)=<expr>'", text, off)
        idx = int(m.group(1))
        if not 1 <= idx <= spec.n:
            raise VariableIndexError(f"variable x{idx} outside x1..x{spec.n}", text, off + m.start(1) - 1)
        if idx in images:
            raise GrammarError(f"d(x{idx}) given twice", text, off)
        images[idx] = parse_expression(part[m.end():], spec, _base=off + m.end(), _full=text)
    missing = [i for i in range(1, spec.n + 1) if i not in images]
    if missing:
        raise GrammarError(f"missing images for x{missing[0]}", text, len(text))
    return [images[i] for i in range(1, spec.n + 1)]


def parse_monomial(text: str, spec: RingSpec) -> Monomial:
    """A single normal monomial with coefficient 1, e.g. ``x1^2*x3``."""
    f = parse_expression(text, spec)
    if len(f) != 1:
        raise GrammarError("expected a single monomial", text, 0)
    (e, c), = f.terms.items()
    if c != 1:
        raise GrammarError("monomial must have coefficient 1", text, 0)
    return e


def parse_candidates(text: str, field: FieldSpec) -> list[CycloNum]:
    return [parse_coefficient(c, field, _base=off, _full=text) for c, off in _split(text, ",")]


def parse_ring(text: str) -> RingSpec:
    """``n=<n>;m=<m1,...,mn>;field=<k>``; ``m`` may be a single value for all variables."""
    fields: dict[str, tuple[str, int]] = {}
    for part, off in _split(text, ";"):
        if not part.strip():
            continue
        if "=" not in part:
            raise GrammarError("expected key=value", text, off)
        key, val = part.split("=", 1)
        key = key.strip()
        if key not in ("n", "m", "field"):
            raise GrammarError(f"unknown ring key {key!r}", text, off)
        fields[key] = (val.strip(), off + part.index("=") + 1)
    if "m" not in fields:
        raise GrammarError("ring spec needs m=...", text, len(text))
    m_text, m_off = fields["m"]
    try:
        m = [int(x) for x in m_text.split(",")]
    except ValueError:
        raise GrammarError("m must be a comma-separated list of integers", text, m_off) from None
    if "n" in fields:
        try:
            n = int(fields["n"][0])
        except ValueError:
            raise GrammarError("n must be an integer", text, fields["n"][1]) from None
        if len(m) == 1:
            m = m * n
        if len(m) != n:
            raise GrammarError(f"m has {len(m)} entries but n={n}", text, m_off)
    k = 4
    if "field" in fields:
        try:
            k = int(fields["field"][0])
        except ValueError:
            raise GrammarError("field must be an integer conductor", text, fields["field"][1]) from None
    try:
        return RingSpec(tuple(m), FieldSpec(k))
    except ValueError as exc:
        raise GrammarError(str(exc), text, 0) from None
