"""Surface syntax for polynomials and Steenrod operations.

    expr   := term ('+' term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)?
    atom   := 'x' nat | '0' | '1' | 'V(' nat ')' | 'Q(' nat ',' nat ')'
            | 'Sq(' nat ')' '{' expr '}' | 'Chi(' nat ')' '{' expr '}'
            | 'Word[' op (',' op)* ']' '{' expr '}' | '(' expr ')'
    op     := ('Sq' | 'Chi') nat

Whitespace (including newlines) is insignificant.  ``Word[Sq 8, Chi 4]{f}``
applies the rightmost operation first, as in composition.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from ..dickson import dickson_q, v_poly
from ..f2poly import Polynomial
from ..steenrod import Kind, OperatorWord, apply_word, chi_sq, sq


class ParseError(ValueError):
    def __init__(self, line: int, column: int, expected, found: str):
        self.line = line
        self.column = column
        self.expected = frozenset(expected)
        self.found = found
        want = ", ".join(sorted(self.expected))
        super().__init__(f"line {line}, column {column}: expected {want}; found {found}")


class EvalError(ValueError):
    """The expression refers to something outside the declared variable count."""


# AST ----------------------------------------------------------------------


@dataclass(frozen=True)
class Var:
    index: int


@dataclass(frozen=True)
class Const:
    value: int


@dataclass(frozen=True)
class VPoly:
    n: int


@dataclass(frozen=True)
class QPoly:
    n: int
    s: int


@dataclass(frozen=True)
class Sum:
    terms: tuple


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Power:
    base: "Expr"
    exponent: int


@dataclass(frozen=True)
class Apply:
    """A single Sq(i) or Chi(i) applied to ``arg``."""

    kind: Kind
    i: int
    arg: "Expr"


@dataclass(frozen=True)
class WordApply:
    word: OperatorWord
    arg: "Expr"


Expr = Union[Var, Const, VPoly, QPoly, Sum, Product, Power, Apply, WordApply]


# tokenizer -----------------------------------------------------------------

_TOKEN = re.compile(
    r"(?P<ws>\s+)|(?P<nat>\d+)|(?P<name>Word|Sq|Chi|V|Q|x)|(?P<sym>[+*^(){}\[\],])"
)
_EOF = "end of input"


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    line: int
    column: int


def _tokenize(text: str) -> list[_Tok]:
    out = []
    pos = 0
    line, line_start = 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        col = pos - line_start + 1
        if m is None:
            raise ParseError(line, col, {"expression"}, repr(text[pos]))
        kind = m.lastgroup
        if kind == "ws":
            for k, ch in enumerate(m.group(), start=pos):
                if ch == "\n":
                    line, line_start = line + 1, k + 1
        else:
            out.append(_Tok(kind, m.group(), line, col))
        pos = m.end()
    out.append(_Tok("eof", _EOF, line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.pos = 0

    @property
    def tok(self) -> _Tok:
        return self.toks[self.pos]

    def fail(self, expected) -> ParseError:
        t = self.tok
        found = _EOF if t.kind == "eof" else repr(t.text)
        return ParseError(t.line, t.column, expected, found)

    def accept(self, text: str) -> bool:
        if self.tok.text == text and self.tok.kind != "eof":
            self.pos += 1
            return True
        return False

    def expect(self, text: str) -> None:
        if not self.accept(text):
            raise self.fail({repr(text)})

    def nat(self) -> int:
        if self.tok.kind != "nat":
            raise self.fail({"number"})
        value = int(self.tok.text)
        self.pos += 1
        return value

    # grammar

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.accept("+"):
            terms.append(self.term())
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> Expr:
        factors = [self.factor()]
        while self.accept("*"):
            factors.append(self.factor())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def factor(self) -> Expr:
        base = self.atom()
        if self.accept("^"):
            return Power(base, self.nat())
        return base

    _ATOM_START = {"'x'", "'0'", "'1'", "'V'", "'Q'", "'Sq'", "'Chi'", "'Word'", "'('"}

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "nat":
            if t.text in ("0", "1"):
                self.pos += 1
                return Const(int(t.text))
            raise self.fail(self._ATOM_START)
        if t.text == "x" and t.kind == "name":
            self.pos += 1
            k = self.nat()
            if k < 1:
                raise ParseError(t.line, t.column, {"variable index >= 1"}, f"x{k}")
            return Var(k)
        if t.text == "V" and t.kind == "name":
            self.pos += 1
            self.expect("(")
            n = self.nat()
            self.expect(")")
            return VPoly(n)
        if t.text == "Q" and t.kind == "name":
            self.pos += 1
            self.expect("(")
            n = self.nat()
            self.expect(",")
            s = self.nat()
            self.expect(")")
            return QPoly(n, s)
        if t.text in ("Sq", "Chi") and t.kind == "name":
            self.pos += 1
            self.expect("(")
            i = self.nat()
            self.expect(")")
            return Apply(Kind(t.text), i, self.braced())
        if t.text == "Word" and t.kind == "name":
            self.pos += 1
            self.expect("[")
            factors = [self.word_op()]
            while self.accept(","):
                factors.append(self.word_op())
            self.expect("]")
            return WordApply(OperatorWord(tuple(factors)), self.braced())
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise self.fail(self._ATOM_START)

    def word_op(self) -> tuple[Kind, int]:
        t = self.tok
        if t.kind == "name" and t.text in ("Sq", "Chi"):
            self.pos += 1
            return (Kind(t.text), self.nat())
        raise self.fail({"'Sq'", "'Chi'"})

    def braced(self) -> Expr:
        self.expect("{")
        inner = self.expr()
        self.expect("}")
        return inner


def parse(text: str) -> Expr:
    p = _Parser(text)
    e = p.expr()
    if p.tok.kind != "eof":
        raise p.fail({"'+'", "'*'", _EOF})
    return e


# printer -------------------------------------------------------------------


def to_text(e: Expr) -> str:
    """Canonical syntax; ``parse(to_text(e)) == e``."""
    if isinstance(e, Var):
        return f"x{e.index}"
    if isinstance(e, Const):
        return str(e.value)
    if isinstance(e, VPoly):
        return f"V({e.n})"
    if isinstance(e, QPoly):
        return f"Q({e.n},{e.s})"
    if isinstance(e, Sum):
        return " + ".join(_wrap(t, (Sum,)) for t in e.terms)
    if isinstance(e, Product):
        return "*".join(_wrap(f, (Sum, Product)) for f in e.factors)
    if isinstance(e, Power):
        return f"{_wrap(e.base, (Sum, Product, Power))}^{e.exponent}"
    if isinstance(e, Apply):
        return f"{e.kind.value}({e.i}){{{to_text(e.arg)}}}"
    if isinstance(e, WordApply):
        ops = ", ".join(f"{k.value} {i}" for k, i in e.word.factors)
        return f"Word[{ops}]{{{to_text(e.arg)}}}"
    raise TypeError(f"not an expression: {e!r}")


def _wrap(e: Expr, kinds) -> str:
    text = to_text(e)
    return f"({text})" if isinstance(e, kinds) else text


# evaluation ----------------------------------------------------------------


def evaluate(e: Expr, nvars: int) -> Polynomial:
    if nvars < 0:
        raise EvalError("variable count must be non-negative")
    return _eval(e, nvars)


def _eval(e: Expr, nvars: int) -> Polynomial:
    if isinstance(e, Var):
        if e.index > nvars:
            raise EvalError(f"x{e.index} used with only {nvars} variables declared")
        return Polynomial.var(nvars, e.index)
    if isinstance(e, Const):
        return Polynomial.one(nvars) if e.value else Polynomial.zero(nvars)
    if isinstance(e, VPoly):
        if not 1 <= e.n <= nvars:
            raise EvalError(f"V({e.n}) needs 1 <= n <= {nvars}")
        return v_poly(e.n).embed(nvars)
    if isinstance(e, QPoly):
        if not 1 <= e.n <= nvars:
            raise EvalError(f"Q({e.n},{e.s}) needs 1 <= n <= {nvars}")
        if e.s > e.n:
            raise EvalError(f"Q({e.n},{e.s}) needs s <= n")
        return dickson_q(e.n, e.s).embed(nvars)
    if isinstance(e, Sum):
        acc = Polynomial.zero(nvars)
        for t in e.terms:
            acc = acc + _eval(t, nvars)
        return acc
    if isinstance(e, Product):
        acc = Polynomial.one(nvars)
        for f in e.factors:
            acc = acc * _eval(f, nvars)
        return acc
    if isinstance(e, Power):
        return _eval(e.base, nvars) ** e.exponent
    if isinstance(e, Apply):
        arg = _eval(e.arg, nvars)
        return sq(e.i, arg) if e.kind is Kind.SQ else chi_sq(e.i, arg)
    if isinstance(e, WordApply):
        return apply_word(e.word, _eval(e.arg, nvars))
    raise TypeError(f"not an expression: {e!r}")
