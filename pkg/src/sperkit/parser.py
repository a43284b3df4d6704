"""Recursive-descent parser for the formula and polynomial text syntax.

    formula := ('exists'|'forall') IDENT '.' formula | disj
    disj    := conj ( '\\/' conj )*
    conj    := neg ( '/\\' neg )*
    neg     := '~' neg | '(' formula ')' | atom | 'true' | 'false'
    atom    := poly REL poly
    poly    := product (('+'|'-') product)*
    product := unary ('*' unary)*
    unary   := '-' unary | power
    power   := primary ('^' INT)?
    primary := INT ('/' INT)? | IDENT | '(' poly ')'
"""
from __future__ import annotations

import re
from fractions import Fraction
from typing import Sequence

from .errors import ParseError, UnknownVariable
from .formula import (
    Add, Atom, Const, Exists, FALSE, Forall, Formula, Mul, Neg, Not, Pow, TRUE, Term, Var,
    conj, disj, rename_apart, term_to_poly,
)
from .upoly import UPoly

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<and>/\\)
  | (?P<or>\\/)
  | (?P<rel><=|>=|!=|=|<|>)
  | (?P<num>\d+)
  | (?P<ident>[A-Za-z][A-Za-z0-9_]*)
  | (?P<op>[-+*^/().~])
""", re.VERBOSE)

_KEYWORDS = {"exists", "forall", "true", "false"}


class _Tok:
    __slots__ = ("kind", "text", "pos")

    def __init__(self, kind, text, pos):
        self.kind, self.text, self.pos = kind, text, pos


def _tokenize(text: str) -> list[_Tok]:
    toks = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", *_linecol(text, pos))
        kind = m.lastgroup
        if kind != "ws":
            val = m.group(kind)
            if kind == "ident" and val in _KEYWORDS:
                kind = val
            toks.append(_Tok(kind, val, pos))
        pos = m.end()
    toks.append(_Tok("eof", "", len(text)))
    return toks


def _linecol(text: str, pos: int) -> tuple[int, int]:
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Parser:
    def __init__(self, text: str, variables: Sequence[str] | None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.declared = None if variables is None else set(variables)
        self.bound: list[str] = []

    # -- helpers
    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg: str, tok: _Tok | None = None):
        tok = tok or self.tok
        found = tok.text or "end of input"
        raise ParseError(f"{msg} (found {found!r})", *_linecol(self.text, tok.pos))

    def accept(self, kind: str, text: str | None = None) -> _Tok | None:
        t = self.tok
        if t.kind == kind and (text is None or t.text == text):
            self.i += 1
            return t
        return None

    def expect(self, kind: str, text: str | None = None) -> _Tok:
        t = self.accept(kind, text)
        if t is None:
            self.error(f"expected {text or kind}")
        return t

    # -- formulas
    def formula(self) -> Formula:
        t = self.tok
        if t.kind in ("exists", "forall"):
            self.i += 1
            name = self.expect("ident").text
            self.expect("op", ".")
            self.bound.append(name)
            try:
                body = self.formula()
            finally:
                self.bound.pop()
            return (Exists if t.kind == "exists" else Forall)(name, body)
        return self.disj()

    def disj(self) -> Formula:
        parts = [self.conj()]
        while self.accept("or"):
            parts.append(self.conj())
        return parts[0] if len(parts) == 1 else _nary(parts, "or")

    def conj(self) -> Formula:
        parts = [self.neg()]
        while self.accept("and"):
            parts.append(self.neg())
        return parts[0] if len(parts) == 1 else _nary(parts, "and")

    def neg(self) -> Formula:
        if self.accept("op", "~"):
            return Not(self.neg())
        if self.accept("true"):
            return TRUE
        if self.accept("false"):
            return FALSE
        if self.tok.kind == "op" and self.tok.text == "(":
            save = self.i
            try:
                return self.atom()
            except ParseError:
                self.i = save
            self.i += 1
            f = self.formula()
            self.expect("op", ")")
            return f
        return self.atom()

    def atom(self) -> Formula:
        lhs = self.poly()
        t = self.tok
        if t.kind != "rel":
            self.error("expected a relation")
        self.i += 1
        rhs = self.poly()
        return Atom(lhs, t.text, rhs)

    # -- terms
    def poly(self) -> Term:
        acc = self.product()
        while True:
            if self.accept("op", "+"):
                acc = Add(acc, self.product())
            elif self.accept("op", "-"):
                acc = Add(acc, Neg(self.product()))
            else:
                return acc

    def product(self) -> Term:
        acc = self.unary()
        while self.accept("op", "*"):
            acc = Mul(acc, self.unary())
        return acc

    def unary(self) -> Term:
        if self.accept("op", "-"):
            return Neg(self.unary())
        return self.power()

    def power(self) -> Term:
        base = self.primary()
        if self.accept("op", "^"):
            t = self.expect("num")
            n = int(t.text)
            if n < 1:
                self.error("exponent must be a positive integer", t)
            return Pow(base, n)
        return base

    def primary(self) -> Term:
        t = self.tok
        if t.kind == "num":
            self.i += 1
            if self.tok.kind == "op" and self.tok.text == "/" and self.toks[self.i + 1].kind == "num":
                self.i += 1
                d = self.expect("num")
                if int(d.text) == 0:
                    self.error("zero denominator", d)
                return Const(Fraction(int(t.text), int(d.text)))
            return Const(Fraction(int(t.text)))
        if t.kind == "ident":
            self.i += 1
            name = t.text
            if (self.declared is not None and name not in self.declared
                    and name not in self.bound):
                raise UnknownVariable(name, *_linecol(self.text, t.pos))
            return Var(name)
        if self.accept("op", "("):
            inner = self.poly()
            self.expect("op", ")")
            return inner
        self.error("expected a number, variable or '('")

    def done(self):
        if self.tok.kind != "eof":
            self.error("unexpected trailing input")


def _nary(parts, kind):
    from .formula import And, Or
    return And(tuple(parts)) if kind == "and" else Or(tuple(parts))


def parse(text: str, variables: Sequence[str] | None = None) -> Formula:
    """Parse a formula.

    ``variables`` declares the admissible free identifiers; bound variables
    are introduced by their quantifier.  ``None`` accepts any identifier.
    Bound variables are renamed apart from each other and from free ones.
    """
    p = _Parser(text, variables)
    f = p.formula()
    p.done()
    return rename_apart(f, reserved=variables or ())


def parse_term(text: str, variables: Sequence[str] | None = None) -> Term:
    p = _Parser(text, variables)
    t = p.poly()
    p.done()
    return t


def parse_upoly(text: str, var: str | None = None) -> UPoly:
    """Parse a univariate polynomial; the variable is inferred if not given."""
    from .formula import term_vars
    from . import mpoly
    t = parse_term(text)
    names = term_vars(t)
    if var is not None:
        names = names | {var}
    if len(names) > 1:
        raise ParseError(f"expected a univariate polynomial, found variables {sorted(names)}")
    name = next(iter(names), "x")
    return mpoly.to_upoly(term_to_poly(t, {name: 0}), 0)
