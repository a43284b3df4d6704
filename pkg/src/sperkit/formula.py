"""First-order formulas in the language of ordered rings with rational constants.

Terms and formulas are frozen dataclasses, so they are hashable and compare
structurally.  ``And``/``Or`` are n-ary.  Atoms compare two terms; after
:func:`to_poly_atoms` every atom has the shape ``p rel 0`` with ``rel`` one of
``= != > >=`` and ``p`` a recursive dense polynomial.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from . import mpoly
from .upoly import as_rat

RELS = ("=", "!=", "<", "<=", ">", ">=")
NEGATED = {"=": "!=", "!=": "=", "<": ">=", "<=": ">", ">": "<=", ">=": "<"}
FLIPPED = {"=": "=", "!=": "!=", "<": ">", "<=": ">=", ">": "<", ">=": "<="}


# -- terms ----------------------------------------------------------------------

class Term:
    __slots__ = ()

    def __add__(self, other):
        return Add(self, _t(other))

    def __radd__(self, other):
        return Add(_t(other), self)

    def __sub__(self, other):
        return Add(self, Neg(_t(other)))

    def __rsub__(self, other):
        return Add(_t(other), Neg(self))

    def __mul__(self, other):
        return Mul(self, _t(other))

    def __rmul__(self, other):
        return Mul(_t(other), self)

    def __neg__(self):
        return Neg(self)

    def __pow__(self, n: int):
        return Pow(self, n)

    def __str__(self):
        return term_to_str(self)


@dataclass(frozen=True, slots=True)
class Const(Term):
    value: Fraction


@dataclass(frozen=True, slots=True)
class Var(Term):
    name: str


@dataclass(frozen=True, slots=True)
class Add(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Mul(Term):
    left: Term
    right: Term


@dataclass(frozen=True, slots=True)
class Neg(Term):
    arg: Term


@dataclass(frozen=True, slots=True)
class Pow(Term):
    base: Term
    exp: int

    def __post_init__(self):
        if self.exp < 1:
            raise ValueError("exponent must be a positive integer")


def _t(value) -> Term:
    if isinstance(value, Term):
        return value
    if isinstance(value, str):
        return Var(value)
    return Const(as_rat(value))


def const(value) -> Const:
    return Const(as_rat(value))


# -- formulas -------------------------------------------------------------------

class Formula:
    __slots__ = ()

    def __and__(self, other):
        return conj(self, other)

    def __or__(self, other):
        return disj(self, other)

    def __invert__(self):
        return Not(self)

    def __str__(self):
        return to_str(self)


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    lhs: Term
    rel: str
    rhs: Term

    def __post_init__(self):
        if self.rel not in RELS:
            raise ValueError(f"unknown relation {self.rel!r}")


@dataclass(frozen=True, slots=True)
class TrueF(Formula):
    pass


@dataclass(frozen=True, slots=True)
class FalseF(Formula):
    pass


TRUE = TrueF()
FALSE = FalseF()


@dataclass(frozen=True, slots=True)
class And(Formula):
    args: tuple


@dataclass(frozen=True, slots=True)
class Or(Formula):
    args: tuple


@dataclass(frozen=True, slots=True)
class Not(Formula):
    arg: Formula


@dataclass(frozen=True, slots=True)
class Exists(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, slots=True)
class Forall(Formula):
    var: str
    body: Formula


@dataclass(frozen=True, slots=True)
class PAtom(Formula):
    """Atom ``poly rel 0`` over the variable order of an enclosing PolyAtomForm."""
    poly: object
    rel: str


@dataclass(frozen=True)
class PolyAtomForm:
    formula: Formula
    order: tuple


def atom(lhs, rel: str, rhs=0) -> Atom:
    return Atom(_t(lhs), rel, _t(rhs))


def conj(*parts: Formula) -> Formula:
    """Conjunction with constant folding and flattening."""
    out: list[Formula] = []
    for p in parts:
        if isinstance(p, FalseF):
            return FALSE
        if isinstance(p, TrueF):
            continue
        items = p.args if isinstance(p, And) else (p,)
        for q in items:
            if q not in out:
                out.append(q)
    if not out:
        return TRUE
    if len(out) == 1:
        return out[0]
    return And(tuple(out))


def disj(*parts: Formula) -> Formula:
    out: list[Formula] = []
    for p in parts:
        if isinstance(p, TrueF):
            return TRUE
        if isinstance(p, FalseF):
            continue
        items = p.args if isinstance(p, Or) else (p,)
        for q in items:
            if q not in out:
                out.append(q)
    if not out:
        return FALSE
    if len(out) == 1:
        return out[0]
    return Or(tuple(out))


def implies(a: Formula, b: Formula) -> Formula:
    return disj(negate(a), b)


def negate(f: Formula) -> Formula:
    if isinstance(f, TrueF):
        return FALSE
    if isinstance(f, FalseF):
        return TRUE
    if isinstance(f, Not):
        return f.arg
    return Not(f)


# -- variables ------------------------------------------------------------------

def term_vars(t: Term, acc: set | None = None) -> set:
    acc = set() if acc is None else acc
    stack = [t]
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            acc.add(t.name)
        elif isinstance(t, (Add, Mul)):
            stack.append(t.left)
            stack.append(t.right)
        elif isinstance(t, Neg):
            stack.append(t.arg)
        elif isinstance(t, Pow):
            stack.append(t.base)
    return acc


def free_vars(f: Formula) -> set:
    if isinstance(f, Atom):
        return term_vars(f.lhs) | term_vars(f.rhs)
    if isinstance(f, (TrueF, FalseF)):
        return set()
    if isinstance(f, (And, Or)):
        out = set()
        for a in f.args:
            out |= free_vars(a)
        return out
    if isinstance(f, Not):
        return free_vars(f.arg)
    if isinstance(f, (Exists, Forall)):
        return free_vars(f.body) - {f.var}
    if isinstance(f, PAtom):
        raise TypeError("PAtom variables are relative to a PolyAtomForm order")
    raise TypeError(f"not a formula: {f!r}")


def all_vars(f: Formula) -> list:
    """Every variable name (free or bound) in order of first occurrence."""
    seen: dict = {}

    def walk_t(t):
        if isinstance(t, Var):
            seen.setdefault(t.name, None)
        elif isinstance(t, (Add, Mul)):
            walk_t(t.left)
            walk_t(t.right)
        elif isinstance(t, Neg):
            walk_t(t.arg)
        elif isinstance(t, Pow):
            walk_t(t.base)

    def walk(g):
        if isinstance(g, Atom):
            walk_t(g.lhs)
            walk_t(g.rhs)
        elif isinstance(g, (And, Or)):
            for a in g.args:
                walk(a)
        elif isinstance(g, Not):
            walk(g.arg)
        elif isinstance(g, (Exists, Forall)):
            seen.setdefault(g.var, None)
            walk(g.body)

    walk(f)
    return list(seen)


def bound_vars(f: Formula) -> list:
    out = []

    def walk(g):
        if isinstance(g, (And, Or)):
            for a in g.args:
                walk(a)
        elif isinstance(g, Not):
            walk(g.arg)
        elif isinstance(g, (Exists, Forall)):
            out.append(g.var)
            walk(g.body)

    walk(f)
    return out


def fresh_name(base: str, avoid: set) -> str:
    root = base.rstrip("0123456789") or "v"
    if base not in avoid:
        return base
    for k in itertools.count(1):
        cand = f"{root}{k}"
        if cand not in avoid:
            return cand


# -- substitution ---------------------------------------------------------------

def subst_term(t: Term, mapping: Mapping[str, Term]) -> Term:
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Const):
        return t
    if isinstance(t, Add):
        return Add(subst_term(t.left, mapping), subst_term(t.right, mapping))
    if isinstance(t, Mul):
        return Mul(subst_term(t.left, mapping), subst_term(t.right, mapping))
    if isinstance(t, Neg):
        return Neg(subst_term(t.arg, mapping))
    if isinstance(t, Pow):
        return Pow(subst_term(t.base, mapping), t.exp)
    raise TypeError(f"not a term: {t!r}")


def substitute_many(f: Formula, mapping: Mapping[str, Term]) -> Formula:
    """Simultaneous capture-avoiding substitution."""
    mapping = {k: _t(v) for k, v in mapping.items()}
    if not mapping:
        return f
    if isinstance(f, Atom):
        return Atom(subst_term(f.lhs, mapping), f.rel, subst_term(f.rhs, mapping))
    if isinstance(f, (TrueF, FalseF)):
        return f
    if isinstance(f, And):
        return And(tuple(substitute_many(a, mapping) for a in f.args))
    if isinstance(f, Or):
        return Or(tuple(substitute_many(a, mapping) for a in f.args))
    if isinstance(f, Not):
        return Not(substitute_many(f.arg, mapping))
    if isinstance(f, (Exists, Forall)):
        inner = {k: v for k, v in mapping.items() if k != f.var}
        if not inner:
            return f
        body_free = free_vars(f.body)
        inner = {k: v for k, v in inner.items() if k in body_free}
        if not inner:
            return f
        incoming = set()
        for v in inner.values():
            incoming |= term_vars(v)
        var = f.var
        body = f.body
        if var in incoming:
            avoid = incoming | free_vars(f.body) | set(inner) | set(all_vars(f.body)) | {var}
            new = fresh_name(var, avoid)
            body = substitute_many(body, {var: Var(new)})
            var = new
        return type(f)(var, substitute_many(body, inner))
    raise TypeError(f"not a formula: {f!r}")


def substitute(f: Formula, var: str, t) -> Formula:
    return substitute_many(f, {var: _t(t)})


def rename_apart(f: Formula, reserved: Iterable[str] = ()) -> Formula:
    """Rename bound variables so they are pairwise distinct and distinct from
    the free variables (and from ``reserved``)."""
    used = set(free_vars(f)) | set(reserved)

    def walk(g):
        if isinstance(g, (Atom, TrueF, FalseF)):
            return g
        if isinstance(g, And):
            return And(tuple(walk(a) for a in g.args))
        if isinstance(g, Or):
            return Or(tuple(walk(a) for a in g.args))
        if isinstance(g, Not):
            return Not(walk(g.arg))
        if isinstance(g, (Exists, Forall)):
            var = g.var
            body = g.body
            if var in used:
                new = fresh_name(var, used | set(all_vars(body)))
                body = substitute_many(body, {var: Var(new)})
                var = new
            used.add(var)
            return type(g)(var, walk(body))
        raise TypeError(f"not a formula: {g!r}")

    return walk(f)


def normalize_bound(f: Formula, prefix: str = "_b") -> Formula:
    """Rename bound variables canonically (by position) for alpha-equality."""
    counter = itertools.count()

    def walk(g, mapping):
        if isinstance(g, Atom):
            m = {k: Var(v) for k, v in mapping.items()}
            return Atom(subst_term(g.lhs, m), g.rel, subst_term(g.rhs, m))
        if isinstance(g, (TrueF, FalseF)):
            return g
        if isinstance(g, And):
            return And(tuple(walk(a, mapping) for a in g.args))
        if isinstance(g, Or):
            return Or(tuple(walk(a, mapping) for a in g.args))
        if isinstance(g, Not):
            return Not(walk(g.arg, mapping))
        if isinstance(g, (Exists, Forall)):
            new = f"{prefix}{next(counter)}"
            return type(g)(new, walk(g.body, {**mapping, g.var: new}))
        raise TypeError(f"not a formula: {g!r}")

    return walk(f, {})


def alpha_equal(f: Formula, g: Formula) -> bool:
    return normalize_bound(f) == normalize_bound(g)


# -- polynomial normal forms -----------------------------------------------------

def term_to_poly(t: Term, index: Mapping[str, int]):
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Var):
        return mpoly.var(index[t.name])
    if isinstance(t, Add):
        return mpoly.add(term_to_poly(t.left, index), term_to_poly(t.right, index))
    if isinstance(t, Mul):
        return mpoly.mul(term_to_poly(t.left, index), term_to_poly(t.right, index))
    if isinstance(t, Neg):
        return mpoly.neg(term_to_poly(t.arg, index))
    if isinstance(t, Pow):
        return mpoly.power(term_to_poly(t.base, index), t.exp)
    raise TypeError(f"not a term: {t!r}")


def _monomials(p, names, prefix=()):
    """Yield (coefficient, ((name, exp), ...)) with the highest powers first."""
    if mpoly.is_const(p):
        if p != 0:
            yield p, prefix
        return
    i, cs = p
    for k in range(len(cs) - 1, -1, -1):
        if mpoly.is_zero(cs[k]):
            continue
        mono = prefix + ((names[i], k),) if k else prefix
        yield from _monomials(cs[k], names, mono)


def poly_to_term(p, names: Sequence[str]) -> Term:
    """A readable term for p: a sum of monomials with nonnegative literals."""
    terms: list[tuple[bool, Term]] = []
    for c, mono in _monomials(p, names):
        neg = c < 0
        a = -c if neg else c
        factors: list[Term] = []
        for name, k in mono:
            factors.append(Var(name) if k == 1 else Pow(Var(name), k))
        if not factors:
            body: Term = Const(a)
        else:
            body = factors[0]
            for fct in factors[1:]:
                body = Mul(body, fct)
            if a != 1:
                body = Mul(Const(a), body)
        terms.append((neg, body))
    if not terms:
        return Const(Fraction(0))
    neg, body = terms[0]
    if neg and isinstance(body, Mul) and isinstance(body.left, Const):
        acc: Term = Mul(Neg(body.left), body.right)
    else:
        acc = Neg(body) if neg else body
    for neg, body in terms[1:]:
        acc = Add(acc, Neg(body) if neg else body)
    return acc


def atom_to_patom(a: Atom, index: Mapping[str, int], negated: bool = False) -> PAtom:
    rel = NEGATED[a.rel] if negated else a.rel
    p = mpoly.sub(term_to_poly(a.lhs, index), term_to_poly(a.rhs, index))
    if rel == "<":
        return PAtom(mpoly.neg(p), ">")
    if rel == "<=":
        return PAtom(mpoly.neg(p), ">=")
    return PAtom(p, rel)


def default_order(f: Formula, declared: Sequence[str] = ()) -> tuple:
    order = list(dict.fromkeys(declared))
    for v in all_vars(f):
        if v not in order:
            order.append(v)
    return tuple(order)


def to_poly_atoms(f: Formula, order: Sequence[str] | None = None) -> PolyAtomForm:
    """Negation normal form with every atom rewritten as ``p rel 0``."""
    order = tuple(order) if order is not None else default_order(f)
    index = {v: i for i, v in enumerate(order)}

    def walk(g, neg):
        if isinstance(g, Atom):
            return atom_to_patom(g, index, neg)
        if isinstance(g, TrueF):
            return FALSE if neg else TRUE
        if isinstance(g, FalseF):
            return TRUE if neg else FALSE
        if isinstance(g, PAtom):
            if not neg:
                return g
            return patom_negate(g)
        if isinstance(g, Not):
            return walk(g.arg, not neg)
        if isinstance(g, And):
            parts = [walk(a, neg) for a in g.args]
            return disj(*parts) if neg else conj(*parts)
        if isinstance(g, Or):
            parts = [walk(a, neg) for a in g.args]
            return conj(*parts) if neg else disj(*parts)
        if isinstance(g, Exists):
            return (Forall if neg else Exists)(g.var, walk(g.body, neg))
        if isinstance(g, Forall):
            return (Exists if neg else Forall)(g.var, walk(g.body, neg))
        raise TypeError(f"not a formula: {g!r}")

    return PolyAtomForm(walk(f, False), order)


def patom_negate(a: PAtom) -> PAtom:
    if a.rel == "=":
        return PAtom(a.poly, "!=")
    if a.rel == "!=":
        return PAtom(a.poly, "=")
    if a.rel == ">":
        return PAtom(mpoly.neg(a.poly), ">=")
    if a.rel == ">=":
        return PAtom(mpoly.neg(a.poly), ">")
    raise ValueError(a.rel)


def from_poly_atoms(paf: PolyAtomForm) -> Formula:
    """Back to term atoms ``p rel 0``."""
    names = paf.order

    def walk(g):
        if isinstance(g, PAtom):
            return Atom(poly_to_term(g.poly, names), g.rel, Const(Fraction(0)))
        if isinstance(g, (TrueF, FalseF, Atom)):
            return g
        if isinstance(g, And):
            return And(tuple(walk(a) for a in g.args))
        if isinstance(g, Or):
            return Or(tuple(walk(a) for a in g.args))
        if isinstance(g, Not):
            return Not(walk(g.arg))
        if isinstance(g, (Exists, Forall)):
            return type(g)(g.var, walk(g.body))
        raise TypeError(f"not a formula: {g!r}")

    return walk(paf.formula)


def sign_holds(s: int, rel: str) -> bool:
    if rel == "=":
        return s == 0
    if rel == "!=":
        return s != 0
    if rel == ">":
        return s > 0
    if rel == ">=":
        return s >= 0
    if rel == "<":
        return s < 0
    if rel == "<=":
        return s <= 0
    raise ValueError(rel)


def is_quantifier_free(f: Formula) -> bool:
    if isinstance(f, (Exists, Forall)):
        return False
    if isinstance(f, (And, Or)):
        return all(is_quantifier_free(a) for a in f.args)
    if isinstance(f, Not):
        return is_quantifier_free(f.arg)
    return True


def atoms(f: Formula) -> list:
    out: list = []

    def walk(g):
        if isinstance(g, (Atom, PAtom)):
            if g not in out:
                out.append(g)
        elif isinstance(g, (And, Or)):
            for a in g.args:
                walk(a)
        elif isinstance(g, Not):
            walk(g.arg)
        elif isinstance(g, (Exists, Forall)):
            walk(g.body)

    walk(f)
    return out


def eval_qf_rational(f: Formula, env: Mapping[str, Fraction]) -> bool:
    """Truth of a quantifier-free formula at a rational point."""
    if isinstance(f, Atom):
        v = eval_term(f.lhs, env) - eval_term(f.rhs, env)
        return sign_holds((v > 0) - (v < 0), f.rel)
    if isinstance(f, TrueF):
        return True
    if isinstance(f, FalseF):
        return False
    if isinstance(f, And):
        return all(eval_qf_rational(a, env) for a in f.args)
    if isinstance(f, Or):
        return any(eval_qf_rational(a, env) for a in f.args)
    if isinstance(f, Not):
        return not eval_qf_rational(f.arg, env)
    raise TypeError("formula is not quantifier-free")


def eval_term(t: Term, env: Mapping[str, object]):
    if isinstance(t, Const):
        return t.value
    if isinstance(t, Var):
        return env[t.name]
    if isinstance(t, Add):
        return eval_term(t.left, env) + eval_term(t.right, env)
    if isinstance(t, Mul):
        return eval_term(t.left, env) * eval_term(t.right, env)
    if isinstance(t, Neg):
        return -eval_term(t.arg, env)
    if isinstance(t, Pow):
        return eval_term(t.base, env) ** t.exp
    raise TypeError(f"not a term: {t!r}")


# -- printing -------------------------------------------------------------------

_P_SUM, _P_PROD, _P_UNARY, _P_POW, _P_ATOM = range(5)


def _rat_str(q: Fraction) -> str:
    return str(q)


def _term(t: Term) -> tuple[str, int]:
    if isinstance(t, Const):
        if t.value < 0:
            return f"(-{_rat_str(-t.value)})", _P_ATOM
        return _rat_str(t.value), _P_ATOM
    if isinstance(t, Var):
        return t.name, _P_ATOM
    if isinstance(t, Add):
        left = _wrap(t.left, _P_SUM)
        if isinstance(t.right, Neg):
            return f"{left} - {_wrap(t.right.arg, _P_PROD)}", _P_SUM
        return f"{left} + {_wrap(t.right, _P_PROD)}", _P_SUM
    if isinstance(t, Mul):
        return f"{_wrap(t.left, _P_PROD)}*{_wrap(t.right, _P_UNARY)}", _P_PROD
    if isinstance(t, Neg):
        return f"-{_wrap(t.arg, _P_UNARY)}", _P_UNARY
    if isinstance(t, Pow):
        return f"{_wrap(t.base, _P_ATOM)}^{t.exp}", _P_POW
    raise TypeError(f"not a term: {t!r}")


def _wrap(t: Term, level: int) -> str:
    s, p = _term(t)
    return s if p >= level else f"({s})"


def term_to_str(t: Term) -> str:
    return _term(t)[0]


_F_QUANT, _F_OR, _F_AND, _F_NOT = range(4)


def _formula(f: Formula) -> tuple[str, int]:
    if isinstance(f, Atom):
        return f"{term_to_str(f.lhs)} {f.rel} {term_to_str(f.rhs)}", _F_NOT
    if isinstance(f, TrueF):
        return "true", _F_NOT
    if isinstance(f, FalseF):
        return "false", _F_NOT
    if isinstance(f, Not):
        return f"~{_fwrap(f.arg, _F_NOT)}", _F_NOT
    if isinstance(f, And):
        return " /\\ ".join(_fwrap(a, _F_NOT, nest=And) for a in f.args), _F_AND
    if isinstance(f, Or):
        return " \\/ ".join(_fwrap(a, _F_AND, nest=Or) for a in f.args), _F_OR
    if isinstance(f, Exists):
        return f"exists {f.var}. {_formula(f.body)[0]}", _F_QUANT
    if isinstance(f, Forall):
        return f"forall {f.var}. {_formula(f.body)[0]}", _F_QUANT
    if isinstance(f, PAtom):
        return f"[{f.poly!r}] {f.rel} 0", _F_NOT
    raise TypeError(f"not a formula: {f!r}")


def _fwrap(f: Formula, level: int, nest=None) -> str:
    s, p = _formula(f)
    if p < level or (nest is not None and isinstance(f, nest)):
        return f"({s})"
    if isinstance(f, Atom) and level == _F_NOT and nest is None:
        return f"({s})"
    return s


def to_str(f: Formula) -> str:
    return _formula(f)[0]
