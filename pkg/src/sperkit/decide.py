"""Decision procedure and quantifier elimination for real closed fields.

Quantifiers are removed innermost first.  For each ``exists v`` the body is
split into disjuncts; inside a disjunct, an equation linear in ``v`` is used
to substitute ``v`` away, and everything else goes through the parametric
sign-matrix engine in :mod:`sperkit.hormander`.  Universal quantifiers are
handled as negated existentials.

The result of :func:`eliminate` is normalised to a disjunction of sign
conditions; with at most one free variable, disjuncts that are empty on the
real line are removed using exact sign tables.
"""
from __future__ import annotations

import os
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import mpoly
from .errors import MissingAssignment, NotClosed, ResourceLimit
from .exactnum import (
    Ordering, RealAlg, isolate_roots, ralg_add, ralg_cmp, ralg_mul, ralg_sign,
    rational_between, sign_at,
)
from .formula import (
    FALSE, TRUE, And, Atom, Const, Exists, FalseF, Forall, Formula, Not, Or, PAtom,
    PolyAtomForm, TrueF, conj, default_order, disj, free_vars, from_poly_atoms,
    is_quantifier_free, patom_negate, rename_apart, sign_holds, substitute_many,
    term_to_poly, to_poly_atoms,
)
from .hormander import NZ, sign_matrix_qe
from .upoly import UPoly, bivariate_psc, bivariate_resultant, count_roots, interpolate, resultant


@dataclass(frozen=True)
class Limits:
    max_degree: int = 8
    max_atoms: int = 64
    max_depth: int = 32

    @classmethod
    def parse(cls, text: str) -> "Limits":
        """``"8,64,32"`` or ``"degree=8,atoms=64,depth=32"`` (any subset)."""
        vals = {}
        keys = ("max_degree", "max_atoms", "max_depth")
        aliases = {"degree": "max_degree", "atoms": "max_atoms", "depth": "max_depth"}
        parts = [p.strip() for p in text.split(",") if p.strip()]
        for pos, part in enumerate(parts):
            if "=" in part:
                k, v = part.split("=", 1)
                k = k.strip().replace("-", "_")
                k = aliases.get(k, k)
                if k not in keys:
                    raise ValueError(f"unknown limit {k!r}")
            else:
                if pos >= len(keys):
                    raise ValueError("too many limits")
                k, v = keys[pos], part
            vals[k] = int(v)
            if vals[k] < 1:
                raise ValueError("limits must be positive")
        return cls(**vals)

    @classmethod
    def from_env(cls, var: str = "SPERKIT_LIMITS") -> "Limits":
        text = os.environ.get(var, "")
        return cls.parse(text) if text.strip() else cls()


DEFAULT_LIMITS = Limits()
_DNF_CAP = 512


@contextmanager
def _deep_recursion(limit: int = 20000):
    old = sys.getrecursionlimit()
    if old < limit:
        sys.setrecursionlimit(limit)
    try:
        yield
    finally:
        if old < limit:
            sys.setrecursionlimit(old)


# -- sign tables -------------------------------------------------------------------

@dataclass(frozen=True)
class SignCell:
    """A point {a} or an open interval (lower, upper); None means infinite."""
    kind: str  # "point" | "interval"
    lower: RealAlg | None = None
    upper: RealAlg | None = None
    signs: tuple = ()

    @property
    def point(self) -> RealAlg:
        return self.lower

    def sample(self) -> RealAlg:
        """A representative number in the cell (rational for intervals)."""
        if self.kind == "point":
            return self.lower
        lo, hi = self.lower, self.upper
        if lo is None and hi is None:
            return RealAlg.from_rational(0)
        if lo is None:
            return RealAlg.from_rational(_floor(hi.lo) - 1)
        if hi is None:
            return RealAlg.from_rational(_floor(lo.hi) + 1)
        return RealAlg.from_rational(rational_between(lo, hi))


def _floor(q: Fraction) -> int:
    return q.numerator // q.denominator


@dataclass(frozen=True)
class SignTable:
    polys: tuple
    cells: tuple

    @property
    def points(self) -> list:
        return [c.point for c in self.cells if c.kind == "point"]


def merge_roots(root_lists) -> list:
    """Sorted union (by value) of several sorted lists of RealAlg."""
    merged: list[RealAlg] = []
    for roots in root_lists:
        out = []
        i = j = 0
        while i < len(merged) or j < len(roots):
            if j >= len(roots):
                out.append(merged[i])
                i += 1
            elif i >= len(merged):
                out.append(roots[j])
                j += 1
            else:
                order = ralg_cmp(merged[i], roots[j])
                if order is Ordering.EQ:
                    out.append(merged[i])
                    i += 1
                    j += 1
                elif order is Ordering.LT:
                    out.append(merged[i])
                    i += 1
                else:
                    out.append(roots[j])
                    j += 1
        merged = out
    return merged


def sign_table(polys: Sequence[UPoly]) -> SignTable:
    """Sign-invariant decomposition of the line for a family of polynomials."""
    polys = tuple(polys)
    points = merge_roots(isolate_roots(p) for p in polys if not p.is_zero())
    cells: list[SignCell] = []
    bounds = [None] + points + [None]
    for k in range(len(points) + 1):
        lo, hi = bounds[k], bounds[k + 1]
        cell = SignCell("interval", lo, hi)
        s = cell.sample()
        cells.append(SignCell("interval", lo, hi, tuple(sign_at(p, s) for p in polys)))
        if hi is not None:
            cells.append(SignCell("point", hi, hi, tuple(sign_at(p, hi) for p in polys)))
    return SignTable(polys, tuple(cells))


# -- formula plumbing ----------------------------------------------------------------

def mk_patom(p, rel: str) -> Formula:
    if mpoly.is_const(p):
        return TRUE if sign_holds((p > 0) - (p < 0), rel) else FALSE
    return PAtom(p, rel)


def nnf_negate(f: Formula) -> Formula:
    """Negation of a quantifier-free PAtom formula, in negation normal form."""
    if isinstance(f, PAtom):
        return patom_negate(f)
    if isinstance(f, TrueF):
        return FALSE
    if isinstance(f, FalseF):
        return TRUE
    if isinstance(f, And):
        return disj(*(nnf_negate(a) for a in f.args))
    if isinstance(f, Or):
        return conj(*(nnf_negate(a) for a in f.args))
    raise TypeError(f"unexpected node {f!r}")


def map_polys(f: Formula, fn) -> Formula:
    if isinstance(f, PAtom):
        return mk_patom(fn(f.poly), f.rel)
    if isinstance(f, (TrueF, FalseF)):
        return f
    if isinstance(f, And):
        return conj(*(map_polys(a, fn) for a in f.args))
    if isinstance(f, Or):
        return disj(*(map_polys(a, fn) for a in f.args))
    raise TypeError(f"unexpected node {f!r}")


def patoms(f: Formula) -> list:
    out: dict = {}

    def walk(g):
        if isinstance(g, PAtom):
            out.setdefault(g, None)
        elif isinstance(g, (And, Or)):
            for a in g.args:
                walk(a)

    walk(f)
    return list(out)


def eval_signs(f: Formula, signs: Mapping) -> bool:
    if isinstance(f, PAtom):
        return sign_holds(signs[f.poly], f.rel)
    if isinstance(f, TrueF):
        return True
    if isinstance(f, FalseF):
        return False
    if isinstance(f, And):
        return all(eval_signs(a, signs) for a in f.args)
    if isinstance(f, Or):
        return any(eval_signs(a, signs) for a in f.args)
    raise TypeError(f"unexpected node {f!r}")


def dnf(f: Formula, cap: int = _DNF_CAP) -> list | None:
    """List of conjunctions (lists of PAtoms), or None if larger than cap."""
    if isinstance(f, PAtom):
        return [[f]]
    if isinstance(f, TrueF):
        return [[]]
    if isinstance(f, FalseF):
        return []
    if isinstance(f, Or):
        out = []
        for a in f.args:
            d = dnf(a, cap)
            if d is None:
                return None
            out.extend(d)
            if len(out) > cap:
                return None
        return out
    if isinstance(f, And):
        out = [[]]
        for a in f.args:
            d = dnf(a, cap)
            if d is None or len(out) * len(d) > cap:
                return None
            out = [x + [y for y in c if y not in x] for x in out for c in d]
        return out
    raise TypeError(f"unexpected node {f!r}")


def _conj_consistent(atoms_: list) -> bool:
    """Cheap syntactic check for contradictory sign conditions on one polynomial."""
    allowed: dict = {}
    for a in atoms_:
        key, k = mpoly.normalize(a.poly)
        ok = {s for s in (-1, 0, 1) if sign_holds(s * k, a.rel)}
        allowed[key] = allowed.get(key, {-1, 0, 1}) & ok
        if not allowed[key]:
            return False
    return True


class _LineOracle:
    """Exact satisfiability of sign contexts over a single parameter.

    The solution set of a context is kept as a list of pieces, each a point
    ``("pt", a)`` or an open interval ``("iv", lo, hi)`` (None for infinite
    ends) on which every polynomial of the context has constant sign.  A
    context with one more condition is solved by refining its parent's pieces.
    """

    def __init__(self, v: int, base: list | None = None):
        self.v = v
        self._roots: dict = {}
        self._region: dict = {frozenset(): base or [("iv", None, None)]}

    def roots(self, u: UPoly) -> list:
        r = self._roots.get(u)
        if r is None:
            r = self._roots[u] = isolate_roots(u)
        return r

    def __call__(self, ctx: dict) -> bool:
        return bool(self.region(frozenset(ctx.items())))

    def region(self, key: frozenset) -> list:
        hit = self._region.get(key)
        if hit is not None:
            return hit
        parent = item = None
        for it in key:
            rest = key - {it}
            for cand in (rest, rest | {(it[0], NZ)}):
                if cand != key and cand in self._region:
                    parent, item = cand, it
                    break
            if parent is not None:
                break
        if parent is None:
            item = next(iter(key))
            parent = key - {item}
        out = self._refine(self.region(parent), *item)
        self._region[key] = out
        return out

    def _refine(self, pieces: list, p, want: int) -> list:
        u = mpoly.to_upoly(p, self.v)

        def ok(s):
            return s != 0 if want == NZ else s == want

        rts = self.roots(u)
        out = []
        for piece in pieces:
            if piece[0] == "pt":
                if ok(sign_at(u, piece[1])):
                    out.append(piece)
                continue
            _, lo, hi = piece
            inner = [r for r in rts
                     if (lo is None or ralg_cmp(lo, r) is Ordering.LT)
                     and (hi is None or ralg_cmp(r, hi) is Ordering.LT)]
            bounds = [lo] + inner + [hi]
            for k in range(len(inner) + 1):
                cell = SignCell("interval", bounds[k], bounds[k + 1])
                if ok(u.sign_at(cell.sample().rat)):
                    out.append(("iv", bounds[k], bounds[k + 1]))
            if want == 0:
                out.extend(("pt", r) for r in inner)
        return out


# -- the elimination driver -------------------------------------------------------

class _QE:
    def __init__(self, order: tuple, limits: Limits):
        self.order = order
        self.limits = limits
        self._oracles: dict = {}

    def run(self, f: Formula) -> Formula:
        if isinstance(f, PAtom):
            return mk_patom(f.poly, f.rel)
        if isinstance(f, (TrueF, FalseF)):
            return f
        if isinstance(f, And):
            parts = []
            for a in f.args:
                r = self.run(a)
                if isinstance(r, FalseF):
                    return FALSE
                parts.append(r)
            return conj(*parts)
        if isinstance(f, Or):
            parts = []
            for a in f.args:
                r = self.run(a)
                if isinstance(r, TrueF):
                    return TRUE
                parts.append(r)
            return disj(*parts)
        if isinstance(f, Exists):
            return self.exists(self.order.index(f.var), self.run(f.body))
        if isinstance(f, Forall):
            i = self.order.index(f.var)
            return nnf_negate(self.exists(i, nnf_negate(self.run(f.body))))
        raise TypeError(f"unexpected node {f!r}")

    # -- one existential
    def exists(self, i: int, body: Formula) -> Formula:
        if not any(mpoly.involves(a.poly, i) for a in patoms(body)):
            return body
        n = len(self.order)
        fwd = {j: (0 if j == i else (j + 1 if j < i else j)) for j in range(n)}
        back = {v: k for k, v in fwd.items()}
        local = map_polys(body, lambda p: mpoly.rename(p, fwd))
        params = set()
        for a in patoms(local):
            params |= mpoly.variables(a.poly)
        params.discard(0)
        if len(params) == 1:
            v = params.pop()
            parts = []
            for d in (local.args if isinstance(local, Or) else (local,)):
                r = _OneParameter(d, v, self.limits).run()
                if isinstance(r, TrueF):
                    return TRUE
                parts.append(r)
            return map_polys(disj(*parts), lambda p: mpoly.rename(p, back))
        disjuncts = dnf(local)
        if disjuncts is None:
            out = self._matrix(local, [])
        else:
            out = disj(*(self._conj(c) for c in disjuncts))
        return map_polys(out, lambda p: mpoly.rename(p, back))

    def _conj(self, atoms_: list) -> Formula:
        if not _conj_consistent(atoms_):
            return FALSE
        outer = [a for a in atoms_ if not mpoly.involves(a.poly, 0)]
        inner = [a for a in atoms_ if mpoly.involves(a.poly, 0)]
        if not inner:
            return conj(*outer)
        return conj(*outer, self._eliminate_conj(inner, outer))

    def _eliminate_conj(self, inner: list, outer: list) -> Formula:
        linear = [a for a in inner if a.rel == "=" and mpoly.degree(a.poly, 0) == 1]
        pick = next((a for a in linear if mpoly.is_const(mpoly.head(a.poly, 0))), None)
        if pick is None and linear:
            pick = linear[0]
        if pick is not None:
            return self._linear(pick, [a for a in inner if a is not pick], outer)
        return self._matrix(conj(*inner), outer)

    def _linear(self, eq: PAtom, rest: list, outer: list) -> Formula:
        a = mpoly.head(eq.poly, 0)
        b = mpoly.behead(eq.poly, 0)
        if mpoly.is_const(a):
            val = mpoly.scale(mpoly.neg(b), 1 / a)
            return conj(*(mk_patom(mpoly.substitute(q.poly, 0, val), q.rel) for q in rest))
        num = mpoly.neg(b)
        main = []
        for q in rest:
            d = mpoly.degree(q.poly, 0)
            r = mpoly.homogenised_substitute(q.poly, num, a, 0)
            if d % 2:
                r = mpoly.mul(r, a)
            main.append(mk_patom(r, q.rel))
        branch_nz = conj(mk_patom(a, "!="), *main)
        degenerate = [mk_patom(a, "="), mk_patom(b, "=")]
        if any(isinstance(x, FalseF) for x in degenerate):
            return branch_nz
        if rest:
            sub = self._conj(list(rest) + [x for x in degenerate if isinstance(x, PAtom)])
            branch_z = conj(*degenerate, sub)
        else:
            branch_z = conj(*degenerate)
        return disj(branch_nz, branch_z)

    def _matrix(self, body: Formula, outer: list) -> Formula:
        ctx: dict = {}
        from .hormander import Inconsistent, assert_sign
        try:
            for a in outer:
                if a.rel == "=":
                    ctx = assert_sign(ctx, a.poly, 0)
                elif a.rel == ">":
                    ctx = assert_sign(ctx, a.poly, 1)
                elif a.rel == "!=":
                    ctx = assert_sign(ctx, a.poly, NZ)
        except Inconsistent:
            return FALSE
        polys = [a.poly for a in patoms(body)]
        params = set()
        for p in polys + [a.poly for a in outer]:
            params |= mpoly.variables(p)
        params.discard(0)
        feasible = None
        if len(params) == 1:
            feasible = self._oracle(next(iter(params)))
        return sign_matrix_qe(polys, lambda signs: eval_signs(body, signs), ctx,
                              max_depth=self.limits.max_depth, feasible=feasible)

    def _oracle(self, v: int) -> "_LineOracle":
        if v not in self._oracles:
            self._oracles[v] = _LineOracle(v)
        return self._oracles[v]


class _OneParameter:
    """Elimination of variable 0 from a quantifier-free body whose only other
    variable is v.

    The x-line (x being v) is cut at the real roots of a projection set:
    leading coefficients in variable 0 and the principal subresultant
    coefficients of every polynomial with its derivative and of every pair.
    Between consecutive roots the real roots in variable 0 move continuously
    without meeting, so one rational sample decides a whole open cell; each
    root is decided exactly by running the sign-matrix engine at that point.
    The answer is then written with sign conditions on the projection set.
    """

    def __init__(self, body: Formula, v: int, limits: Limits):
        self.body = body
        self.v = v
        self.limits = limits
        self.polys = [a.poly for a in patoms(body)]

    def projection(self) -> list:
        v = self.v
        keyed: dict = {}
        inner = []
        for p in self.polys:
            key = mpoly.primitive(p)
            if mpoly.involves(key, 0):
                if key not in inner:
                    inner.append(key)
            else:
                keyed[key] = None
        cols = [[mpoly.to_upoly(c, v) for c in mpoly.coeff_list(f, 0)] for f in inner]
        out: list[UPoly] = []

        def add(u: UPoly):
            if u.degree >= 1:
                u = u.squarefree().primitive()
                if u not in out:
                    out.append(u)

        for p in keyed:
            add(mpoly.to_upoly(p, v))
        for k, c in enumerate(cols):
            add(c[-1])
            deriv = [c[j] * j for j in range(1, len(c))]
            for u in bivariate_psc(c, deriv):
                add(u)
            for c2 in cols[k + 1:]:
                for u in bivariate_psc(c, c2):
                    add(u)
        out.sort(key=lambda u: (u.degree, u.coeffs))
        return out

    def _decide_at_rational(self, x: Fraction) -> bool:
        vals = {self.v: x}
        polys = [mpoly.evaluate(p, vals) for p in self.polys]
        sub = dict(zip(self.polys, polys))
        res = sign_matrix_qe(list(dict.fromkeys(polys)),
                             lambda signs: eval_signs(self.body, {p: signs[q] for p, q in sub.items()}),
                             max_depth=self.limits.max_depth)
        return isinstance(res, TrueF)

    def _decide_at(self, a: RealAlg) -> bool:
        if a.rat is not None:
            return self._decide_at_rational(a.rat)
        oracle = _LineOracle(self.v, [("pt", a)])
        res = sign_matrix_qe(self.polys, lambda signs: eval_signs(self.body, signs),
                             max_depth=self.limits.max_depth, feasible=oracle)
        if not isinstance(res, (TrueF, FalseF)):
            raise AssertionError("sign matrix at a point left a residual condition")
        return isinstance(res, TrueF)

    def run(self) -> Formula:
        if not any(mpoly.involves(p, 0) for p in self.polys):
            return self.body
        proj = self.projection()
        points = merge_roots(isolate_roots(u) for u in proj)
        bounds = [None] + points + [None]
        cells = []  # (is_point, sample RealAlg, truth)
        for k in range(len(points) + 1):
            x = SignCell("interval", bounds[k], bounds[k + 1]).sample()
            cells.append((False, x, self._decide_at_rational(x.rat)))
            if k < len(points):
                cells.append((True, points[k], self._decide_at(points[k])))
        truths = {t for _, _, t in cells}
        if truths == {True}:
            return TRUE
        if truths == {False}:
            return FALSE
        return describe_cells(proj, cells, self.v)


def describe_cells(proj: list, cells: list, v: int) -> Formula:
    """A sign-condition formula in variable v over ``proj`` (UPolys) true exactly
    on the true cells; ``cells`` lists (is_point, sample, truth) left to right
    for the decomposition by the roots of ``proj``."""
    family = list(proj)
    vectors = [_vector(family, c) for c in cells]
    clash = {}
    for vec, (_, _, t) in zip(vectors, cells):
        if clash.setdefault(vec, t) != t:
            break
    else:
        return _minimise(family, vectors, [t for _, _, t in cells], v)
    # sign conditions over a derivative-closed family cut out single cells
    for u in proj:
        d = u.derivative()
        while d.degree >= 1:
            d = d.primitive()
            if d not in family:
                family.append(d)
            d = d.derivative()
    extra = merge_roots(isolate_roots(u) for u in family)
    fine = []
    bounds = [None] + extra + [None]
    for k in range(len(extra) + 1):
        x = SignCell("interval", bounds[k], bounds[k + 1]).sample()
        fine.append((False, x, _truth_of(cells, x)))
        if k < len(extra):
            fine.append((True, extra[k], _truth_of(cells, extra[k])))
    vectors = [_vector(family, c) for c in fine]
    return _minimise(family, vectors, [t for _, _, t in fine], v)


def _truth_of(cells: list, x: RealAlg) -> bool:
    last = None
    for is_pt, a, t in cells:
        if is_pt:
            order = ralg_cmp(x, a)
            if order is Ordering.EQ:
                return t
            if order is Ordering.LT:
                return last
        else:
            last = t
    return last


def _vector(family: list, cell) -> tuple:
    _, a, _ = cell
    return tuple(sign_at(u, a) for u in family)


def _minimise(family: list, vectors: list, truths: list, v: int) -> Formula:
    false_vecs = {vec for vec, t in zip(vectors, truths) if not t}

    def hits_false(allowed):
        return any(all(vec[i] in allowed[i] for i in range(len(family)))
                   for vec in false_vecs)

    conjs = []
    for vec, t in zip(vectors, truths):
        if not t:
            continue
        if any(all(vec[i] in c[i] for i in range(len(family))) for c in conjs):
            continue
        allowed = [frozenset((s,)) for s in vec]
        for i in reversed(range(len(family))):
            trial = list(allowed)
            trial[i] = frozenset((-1, 0, 1))
            if not hits_false(trial):
                allowed = trial
                continue
            for extra in (-1, 0, 1):
                if extra in allowed[i]:
                    continue
                trial = list(allowed)
                trial[i] = allowed[i] | {extra}
                if not hits_false(trial):
                    allowed = trial
        conjs.append(allowed)
    out = []
    for allowed in conjs:
        atoms_ = [_sign_set_atom(mpoly.from_upoly(u, v), ok)
                  for u, ok in zip(family, allowed) if len(ok) < 3]
        out.append(conj(*atoms_))
    return disj(*out)




def _check_limits(paf: PolyAtomForm, limits: Limits) -> None:
    from .formula import atoms as all_atoms
    ats = all_atoms(paf.formula)
    if len(ats) > limits.max_atoms:
        raise ResourceLimit(f"formula has {len(ats)} atoms, limit is {limits.max_atoms}")
    for a in ats:
        d = mpoly.total_degree(a.poly)
        if d > limits.max_degree:
            raise ResourceLimit(f"atom of total degree {d} exceeds limit {limits.max_degree}")


def _order_for(f: Formula, order: Sequence[str] | None) -> tuple:
    return default_order(f, order or sorted(free_vars(f)))


def qe_paf(f: Formula, order: Sequence[str] | None = None,
           limits: Limits = DEFAULT_LIMITS, normalise: bool = True) -> PolyAtomForm:
    """Quantifier-free equivalent of f as a PolyAtomForm."""
    f = rename_apart(f)
    order = _order_for(f, order)
    paf = to_poly_atoms(f, order)
    _check_limits(paf, limits)
    with _deep_recursion():
        out = _QE(order, limits).run(paf.formula)
    if normalise:
        out = normalise_qf(out, order)
    return PolyAtomForm(out, order)


def qe(f: Formula, order: Sequence[str] | None = None,
       limits: Limits = DEFAULT_LIMITS) -> Formula:
    """Quantifier-free formula equivalent to f over the real closed fields."""
    return from_poly_atoms(qe_paf(f, order, limits))


def _merge_conj(c: list) -> list | None:
    """One atom per polynomial (up to a constant factor); None if contradictory."""
    allowed: dict = {}
    for a in c:
        key, k = mpoly.normalize(a.poly)
        ok = frozenset(s for s in (-1, 0, 1) if sign_holds(s * k, a.rel))
        allowed[key] = allowed.get(key, frozenset((-1, 0, 1))) & ok
    out = []
    for key, ok in allowed.items():
        if not ok:
            return None
        if len(ok) == 3:
            continue
        out.append(_sign_set_atom(key, ok))
    return out


def _sign_set_atom(p, ok: frozenset) -> PAtom:
    p = mpoly.primitive(p)
    if ok == {1}:
        return PAtom(p, ">")
    if ok == {-1}:
        return PAtom(mpoly.neg(p), ">")
    if ok == {0}:
        return PAtom(p, "=")
    if ok == {0, 1}:
        return PAtom(p, ">=")
    if ok == {0, -1}:
        return PAtom(mpoly.neg(p), ">=")
    return PAtom(p, "!=")


def normalise_qf(f: Formula, order: Sequence[str]) -> Formula:
    """Disjunction of consistent sign-condition conjunctions, pruned."""
    d = dnf(f)
    if d is None:
        return f
    d = [m for m in (_merge_conj(c) for c in d) if m is not None]
    used = set()
    for c in d:
        for a in c:
            used |= mpoly.variables(a.poly)
    if len(used) == 1 and d:
        (v,) = used
        return _univariate_canonical(d, v)
    elif not used:
        d = [c for c in d if all(isinstance(mk_patom(a.poly, a.rel), TrueF) for a in c)]
    # drop conjunctions subsumed by a weaker one
    sets = [frozenset(c) for c in d]
    keep = []
    for k, s in enumerate(sets):
        if any((t < s) or (t == s and j < k) for j, t in enumerate(sets)):
            continue
        keep.append(d[k])
    return disj(*(conj(*c) for c in keep))


def _univariate_canonical(d: list, v: int) -> Formula:
    """Rewrite a one-variable DNF from the cells of its polynomials."""
    family: list[UPoly] = []
    for c in d:
        for a in c:
            u = mpoly.to_upoly(a.poly, v).squarefree().primitive()
            if u.degree >= 1 and u not in family:
                family.append(u)
    family.sort(key=lambda u: (u.degree, u.coeffs))
    points = merge_roots(isolate_roots(u) for u in family)
    bounds = [None] + points + [None]
    cells = []

    def truth(a: RealAlg) -> bool:
        return any(all(sign_holds(sign_at(mpoly.to_upoly(x.poly, v), a), x.rel) for x in c)
                   for c in d)

    for k in range(len(points) + 1):
        x = SignCell("interval", bounds[k], bounds[k + 1]).sample()
        cells.append((False, x, truth(x)))
        if k < len(points):
            cells.append((True, points[k], truth(points[k])))
    truths = {t for _, _, t in cells}
    if truths == {True}:
        return TRUE
    if truths == {False}:
        return FALSE
    return describe_cells(family, cells, v)


def _conj_feasible_univariate(c: list, v: int) -> bool:
    if not c:
        return True
    polys = [mpoly.to_upoly(a.poly, v) for a in c]
    table = sign_table(polys)
    for cell in table.cells:
        if all(sign_holds(s, a.rel) for s, a in zip(cell.signs, c)):
            return True
    return False


# -- public operations ---------------------------------------------------------------

def _strip_outer(f: Formula, var: str) -> Formula:
    """Remove the binding of var from the outermost existential block."""
    if isinstance(f, Exists):
        if f.var == var:
            return f.body
        return Exists(f.var, _strip_outer(f.body, var))
    return f


def eliminate(f: Formula, var: str, limits: Limits = DEFAULT_LIMITS,
              order: Sequence[str] | None = None) -> Formula:
    """Quantifier-free formula without ``var`` equivalent to ``exists var. f``."""
    body = _strip_outer(f, var)
    target = Exists(var, body) if var in free_vars(body) else body
    return qe(target, order, limits)


def decide_sentence(f: Formula, limits: Limits = DEFAULT_LIMITS) -> bool:
    fv = free_vars(f)
    if fv:
        raise NotClosed(f"sentence has free variables {sorted(fv)}")
    out = qe_paf(f, None, limits).formula
    if isinstance(out, TrueF):
        return True
    if isinstance(out, FalseF):
        return False
    raise AssertionError(f"closed formula did not reduce to a truth value: {out}")


def decide_with_params(f: Formula, assignment: Mapping[str, object],
                       limits: Limits = DEFAULT_LIMITS) -> bool:
    fv = free_vars(f)
    missing = fv - set(assignment)
    if missing:
        raise MissingAssignment(f"no value for {sorted(missing)}")
    vals = {k: _as_realalg(v) for k, v in assignment.items() if k in fv}
    if all(v.rat is not None for v in vals.values()):
        closed = substitute_many(f, {k: Const(v.rat) for k, v in vals.items()})
        return decide_sentence(closed, limits)
    qf = f if is_quantifier_free(f) else qe(f, sorted(fv), limits)
    return eval_at_point(qf, vals)


def _as_realalg(v) -> RealAlg:
    if isinstance(v, RealAlg):
        return v
    return RealAlg.from_rational(v)


def eval_at_point(f: Formula, values: Mapping[str, RealAlg]) -> bool:
    """Truth of a quantifier-free formula at a point with real algebraic coordinates."""
    if isinstance(f, Atom):
        names = sorted(values)
        index = {n: k for k, n in enumerate(names)}
        p = mpoly.sub(term_to_poly(f.lhs, index), term_to_poly(f.rhs, index))
        return sign_holds(poly_sign_at(p, names, values), f.rel)
    if isinstance(f, TrueF):
        return True
    if isinstance(f, FalseF):
        return False
    if isinstance(f, And):
        return all(eval_at_point(a, values) for a in f.args)
    if isinstance(f, Or):
        return any(eval_at_point(a, values) for a in f.args)
    if isinstance(f, Not):
        return not eval_at_point(f.arg, values)
    raise TypeError("formula is not quantifier-free")


def poly_sign_at(p, names: Sequence[str], values: Mapping[str, RealAlg]) -> int:
    """Sign of a recursive dense polynomial at an algebraic point."""
    rats = {k: values[n].rat for k, n in enumerate(names) if values[n].rat is not None}
    p = mpoly.evaluate(p, rats)
    if mpoly.is_const(p):
        return (p > 0) - (p < 0)
    rest = sorted(mpoly.variables(p))
    if len(rest) == 1:
        (k,) = rest
        return sign_at(mpoly.to_upoly(p, k), values[names[k]])
    if len(rest) == 2:
        return _pair_sign(p, rest[0], values[names[rest[0]]], rest[1], values[names[rest[1]]])
    return ralg_sign(_poly_value(p, names, values))


def _iadd(u, v):
    return u[0] + v[0], u[1] + v[1]


def _imul(u, v):
    prods = (u[0] * v[0], u[0] * v[1], u[1] * v[0], u[1] * v[1])
    return min(prods), max(prods)


def _interval_value(p, box) -> tuple:
    """Interval Horner enclosure of p over a box {var index: (lo, hi)}."""
    if mpoly.is_const(p):
        return p, p
    i, cs = p
    acc = (Fraction(0), Fraction(0))
    for c in reversed(cs):
        acc = _iadd(_imul(acc, box[i]), _interval_value(c, box))
    return acc


def _value_annihilator(p, i: int, a: RealAlg, j: int, b: RealAlg) -> UPoly:
    """Nonzero R with R(p(b', a')) = 0 for all conjugates a' of a and b' of b."""
    q = mpoly.rename(p, {i: 0, j: 1})
    cols = [UPoly((c,)) if mpoly.is_const(c) else mpoly.to_upoly(c, 1)
            for c in mpoly.coeff_list(q, 0)]
    ma = [UPoly((c,)) for c in a.poly.coeffs]
    degree = a.poly.degree * b.poly.degree
    pts = []
    for v in range(degree + 1):
        shifted = [cols[0] - v] + cols[1:]
        pts.append((Fraction(v), resultant(b.poly, bivariate_resultant(ma, shifted))))
    return interpolate(pts)


def _pair_sign(p, i: int, a: RealAlg, j: int, b: RealAlg) -> int:
    """Sign of p at two irrational coordinates.

    Interval enclosures settle every nonzero value; a zero is certified by an
    annihilating polynomial with a single root, namely 0, in the enclosure.
    """
    R = None
    step = Fraction(1)
    while True:
        lo, hi = _interval_value(p, {i: a.interval, j: b.interval})
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        if R is None and hi - lo < 1:
            R = _value_annihilator(p, i, a, j, b).squarefree()
        if R is not None and R(0) == 0:
            lo, hi = lo - step, hi + step
            if R(lo) != 0 and R(hi) != 0 and count_roots(R, lo, hi) == 1:
                return 0
        step /= 2
        a.refine()
        b.refine()


def _poly_value(p, names, values) -> RealAlg:
    if mpoly.is_const(p):
        return RealAlg.from_rational(p)
    i, cs = p
    x = values[names[i]]
    acc = RealAlg.from_rational(0)
    for c in reversed(cs):
        acc = ralg_add(ralg_mul(acc, x), _poly_value(c, names, values))
    return acc
