"""Sections of the structure sheaf over constructible subsets of Sper Q[x].

A section is described by a domain (a :class:`~sperkit.sper.CellSet`) and a
formula ``phi`` in the value variable ``T`` and the point variable ``x``
that has exactly one solution ``T`` at every point of the domain.  Ring
operations, inverse, square root and extension by zero build new formulas
from old ones; evaluation and every check reduce to the decision procedure.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction

from . import mpoly
from .decide import (
    DEFAULT_LIMITS, Limits, _OneParameter, decide_sentence, eval_at_point, merge_roots,
    patoms, qe, qe_paf,
)
from .errors import (
    DomainMismatch, DomainNotContained, InvalidSection, NegativeSection,
    PointNotInDomain, VanishingSection,
)
from .exactnum import RealAlg, isolate_roots
from .formula import (
    Add, Atom, Const, Exists, Forall, Formula, Mul, Neg, Not, Pow, Var, conj, disj,
    fresh_name, all_vars, free_vars, implies, poly_to_term, substitute,
)
from .sper import (
    Closed, CellSet, contains, from_formula, intersect, is_subset, to_formula,
)
from .upoly import UPoly, bivariate_resultant

_ZERO = Const(Fraction(0))


@dataclass(eq=False)
class SectionDesc:
    """A candidate section: the unique T with ``phi(T, x)`` on ``domain``.

    ``validated`` is set by :func:`validate` (and by constructors whose
    uniqueness is built in).  The quantifier-free form of ``phi`` is cached.
    """
    domain: CellSet
    phi: Formula
    validated: bool = False
    var: str = "x"
    tvar: str = "T"
    _qf: object = field(default=None, repr=False)

    def __post_init__(self):
        extra = free_vars(self.phi) - {self.var, self.tvar}
        if extra:
            raise InvalidSection(f"section formula has unexpected free variables {sorted(extra)}")

    def chi(self) -> Formula:
        return to_formula(self.domain, self.var)

    def qf(self, limits: Limits = DEFAULT_LIMITS):
        """phi without quantifiers, as a PolyAtomForm over (T, x)."""
        if self._qf is None:
            self._qf = qe_paf(self.phi, [self.tvar, self.var], limits)
        return self._qf


def _names(*sections: SectionDesc) -> set:
    out = set()
    for s in sections:
        out |= set(all_vars(s.phi)) | {s.var, s.tvar}
    return out


def _aligned(s: SectionDesc, var: str, tvar: str) -> Formula:
    """phi of s expressed in the given variable names."""
    phi = s.phi
    if s.var != var or s.tvar != tvar:
        tmp = fresh_name("_t", _names(s) | {var, tvar})
        phi = substitute(phi, s.tvar, Var(tmp))
        phi = substitute(phi, s.var, Var(var))
        phi = substitute(phi, tmp, Var(tvar))
    return phi


def _require(*sections: SectionDesc) -> None:
    for s in sections:
        if not s.validated:
            raise InvalidSection("section has not been validated")


# -- construction --------------------------------------------------------------

def section_from_poly(p: UPoly, domain: CellSet, var: str = "x", tvar: str = "T") -> SectionDesc:
    """The section x -> p(x); uniqueness of T is syntactic."""
    term = poly_to_term(mpoly.from_upoly(p, 0), [var])
    phi = Atom(Add(Var(tvar), Neg(term)), "=", _ZERO)
    return SectionDesc(domain, phi, True, var, tvar)


def constant_section(c, domain: CellSet, var: str = "x", tvar: str = "T") -> SectionDesc:
    return section_from_poly(UPoly((c,)), domain, var, tvar)


def validate(s: SectionDesc, limits: Limits = DEFAULT_LIMITS) -> bool:
    """Decide that phi has exactly one solution T at every point of the domain;
    sets ``s.validated`` accordingly."""
    x, t = s.var, s.tvar
    other = fresh_name("S", _names(s))
    unique = Forall(other, implies(substitute(s.phi, t, Var(other)),
                                   Atom(Var(other), "=", Var(t))))
    sentence = Forall(x, implies(s.chi(), Exists(t, conj(s.phi, unique))))
    s.validated = decide_sentence(sentence, limits)
    return s.validated


def restrict(s: SectionDesc, domain: CellSet) -> SectionDesc:
    _require(s)
    return SectionDesc(intersect(s.domain, domain), s.phi, True, s.var, s.tvar)


# -- ring operations ---------------------------------------------------------------

def _binary(a: SectionDesc, b: SectionDesc, combine) -> SectionDesc:
    _require(a, b)
    if a.domain != b.domain:
        raise DomainMismatch("sections have different domains; restrict them first")
    x, t = a.var, a.tvar
    avoid = _names(a, b)
    X = fresh_name("X", avoid)
    Y = fresh_name("Y", avoid | {X})
    body = conj(Atom(Var(t), "=", combine(Var(X), Var(Y))),
                substitute(_aligned(a, x, t), t, Var(X)),
                substitute(_aligned(b, x, t), t, Var(Y)))
    return SectionDesc(a.domain, Exists(X, Exists(Y, body)), True, x, t)


def sec_add(a: SectionDesc, b: SectionDesc) -> SectionDesc:
    return _binary(a, b, lambda X, Y: Add(X, Y))


def sec_mul(a: SectionDesc, b: SectionDesc) -> SectionDesc:
    return _binary(a, b, lambda X, Y: Mul(X, Y))


def sec_neg(a: SectionDesc) -> SectionDesc:
    _require(a)
    return SectionDesc(a.domain, substitute(a.phi, a.tvar, Neg(Var(a.tvar))), True, a.var, a.tvar)


def _holds_everywhere(s: SectionDesc, cond: Formula, limits: Limits) -> bool:
    """forall x (chi(x) -> forall T (phi -> cond))"""
    sentence = Forall(s.var, implies(s.chi(), Forall(s.tvar, implies(s.phi, cond))))
    return decide_sentence(sentence, limits)


def sec_inv(s: SectionDesc, limits: Limits = DEFAULT_LIMITS) -> SectionDesc:
    """The section 1/s, defined by exists U (T*U = 1 and phi(U))."""
    _require(s)
    t = Var(s.tvar)
    if not _holds_everywhere(s, Atom(t, "!=", _ZERO), limits):
        raise VanishingSection("the section vanishes somewhere on its domain")
    U = fresh_name("U", _names(s))
    body = conj(Atom(Mul(t, Var(U)), "=", Const(Fraction(1))), substitute(s.phi, s.tvar, Var(U)))
    return SectionDesc(s.domain, Exists(U, body), True, s.var, s.tvar)


def sec_sqrt(s: SectionDesc, limits: Limits = DEFAULT_LIMITS) -> SectionDesc:
    """The nonnegative square root, defined by T >= 0 and phi(T^2)."""
    _require(s)
    t = Var(s.tvar)
    if not _holds_everywhere(s, Atom(t, ">=", _ZERO), limits):
        raise NegativeSection("the section is negative somewhere on its domain")
    body = conj(Atom(t, ">=", _ZERO), substitute(s.phi, s.tvar, Pow(t, 2)))
    return SectionDesc(s.domain, body, True, s.var, s.tvar)


def extend_by_zero(s: SectionDesc, domain: CellSet) -> SectionDesc:
    """Extend s from its domain L to domain K by the value 0 on K minus L."""
    _require(s)
    if not is_subset(s.domain, domain):
        raise DomainNotContained("the section's domain is not contained in the new domain")
    chi = s.chi()
    t = Var(s.tvar)
    phi = disj(conj(Not(chi), Atom(t, "=", _ZERO)), conj(chi, s.phi))
    return SectionDesc(domain, phi, True, s.var, s.tvar)


# -- evaluation -----------------------------------------------------------------------

def eval_at_closed(s: SectionDesc, a, limits: Limits = DEFAULT_LIMITS) -> RealAlg:
    """The value of s at the closed point a."""
    _require(s)
    a = a if isinstance(a, RealAlg) else RealAlg.from_rational(a)
    if not contains(s.domain, Closed(a)):
        raise PointNotInDomain(f"{a} is not in the domain of the section")
    if a.rat is not None:
        at = substitute(s.phi, s.var, Const(a.rat))
        cells = from_formula(at, s.tvar, limits)
        pts = [b for kind, b, _, m in cells.cells() if m and kind == "point"]
        if len(pts) != 1 or sum(cells.membership) != 1:
            raise InvalidSection(f"no unique value at {a}")
        return pts[0]
    return _eval_algebraic(s, a, limits)


def _eval_algebraic(s: SectionDesc, a: RealAlg, limits: Limits) -> RealAlg:
    paf = s.qf(limits)
    ti, xi = paf.order.index(s.tvar), paf.order.index(s.var)
    m = [UPoly((c,)) for c in a.defining.coeffs]
    cands = []
    for atom in patoms(paf.formula):
        p = mpoly.rename(atom.poly, {ti: 0, xi: 1})
        if not mpoly.involves(p, 0):
            continue
        if not mpoly.involves(p, 1):
            cands.append(isolate_roots(mpoly.to_upoly(p, 0)))
            continue
        # coefficients in x of p, each a polynomial in T
        swapped = mpoly.rename(p, {0: 1, 1: 0})
        cols = [mpoly.to_upoly(c, 1) if not mpoly.is_const(c) else UPoly((c,))
                for c in mpoly.coeff_list(swapped, 0)]
        r = bivariate_resultant(m, cols)
        if not r.is_zero():
            cands.append(isolate_roots(r))
    qf = _as_formula(paf)
    hits = [c for c in merge_roots(cands)
            if eval_at_point(qf, {s.var: a, s.tvar: c})]
    if len(hits) != 1:
        raise InvalidSection(f"no unique value at {a}")
    return hits[0]


def _as_formula(paf) -> Formula:
    from .formula import from_poly_atoms
    return from_poly_atoms(paf)


# -- compatibility ---------------------------------------------------------------------

def _pinned(name: str, b: RealAlg):
    """(term for b, defining condition on the fresh variable name or None)."""
    if b.rat is not None:
        return Const(b.rat), None
    u = poly_to_term(mpoly.from_upoly(b.defining, 0), [name])
    lo, hi = b.interval
    cond = conj(Atom(u, "=", _ZERO), Atom(Var(name), ">", Const(lo)), Atom(Var(name), "<", Const(hi)))
    return Var(name), cond


def candidate_points(s: SectionDesc, limits: Limits = DEFAULT_LIMITS) -> list[RealAlg]:
    """Points where s can fail to be continuous: breakpoints of the domain and
    the x-projection of the atoms of phi."""
    paf = s.qf(limits)
    ti, xi = paf.order.index(s.tvar), paf.order.index(s.var)
    body = _rename_body(paf.formula, {ti: 0, xi: 1})
    proj = _OneParameter(body, 1, limits).projection() if patoms(body) else []
    return merge_roots([list(s.domain.breakpoints)] + [isolate_roots(u) for u in proj])


def _rename_body(f, mapping):
    from .decide import map_polys
    return map_polys(f, lambda p: mpoly.rename(p, mapping))


def is_compatible(s: SectionDesc, limits: Limits = DEFAULT_LIMITS) -> bool:
    """One-sided continuity with a finite limit at every closed point of the
    domain that has a cut of the domain beside it."""
    _require(s)
    for b in candidate_points(s, limits):
        if not contains(s.domain, Closed(b)):
            continue
        v = eval_at_closed(s, b, limits)
        for side in ("right", "left"):
            if not _side_in_domain(s.domain, b, side):
                continue
            if not _continuous_at(s, b, v, side, limits):
                return False
    return True


def _side_in_domain(domain: CellSet, b: RealAlg, side: str) -> bool:
    from .sper import LeftCut, RightCut
    return contains(domain, RightCut(b) if side == "right" else LeftCut(b))


def continuity_sentence(s: SectionDesc, b: RealAlg, v: RealAlg, side: str) -> Formula:
    """forall e>0 exists d>0 forall x ((x on the given side of b within d and
    x in the domain) -> exists T (phi and |T - v| < e)), with b and v pinned
    down by their isolating data when irrational."""
    avoid = _names(s)
    E = fresh_name("eps", avoid)
    D = fresh_name("delta", avoid | {E})
    Bn = fresh_name("B", avoid | {E, D})
    Vn = fresh_name("V", avoid | {E, D, Bn})
    bt, bcond = _pinned(Bn, b)
    vt, vcond = _pinned(Vn, v)
    x, t = Var(s.var), Var(s.tvar)
    e, d = Var(E), Var(D)
    if side == "right":
        near = conj(Atom(bt, "<", x), Atom(x, "<", Add(bt, d)))
    else:
        near = conj(Atom(Add(x, d), ">", bt), Atom(x, "<", bt))
    close = conj(Atom(Add(t, Neg(vt)), "<", e), Atom(Add(vt, Neg(t)), "<", e))
    inner = Forall(s.var, implies(conj(near, s.chi()), Exists(s.tvar, conj(s.phi, close))))
    body = Forall(E, implies(Atom(e, ">", _ZERO), Exists(D, conj(Atom(d, ">", _ZERO), inner))))
    for name, cond in ((Vn, vcond), (Bn, bcond)):
        if cond is not None:
            body = Exists(name, conj(cond, body))
    return body


def _continuous_at(s: SectionDesc, b: RealAlg, v: RealAlg, side: str, limits: Limits) -> bool:
    return decide_sentence(continuity_sentence(s, b, v, side), limits)
