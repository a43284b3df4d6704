"""Points and constructible subsets of the real spectrum of Q[x].

A representable point is a closed point (a real algebraic number), a cut
immediately to the left or right of one, or one of the two infinite points.
A constructible set is stored as a sign-invariant decomposition of the line:
breakpoints ``b_1 < ... < b_k`` and a membership flag for each of the
``2k + 1`` cells ``(-inf, b_1), {b_1}, (b_1, b_2), ..., {b_k}, (b_k, +inf)``.
Cuts at ``b_i`` belong to the adjacent open cell and the infinite points to
the unbounded cells, so the flags determine membership of every point.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from . import mpoly
from .decide import DEFAULT_LIMITS, Limits, eliminate, qe_paf, SignCell, eval_signs, patoms
from .errors import PreconditionError
from .exactnum import Ordering, RealAlg, isolate_roots, ralg_cmp, sign_at
from .formula import (
    FALSE, TRUE, Atom, Const, Formula, Var, conj, disj, free_vars, poly_to_term,
)
from .upoly import UPoly

CLOSED, LEFT, RIGHT, MINUS_INF, PLUS_INF = "closed", "left_cut", "right_cut", "minus_inf", "plus_inf"
_KINDS = (CLOSED, LEFT, RIGHT, MINUS_INF, PLUS_INF)


def _ralg(v) -> RealAlg:
    return v if isinstance(v, RealAlg) else RealAlg.from_rational(v)


@dataclass(frozen=True, eq=False)
class SperPoint1:
    kind: str
    value: RealAlg | None = None

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise ValueError(f"unknown point kind {self.kind!r}")
        if (self.value is None) != (self.kind in (MINUS_INF, PLUS_INF)):
            raise ValueError("closed points and cuts carry a value, infinite points do not")
        if self.value is not None and not isinstance(self.value, RealAlg):
            object.__setattr__(self, "value", _ralg(self.value))

    def __eq__(self, other) -> bool:
        if not isinstance(other, SperPoint1):
            return NotImplemented
        if self.kind != other.kind:
            return False
        return self.value is None or ralg_cmp(self.value, other.value) is Ordering.EQ

    __hash__ = None

    def __repr__(self) -> str:
        if self.value is None:
            return self.kind.replace("_", "")
        return f"{self.kind}({self.value})"


def Closed(a) -> SperPoint1:
    return SperPoint1(CLOSED, _ralg(a))


def LeftCut(a) -> SperPoint1:
    return SperPoint1(LEFT, _ralg(a))


def RightCut(a) -> SperPoint1:
    return SperPoint1(RIGHT, _ralg(a))


MinusInf = SperPoint1(MINUS_INF)
PlusInf = SperPoint1(PLUS_INF)


# -- cones and supports ----------------------------------------------------------

@dataclass(frozen=True)
class SupportIdeal:
    """The zero ideal, or the ideal generated by a square-free polynomial."""
    generator: UPoly | None = None

    @property
    def is_zero(self) -> bool:
        return self.generator is None

    def contains(self, p: UPoly) -> bool:
        if self.generator is None:
            return p.is_zero()
        return (p % self.generator).is_zero()


def supp(pt: SperPoint1) -> SupportIdeal:
    if pt.kind != CLOSED:
        return SupportIdeal()
    return SupportIdeal(pt.value.defining)


def point_sign(pt: SperPoint1, p: UPoly) -> int:
    """Sign of p at a point; at a cut this is the sign just beside the base
    point, read off from the first derivative not vanishing there."""
    if p.is_zero():
        return 0
    if pt.kind == PLUS_INF:
        return 1 if p.lc > 0 else -1
    if pt.kind == MINUS_INF:
        s = 1 if p.lc > 0 else -1
        return s if p.degree % 2 == 0 else -s
    s = sign_at(p, pt.value)
    if pt.kind == CLOSED or s != 0:
        return s
    q, k = p, 0
    while s == 0:
        q = q.derivative()
        k += 1
        s = sign_at(q, pt.value)
    if pt.kind == LEFT and k % 2:
        s = -s
    return s


def cone_contains(pt: SperPoint1, p: UPoly) -> bool:
    """p belongs to the cone of pt, i.e. p is nonnegative there."""
    return point_sign(pt, p) >= 0


def cone_axioms_spotcheck(pt: SperPoint1, sample: Sequence[UPoly]) -> bool:
    """Check the cone conditions of pt on a finite sample of polynomials.

    Closure of the cone under sums and products, 0 in the cone, totality
    (p or -p in the cone) and that p, -p both in the cone forces p into the
    support.
    """
    polys = [UPoly()] + list(sample)
    inside = [p for p in polys if cone_contains(pt, p)]
    if not cone_contains(pt, UPoly()):
        return False
    for p in inside:
        for q in inside:
            if not cone_contains(pt, p + q) or not cone_contains(pt, p * q):
                return False
    ideal = supp(pt)
    for p in polys:
        pos, neg = cone_contains(pt, p), cone_contains(pt, -p)
        if not (pos or neg):
            return False
        if pos and neg and not (point_sign(pt, p) == 0 and ideal.contains(p)):
            return False
    return True


class ConeOrder(enum.Enum):
    LE = "LE"
    GE = "GE"
    EQ = "EQ"
    INCOMPARABLE = "INCOMPARABLE"


def coefficient_cone_compare(p: UPoly, q: UPoly) -> ConeOrder:
    """Compare in the partial order whose cone is the polynomials with
    nonnegative coefficients."""
    d = q - p
    le = all(c >= 0 for c in d.coeffs)
    ge = all(c <= 0 for c in d.coeffs)
    if le and ge:
        return ConeOrder.EQ
    if le:
        return ConeOrder.LE
    if ge:
        return ConeOrder.GE
    return ConeOrder.INCOMPARABLE


def specializes(a: SperPoint1, b: SperPoint1) -> bool:
    """a specializes to b: equal points, or a cut next to the closed point b."""
    if a == b:
        return True
    return (a.kind in (LEFT, RIGHT) and b.kind == CLOSED
            and ralg_cmp(a.value, b.value) is Ordering.EQ)


# -- constructible sets --------------------------------------------------------------

class CellSet:
    """A canonical constructible subset of the real spectrum of Q[x]."""

    __slots__ = ("breakpoints", "membership")

    def __init__(self, breakpoints: Sequence[RealAlg] = (), membership: Sequence[bool] = (False,)):
        bps = [_ralg(b) for b in breakpoints]
        mem = [bool(m) for m in membership]
        if len(mem) != 2 * len(bps) + 1:
            raise PreconditionError("membership must have 2k+1 entries for k breakpoints")
        for a, b in zip(bps, bps[1:]):
            if ralg_cmp(a, b) is not Ordering.LT:
                raise PreconditionError("breakpoints must be strictly increasing")
        bps, mem = _canonical(bps, mem)
        object.__setattr__(self, "breakpoints", tuple(bps))
        object.__setattr__(self, "membership", tuple(mem))

    def __setattr__(self, name, value):
        raise AttributeError("CellSet is immutable")

    @classmethod
    def empty(cls) -> "CellSet":
        return cls((), (False,))

    @classmethod
    def everything(cls) -> "CellSet":
        return cls((), (True,))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CellSet):
            return NotImplemented
        return (self.membership == other.membership
                and len(self.breakpoints) == len(other.breakpoints)
                and all(ralg_cmp(a, b) is Ordering.EQ
                        for a, b in zip(self.breakpoints, other.breakpoints)))

    __hash__ = None

    def __repr__(self) -> str:
        return f"CellSet({describe(self)})"

    def is_empty(self) -> bool:
        return not any(self.membership)

    def cells(self) -> list:
        """(kind, lower, upper, member) for each cell, left to right."""
        out = []
        bounds = [None, *self.breakpoints, None]
        for k in range(len(self.breakpoints) + 1):
            out.append(("interval", bounds[k], bounds[k + 1], self.membership[2 * k]))
            if k < len(self.breakpoints):
                out.append(("point", bounds[k + 1], bounds[k + 1], self.membership[2 * k + 1]))
        return out

    def sample_points(self) -> list[SperPoint1]:
        """Representable points derived from the breakpoints: each breakpoint
        with its two cuts, a rational point inside each open cell and the two
        infinite points."""
        pts = [MinusInf]
        for kind, lo, hi, _ in self.cells():
            if kind == "point":
                pts += [LeftCut(lo), Closed(lo), RightCut(lo)]
            else:
                pts.append(Closed(SignCell("interval", lo, hi).sample()))
        pts.append(PlusInf)
        return pts


def _canonical(bps: list, mem: list) -> tuple[list, list]:
    i = 0
    while i < len(bps):
        if mem[2 * i] == mem[2 * i + 1] == mem[2 * i + 2]:
            del bps[i]
            del mem[2 * i:2 * i + 2]
        else:
            i += 1
    return bps, mem


def _merge(sets: Sequence[CellSet]) -> tuple[list, list]:
    """Common refinement: merged breakpoints and, per set, the index of each
    merged breakpoint in that set (or None)."""
    merged: list[RealAlg] = []
    owners: list[dict] = []
    for si, s in enumerate(sets):
        out, own = [], []
        i = j = 0
        bps = s.breakpoints
        while i < len(merged) or j < len(bps):
            if j >= len(bps):
                order = Ordering.LT
            elif i >= len(merged):
                order = Ordering.GT
            else:
                order = ralg_cmp(merged[i], bps[j])
            if order is Ordering.LT:
                out.append(merged[i])
                own.append(owners[i])
                i += 1
            elif order is Ordering.GT:
                out.append(bps[j])
                own.append({si: j})
                j += 1
            else:
                out.append(merged[i])
                own.append({**owners[i], si: j})
                i += 1
                j += 1
        merged, owners = out, own
    return merged, owners


def _refined_membership(sets: Sequence[CellSet]) -> tuple[list, list[list[bool]]]:
    merged, owners = _merge(sets)
    rows = []
    for si, s in enumerate(sets):
        row = []
        seen = 0  # breakpoints of s at or left of the current position
        for k in range(len(merged) + 1):
            row.append(s.membership[2 * seen])
            if k < len(merged):
                j = owners[k].get(si)
                if j is None:
                    row.append(s.membership[2 * seen])
                else:
                    row.append(s.membership[2 * j + 1])
                    seen = j + 1
        rows.append(row)
    return merged, rows


def combine(fn, *sets: CellSet) -> CellSet:
    """Apply a boolean function cellwise to several sets."""
    merged, rows = _refined_membership(sets)
    return CellSet(merged, [fn(*flags) for flags in zip(*rows)])


def union(a: CellSet, b: CellSet) -> CellSet:
    return combine(lambda x, y: x or y, a, b)


def intersect(a: CellSet, b: CellSet) -> CellSet:
    return combine(lambda x, y: x and y, a, b)


def difference(a: CellSet, b: CellSet) -> CellSet:
    return combine(lambda x, y: x and not y, a, b)


def complement(a: CellSet) -> CellSet:
    return CellSet(a.breakpoints, [not m for m in a.membership])


def is_subset(a: CellSet, b: CellSet) -> bool:
    return difference(a, b).is_empty()


def closure(s: CellSet) -> CellSet:
    """Add every closed point that is a specialization of a member."""
    mem = list(s.membership)
    for i in range(len(s.breakpoints)):
        mem[2 * i + 1] = mem[2 * i] or mem[2 * i + 1] or mem[2 * i + 2]
    return CellSet(s.breakpoints, mem)


def contains(s: CellSet, pt: SperPoint1) -> bool:
    if pt.kind == MINUS_INF:
        return s.membership[0]
    if pt.kind == PLUS_INF:
        return s.membership[-1]
    k = 0
    for i, b in enumerate(s.breakpoints):
        order = ralg_cmp(pt.value, b)
        if order is Ordering.LT:
            return s.membership[2 * i]
        if order is Ordering.EQ:
            if pt.kind == CLOSED:
                return s.membership[2 * i + 1]
            return s.membership[2 * i] if pt.kind == LEFT else s.membership[2 * i + 2]
        k = i + 1
    return s.membership[2 * k]


def boundary_diagnostic(s: CellSet, pt: SperPoint1) -> str | None:
    """A note when pt is a closed point whose membership differs from one of
    its cuts, i.e. pt sits on the boundary of s."""
    if pt.kind != CLOSED:
        return None
    here = contains(s, pt)
    left, right = contains(s, LeftCut(pt.value)), contains(s, RightCut(pt.value))
    if here == left == right:
        return None
    word = "in" if here else "not in"
    sides = [name for name, v in (("left", left), ("right", right)) if v != here]
    return (f"closed point {pt.value} is {word} the set while its {' and '.join(sides)} "
            f"cut{'s are' if len(sides) > 1 else ' is'} {'not ' if here else ''}in it")


# -- constructing sets -------------------------------------------------------------------

def from_sign_condition(polys: Sequence[UPoly], test) -> CellSet:
    """The set of points where ``test(signs)`` holds, signs being the tuple of
    signs of ``polys``."""
    polys = [p if isinstance(p, UPoly) else UPoly(p) for p in polys]
    from .decide import merge_roots
    points = merge_roots(isolate_roots(p) for p in polys if not p.is_zero())
    bounds = [None, *points, None]
    mem = []
    for k in range(len(points) + 1):
        x = SignCell("interval", bounds[k], bounds[k + 1]).sample()
        mem.append(bool(test(tuple(sign_at(p, x) for p in polys))))
        if k < len(points):
            mem.append(bool(test(tuple(sign_at(p, points[k]) for p in polys))))
    return CellSet(points, mem)


def basic_open(polys: Sequence[UPoly]) -> CellSet:
    """D(p_1, ..., p_n): every p_i strictly positive."""
    polys = list(polys)
    if not polys:
        raise PreconditionError("basic_open needs at least one polynomial")
    return from_sign_condition(polys, lambda signs: all(s > 0 for s in signs))


def nonneg(p: UPoly) -> CellSet:
    """P(p) = {p >= 0}, the complement of D(-p)."""
    return complement(basic_open([-p]))


def pullback_basic_open(image_polys: Sequence[UPoly], g: UPoly) -> CellSet:
    """Preimage of D(r_1, ..., r_n) under the map induced by u -> g(x)."""
    return basic_open([r.compose(g) for r in image_polys])


def from_formula(f: Formula, var: str | None = None,
                 limits: Limits = DEFAULT_LIMITS) -> CellSet:
    """Points satisfying a formula with at most one free variable."""
    fv = free_vars(f)
    if var is None:
        if len(fv) > 1:
            raise PreconditionError(f"expected one free variable, found {sorted(fv)}")
        var = next(iter(fv), "x")
    elif fv - {var}:
        raise PreconditionError(f"unexpected free variables {sorted(fv - {var})}")
    paf = qe_paf(f, [var], limits)
    body = paf.formula
    idx = paf.order.index(var)
    polys = [a.poly for a in patoms(body)]
    ups = [mpoly.to_upoly(p, idx) for p in polys]
    return from_sign_condition(ups, lambda signs: eval_signs(body, dict(zip(polys, signs))))


def project(f: Formula, x: str = "x", y: str = "y",
            limits: Limits = DEFAULT_LIMITS) -> CellSet:
    """Image of the set defined by f(x, y) under (x, y) -> x."""
    extra = free_vars(f) - {x, y}
    if extra:
        raise PreconditionError(f"unexpected free variables {sorted(extra)}")
    return from_formula(eliminate(f, y, limits), x, limits)


# -- back to formulas ------------------------------------------------------------------

def _poly_term(u: UPoly, var: str):
    return poly_to_term(mpoly.from_upoly(u, 0), [var])


def _cmp_formula(var: str, b: RealAlg, rel: str) -> Formula:
    """x rel b for rel in {=, >, <, >=, <=}, with b given by its isolating data."""
    x = Var(var)
    if b.rat is not None:
        return Atom(x, rel, Const(b.rat))
    if rel in (">=", "<="):
        return disj(_cmp_formula(var, b, "="), _cmp_formula(var, b, rel[0]))
    u = b.defining
    lo, hi = b.interval
    inside = conj(Atom(x, ">", Const(lo)), Atom(x, "<", Const(hi)))
    ut = _poly_term(u, var)
    if rel == "=":
        return conj(Atom(ut, "=", Const(Fraction(0))), inside)
    if rel == ">":
        s = u.sign_at(hi)
        return disj(Atom(x, ">=", Const(hi)),
                    conj(inside, Atom(ut, ">" if s > 0 else "<", Const(Fraction(0)))))
    s = u.sign_at(lo)
    return disj(Atom(x, "<=", Const(lo)),
                conj(inside, Atom(ut, ">" if s > 0 else "<", Const(Fraction(0)))))


def to_formula(s: CellSet, var: str = "x") -> Formula:
    """A quantifier-free formula defining s; algebraic breakpoints are pinned
    down by their defining polynomial and isolating interval."""
    runs = []
    cells = s.cells()
    k = 0
    while k < len(cells):
        if not cells[k][3]:
            k += 1
            continue
        start = k
        while k + 1 < len(cells) and cells[k + 1][3]:
            k += 1
        runs.append((cells[start], cells[k]))
        k += 1
    parts = []
    for first, last in runs:
        conds = []
        kind, lo, _, _ = first
        if kind == "point":
            conds.append(_cmp_formula(var, lo, ">="))
        elif lo is not None:
            conds.append(_cmp_formula(var, lo, ">"))
        kind, _, hi, _ = last
        if kind == "point":
            if first is last:
                conds = [_cmp_formula(var, hi, "=")]
            else:
                conds.append(_cmp_formula(var, hi, "<="))
        elif hi is not None:
            conds.append(_cmp_formula(var, hi, "<"))
        parts.append(conj(*conds) if conds else TRUE)
    return disj(*parts) if parts else FALSE


def describe(s: CellSet) -> str:
    """Human-readable interval notation, e.g. ``(-inf, -1) U [0, 1]``."""
    if not s.breakpoints:
        return "R" if s.membership[0] else "{}"
    pieces = []
    cells = s.cells()
    k = 0
    while k < len(cells):
        if not cells[k][3]:
            k += 1
            continue
        start = k
        while k + 1 < len(cells) and cells[k + 1][3]:
            k += 1
        a, b = cells[start], cells[k]
        if a is b and a[0] == "point":
            pieces.append("{" + str(a[1]) + "}")
        else:
            left = "(-inf" if a[1] is None else ("[" if a[0] == "point" else "(") + str(a[1])
            right = "+inf)" if b[2] is None else str(b[2]) + ("]" if b[0] == "point" else ")")
            pieces.append(f"{left}, {right}")
        k += 1
    return " U ".join(pieces) if pieces else "{}"
