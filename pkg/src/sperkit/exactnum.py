"""Exact arithmetic in the field of real algebraic numbers.

A :class:`RealAlg` is either a rational (the fast path) or the unique root of
a square-free rational polynomial inside an open isolating interval whose
endpoints are not roots.  Field operations build a defining polynomial from a
resultant, take its square-free part and refine the operands until exactly one
root of it lies in the interval enclosure of the result.

Irrational values are certified irrational at construction, so bisection
midpoints are never roots of the defining polynomial.
"""
from __future__ import annotations

import enum
from fractions import Fraction
from math import comb, isqrt
from typing import Iterable

from .errors import DivisionByZero, NegativeRadicand, PreconditionError, ZeroPolynomial
from .upoly import UPoly, as_rat, bivariate_resultant, count_roots, sturm_sequence


class InvalidRealAlg(PreconditionError):
    pass


class Ordering(enum.Enum):
    LT = -1
    EQ = 0
    GT = 1


def _sgn(v) -> int:
    return (v > 0) - (v < 0)


class RealAlg:
    """A real algebraic number.

    Treat instances as values.  The isolating interval may be tightened in
    place by refinement; that never changes the number denoted.
    """

    __slots__ = ("rat", "poly", "_iv", "_sturm")

    def __init__(self, rat: Fraction | None = None, poly: UPoly | None = None,
                 lo: Fraction | None = None, hi: Fraction | None = None):
        self.rat = rat
        self.poly = poly
        self._iv = (lo, hi)
        self._sturm = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_rational(cls, q) -> "RealAlg":
        return cls(rat=as_rat(q))

    @classmethod
    def root(cls, poly: UPoly, lo, hi) -> "RealAlg":
        """The unique root of ``poly`` in the open interval (lo, hi)."""
        lo, hi = as_rat(lo), as_rat(hi)
        if poly.is_zero():
            raise ZeroPolynomial("defining polynomial is zero")
        p = poly.squarefree()
        if p.degree < 1:
            raise InvalidRealAlg("defining polynomial must be nonconstant")
        if lo == hi and p(lo) == 0:
            return cls.from_rational(lo)
        if not lo < hi:
            raise InvalidRealAlg("isolating interval must satisfy lo < hi")
        if p(lo) == 0 or p(hi) == 0:
            raise InvalidRealAlg("interval endpoints must not be roots")
        if count_roots(p, lo, hi) != 1:
            raise InvalidRealAlg(f"{p} does not have exactly one root in ({lo}, {hi})")
        return cls._make(p, lo, hi)

    @classmethod
    def _make(cls, p: UPoly, lo: Fraction, hi: Fraction) -> "RealAlg":
        """Trusted constructor: p square-free, one root in (lo, hi), endpoints non-roots."""
        p = p.primitive()
        if p.degree == 1:
            return cls.from_rational(-p[0] / p[1])
        a = cls(poly=p, lo=lo, hi=hi)
        q = a._rational_value()
        return cls.from_rational(q) if q is not None else a

    def _rational_value(self) -> Fraction | None:
        # A rational root u/v of a primitive integer polynomial has v | lc,
        # so lc * root is an integer: one candidate once width * lc < 1.
        p = self.poly
        lc = abs(p.lc)
        while (self.hi - self.lo) * lc >= 1:
            mid = (self.lo + self.hi) / 2
            if p(mid) == 0:
                return mid
            self._bisect(mid)
        lo_k = self.lo * lc
        k = lo_k.numerator // lo_k.denominator + 1
        cand = Fraction(k) / lc
        if self.lo < cand < self.hi and p(cand) == 0:
            return cand
        return None

    # -- accessors --------------------------------------------------------
    @property
    def is_rational(self) -> bool:
        return self.rat is not None

    @property
    def lo(self) -> Fraction:
        return self.rat if self.rat is not None else self._iv[0]

    @property
    def hi(self) -> Fraction:
        return self.rat if self.rat is not None else self._iv[1]

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return (self.lo, self.hi)

    @property
    def defining(self) -> UPoly:
        if self.rat is not None:
            return UPoly((-self.rat, 1))
        return self.poly

    def sturm(self):
        if self._sturm is None:
            self._sturm = sturm_sequence(self.poly)
        return self._sturm

    # -- refinement -------------------------------------------------------
    def _bisect(self, mid: Fraction) -> None:
        lo, hi = self._iv
        p = self.poly
        if _sgn(p(lo)) == _sgn(p(mid)):
            self._iv = (mid, hi)
        else:
            self._iv = (lo, mid)

    def refine(self, width: Fraction | None = None) -> None:
        """Halve the isolating interval (or halve until narrower than width)."""
        if self.rat is not None:
            return
        while True:
            lo, hi = self._iv
            self._bisect((lo + hi) / 2)
            if width is None or self._iv[1] - self._iv[0] < width:
                return

    def approx(self, width=Fraction(1, 2**40)) -> Fraction:
        if self.rat is not None:
            return self.rat
        self.refine(as_rat(width))
        return (self.lo + self.hi) / 2

    def __float__(self) -> float:
        return float(self.approx())

    # -- value semantics --------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = RealAlg.from_rational(other)
        if not isinstance(other, RealAlg):
            return NotImplemented
        return ralg_cmp(self, other) is Ordering.EQ

    __hash__ = None

    def __lt__(self, other):
        return ralg_cmp(self, _lift(other)) is Ordering.LT

    def __le__(self, other):
        return ralg_cmp(self, _lift(other)) is not Ordering.GT

    def __gt__(self, other):
        return ralg_cmp(self, _lift(other)) is Ordering.GT

    def __ge__(self, other):
        return ralg_cmp(self, _lift(other)) is not Ordering.LT

    def __add__(self, other):
        return ralg_add(self, _lift(other))

    __radd__ = __add__

    def __sub__(self, other):
        return ralg_add(self, ralg_neg(_lift(other)))

    def __rsub__(self, other):
        return ralg_add(_lift(other), ralg_neg(self))

    def __mul__(self, other):
        return ralg_mul(self, _lift(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return ralg_mul(self, ralg_inv(_lift(other)))

    def __rtruediv__(self, other):
        return ralg_mul(_lift(other), ralg_inv(self))

    def __neg__(self):
        return ralg_neg(self)

    def __pow__(self, n: int):
        if n < 0:
            return ralg_inv(self) ** (-n)
        result = RealAlg.from_rational(1)
        for _ in range(n):
            result = ralg_mul(result, self)
        return result

    def sign(self) -> int:
        return ralg_sign(self)

    def __repr__(self) -> str:
        if self.rat is not None:
            return f"RealAlg({self.rat})"
        return f"RealAlg(root of {self.poly} in ({self.lo}, {self.hi}))"

    def __str__(self) -> str:
        if self.rat is not None:
            return str(self.rat)
        return f"root({self.poly}, {self.lo}, {self.hi})"


def _lift(v) -> RealAlg:
    return v if isinstance(v, RealAlg) else RealAlg.from_rational(v)


# -- root isolation -----------------------------------------------------------

def isolate_roots(p: UPoly) -> list[RealAlg]:
    """All distinct real roots of p in increasing order."""
    if p.is_zero():
        raise ZeroPolynomial("cannot isolate the roots of the zero polynomial")
    q = p.squarefree()
    if q.degree < 1:
        return []
    seq = sturm_sequence(q)
    found: list[tuple[Fraction, Fraction, bool]] = []

    def walk(lo: Fraction, hi: Fraction) -> None:
        n = count_roots(q, lo, hi, seq)
        if n == 0:
            return
        if n == 1 and q(lo) != 0 and q(hi) != 0:
            found.append((lo, hi, False))
            return
        mid = (lo + hi) / 2
        walk(lo, mid)
        if q(mid) == 0:
            found.append((mid, mid, True))
        walk(mid, hi)

    bound = q.cauchy_bound()
    # Dyadic bound keeps midpoints dyadic.
    b = Fraction(1)
    while b < bound:
        b *= 2
    walk(-b, b)
    out = []
    for lo, hi, exact in found:
        out.append(RealAlg.from_rational(lo) if exact else RealAlg._make(q, lo, hi))
    return out


# -- sign evaluation ----------------------------------------------------------

def _taylor_sign(p: UPoly, lo: Fraction, hi: Fraction) -> int | None:
    """Sign of p on [lo, hi] if the centred Taylor bound certifies it, else None."""
    mid = (lo + hi) / 2
    r = (hi - lo) / 2
    t = p.shift(mid).coeffs
    if not t:
        return 0
    head = abs(t[0])
    tail = Fraction(0)
    rk = Fraction(1)
    for c in t[1:]:
        rk *= r
        tail += abs(c) * rk
    if head > tail:
        return _sgn(t[0])
    return None


def sign_at(p: UPoly, a: RealAlg) -> int:
    """The sign of p(a)."""
    if p.is_zero():
        return 0
    if a.rat is not None:
        return _sgn(p(a.rat))
    if p.degree == 0:
        return _sgn(p.lc)
    g = p.gcd(a.poly)
    if g.degree >= 1 and count_roots(g, a.lo, a.hi) >= 1:
        return 0
    while True:
        s = _taylor_sign(p, a.lo, a.hi)
        if s is not None:
            return s
        a.refine()


def ralg_sign(a: RealAlg) -> int:
    if a.rat is not None:
        return _sgn(a.rat)
    return sign_at(UPoly.x(), a)


def ralg_cmp(a: RealAlg, b: RealAlg) -> Ordering:
    if a.rat is not None and b.rat is not None:
        return Ordering(_sgn(a.rat - b.rat))
    if b.rat is not None:
        return Ordering(sign_at(UPoly((-b.rat, 1)), a))
    if a.rat is not None:
        return Ordering(-sign_at(UPoly((-a.rat, 1)), b))
    g = a.poly.gcd(b.poly)
    if g.degree >= 1:
        lo, hi = max(a.lo, b.lo), min(a.hi, b.hi)
        if lo < hi and count_roots(g, lo, hi) >= 1:
            return Ordering.EQ
    while True:
        if a.hi <= b.lo:
            return Ordering.LT
        if b.hi <= a.lo:
            return Ordering.GT
        if a.hi - a.lo >= b.hi - b.lo:
            a.refine()
        else:
            b.refine()


def rational_between(a: RealAlg, b: RealAlg) -> Fraction:
    """A rational strictly between a < b."""
    if ralg_cmp(a, b) is not Ordering.LT:
        raise ValueError("rational_between requires a < b")
    while not a.hi < b.lo:
        if b.rat is not None or (a.rat is None and a.hi - a.lo >= b.hi - b.lo):
            a.refine()
        else:
            b.refine()
    return (a.hi + b.lo) / 2


def rational_below(a: RealAlg) -> Fraction:
    return a.lo - 1


def rational_above(a: RealAlg) -> Fraction:
    return a.hi + 1


# -- field operations ---------------------------------------------------------

def _select_root(R: UPoly, enclosure, operands: Iterable[RealAlg]) -> RealAlg:
    """Refine operands until R has exactly one root inside enclosure()."""
    R = R.squarefree()
    operands = [o for o in operands if o.rat is None]
    seq = sturm_sequence(R)
    while True:
        lo, hi = enclosure()
        if lo < hi and R(lo) != 0 and R(hi) != 0 and count_roots(R, lo, hi, seq) == 1:
            return RealAlg._make(R, lo, hi)
        for o in operands:
            o.refine()


def ralg_neg(a: RealAlg) -> RealAlg:
    if a.rat is not None:
        return RealAlg.from_rational(-a.rat)
    return RealAlg(poly=a.poly.reflect().primitive(), lo=-a.hi, hi=-a.lo)


def ralg_add(a: RealAlg, b: RealAlg) -> RealAlg:
    if a.rat is not None and b.rat is not None:
        return RealAlg.from_rational(a.rat + b.rat)
    if a.rat is not None:
        a, b = b, a
    if b.rat is not None:
        q = b.rat
        return RealAlg(poly=a.poly.shift(-q).primitive(), lo=a.lo + q, hi=a.hi + q)
    # Res_y(p(y), q(x - y)) vanishes at every sum of roots.
    p, q = a.poly, b.poly
    # q(x - y) = sum_i q_i (x - y)^i, collected by powers of y.
    coeffs = [UPoly() for _ in range(q.degree + 1)]
    for i, qi in enumerate(q.coeffs):
        if not qi:
            continue
        for j in range(i + 1):
            # (x - y)^i term with y^j: C(i, j) x^(i-j) (-y)^j
            c = qi * comb(i, j) * (-1) ** j
            coeffs[j] = coeffs[j] + UPoly.monomial(c, i - j)
    P = [UPoly((c,)) for c in p.coeffs]
    R = bivariate_resultant(P, coeffs)
    return _select_root(R, lambda: (a.lo + b.lo, a.hi + b.hi), (a, b))


def _exclude_zero(a: RealAlg) -> None:
    while a.lo <= 0 <= a.hi:
        a.refine()


def ralg_mul(a: RealAlg, b: RealAlg) -> RealAlg:
    if a.rat is not None and b.rat is not None:
        return RealAlg.from_rational(a.rat * b.rat)
    if a.rat is not None:
        a, b = b, a
    if b.rat is not None:
        q = b.rat
        if q == 0:
            return RealAlg.from_rational(0)
        lo, hi = sorted((a.lo * q, a.hi * q))
        return RealAlg(poly=a.poly.dilate(1 / q).primitive(), lo=lo, hi=hi)
    _exclude_zero(a)
    _exclude_zero(b)
    p, q = a.poly, b.poly.strip_x()
    n = q.degree
    # y^n q(x / y) = sum_i q_i x^i y^(n - i)
    coeffs = [UPoly() for _ in range(n + 1)]
    for i, qi in enumerate(q.coeffs):
        coeffs[n - i] = UPoly.monomial(qi, i)
    P = [UPoly((c,)) for c in p.coeffs]
    R = bivariate_resultant(P, coeffs)

    def enclosure():
        prods = (a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi)
        return min(prods), max(prods)

    return _select_root(R, enclosure, (a, b))


def ralg_inv(a: RealAlg) -> RealAlg:
    if a.rat is not None:
        if a.rat == 0:
            raise DivisionByZero("inverse of zero")
        return RealAlg.from_rational(1 / a.rat)
    _exclude_zero(a)
    p = a.poly.strip_x().reverse()
    return RealAlg(poly=p.primitive(), lo=1 / a.hi, hi=1 / a.lo)


def ralg_sub(a: RealAlg, b: RealAlg) -> RealAlg:
    return ralg_add(a, ralg_neg(b))


def ralg_div(a: RealAlg, b: RealAlg) -> RealAlg:
    return ralg_mul(a, ralg_inv(b))


def _rational_sqrt(q: Fraction) -> Fraction | None:
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


def ralg_sqrt(a: RealAlg) -> RealAlg:
    s = ralg_sign(a)
    if s < 0:
        raise NegativeRadicand("square root of a negative number")
    if s == 0:
        return RealAlg.from_rational(0)
    if a.rat is not None:
        r = _rational_sqrt(a.rat)
        if r is not None:
            return RealAlg.from_rational(r)
        hi = max(Fraction(1), a.rat)
        return RealAlg._make(UPoly((-a.rat, 0, 1)), Fraction(0), hi)
    # Roots of p(x^2) that are positive; exactly one squares to a.
    P = a.poly.compose(UPoly((0, 0, 1)))
    cands = [r for r in isolate_roots(P) if ralg_sign(r) > 0]
    _exclude_zero(a)
    while True:
        live = []
        for r in cands:
            lo, hi = max(r.lo, Fraction(0)), r.hi
            if hi * hi > a.lo and lo * lo < a.hi:
                live.append(r)
        if len(live) == 1:
            return live[0]
        for r in live:
            r.refine()
        a.refine()
        cands = live


def ralg_eval(p: UPoly, a: RealAlg) -> RealAlg:
    """The number p(a)."""
    if a.rat is not None:
        return RealAlg.from_rational(p(a.rat))
    if p.degree <= 0:
        return RealAlg.from_rational(p.lc if p.coeffs else 0)
    r = p % a.poly
    if r.degree <= 0:
        return RealAlg.from_rational(r.lc if r.coeffs else 0)
    if r.degree == 1:
        return ralg_add(ralg_mul(a, RealAlg.from_rational(r[1])), RealAlg.from_rational(r[0]))
    # Res_y(m(y), x - r(y)) has r(a) among its roots.
    m = a.poly
    P = [UPoly((c,)) for c in m.coeffs]
    Q = [UPoly((-c,)) for c in r.coeffs]
    Q[0] = Q[0] + UPoly.x()
    R = bivariate_resultant(P, Q)

    def enclosure():
        mid = (a.lo + a.hi) / 2
        rad = (a.hi - a.lo) / 2
        t = r.shift(mid).coeffs
        spread = Fraction(0)
        rk = Fraction(1)
        for c in t[1:]:
            rk *= rad
            spread += abs(c) * rk
        return t[0] - spread, t[0] + spread

    return _select_root(R, enclosure, (a,))
