"""Dense univariate polynomials over the rationals.

Coefficients are stored lowest degree first as a tuple of ``Fraction``.  The
zero polynomial is the empty tuple and trailing zeros are always stripped, so
structural equality is value equality.
"""
from __future__ import annotations

from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Sequence

Rat = Fraction


def as_rat(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return Fraction(value.strip())
    return Fraction(value)


def _strip(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class UPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        object.__setattr__(self, "coeffs", _strip([as_rat(c) for c in coeffs]))

    def __setattr__(self, name, value):
        raise AttributeError("UPoly is immutable")

    @classmethod
    def x(cls) -> "UPoly":
        return cls((0, 1))

    @classmethod
    def const(cls, c) -> "UPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, c, k: int) -> "UPoly":
        return cls([0] * k + [c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UPoly":
        p = cls((1,))
        for r in roots:
            p = p * cls((-as_rat(r), 1))
        return p

    # -- basic structure -------------------------------------------------
    def __repr__(self) -> str:
        return f"UPoly({self.to_str()!r})"

    def __eq__(self, other) -> bool:
        if isinstance(other, UPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == UPoly((other,)).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(("UPoly", self.coeffs))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lc(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    # -- ring operations -------------------------------------------------
    def __add__(self, other) -> "UPoly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "UPoly":
        return UPoly([-c for c in self.coeffs])

    def __sub__(self, other) -> "UPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "UPoly":
        return _coerce(other) - self

    def __mul__(self, other) -> "UPoly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return UPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "UPoly":
        if n < 0:
            raise ValueError("negative exponent")
        result, base = UPoly((1,)), self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c) -> "UPoly":
        c = as_rat(c)
        return UPoly([c * a for a in self.coeffs])

    def __divmod__(self, other) -> tuple["UPoly", "UPoly"]:
        other = _coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        db = other.degree
        lcb = other.lc
        if len(rem) - 1 < db:
            return UPoly(), self
        quo = [Fraction(0)] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] / lcb
            quo[k] = c
            if c:
                for j, cb in enumerate(other.coeffs):
                    rem[k + j] -= c * cb
        return UPoly(quo), UPoly(rem[:db])

    def __floordiv__(self, other) -> "UPoly":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "UPoly":
        return divmod(self, other)[1]

    # -- evaluation and calculus ------------------------------------------
    def __call__(self, x):
        acc = Fraction(0) if isinstance(x, (int, Fraction)) else 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "UPoly":
        return UPoly([i * c for i, c in enumerate(self.coeffs)][1:])

    def compose(self, inner: "UPoly") -> "UPoly":
        acc = UPoly()
        for c in reversed(self.coeffs):
            acc = acc * inner + UPoly((c,))
        return acc

    def shift(self, c) -> "UPoly":
        """p(x + c)."""
        return self.compose(UPoly((as_rat(c), 1)))

    def reflect(self) -> "UPoly":
        """p(-x)."""
        return UPoly([-c if i % 2 else c for i, c in enumerate(self.coeffs)])

    def dilate(self, c) -> "UPoly":
        """p(c*x)."""
        c = as_rat(c)
        return UPoly([a * c**i for i, a in enumerate(self.coeffs)])

    def reverse(self) -> "UPoly":
        """x^deg * p(1/x); roots become reciprocals (for p(0) != 0)."""
        return UPoly(reversed(self.coeffs))

    def strip_x(self) -> "UPoly":
        """Remove every factor x."""
        k = 0
        while k < len(self.coeffs) and not self.coeffs[k]:
            k += 1
        return UPoly(self.coeffs[k:])

    # -- gcd machinery ----------------------------------------------------
    def monic(self) -> "UPoly":
        if self.is_zero():
            return self
        return self.scale(1 / self.lc)

    def primitive(self) -> "UPoly":
        """Integer coefficients with content 1 and positive leading coefficient."""
        if self.is_zero():
            return self
        den = reduce(lcm, (c.denominator for c in self.coeffs), 1)
        ints = [int(c * den) for c in self.coeffs]
        g = reduce(gcd, ints, 0)
        if ints[-1] < 0:
            g = -g
        return UPoly([Fraction(i, g) for i in ints])

    def gcd(self, other: "UPoly") -> "UPoly":
        a, b = self, _coerce(other)
        while not b.is_zero():
            # rescaling remainders keeps the coefficients small
            a, b = b, (a % b).primitive()
        return a.monic()

    def squarefree(self) -> "UPoly":
        if self.degree <= 0:
            return self.monic()
        g = self.gcd(self.derivative())
        return (self // g).monic()

    def sign_at(self, x: Fraction) -> int:
        v = self(x)
        return (v > 0) - (v < 0)

    def sign_at_plus_inf(self) -> int:
        return (self.lc > 0) - (self.lc < 0)

    def sign_at_minus_inf(self) -> int:
        s = self.sign_at_plus_inf()
        return s if self.degree % 2 == 0 else -s

    def cauchy_bound(self) -> Fraction:
        """Every real root lies strictly inside (-B, B)."""
        if self.degree <= 0:
            return Fraction(1)
        lc = abs(self.lc)
        return 1 + max(abs(c) / lc for c in self.coeffs[:-1])

    # -- printing ---------------------------------------------------------
    def to_str(self, var: str = "x") -> str:
        if not self.coeffs:
            return "0"
        parts: list[str] = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if not c:
                continue
            neg = c < 0
            a = -c if neg else c
            if k == 0:
                body = str(a)
            else:
                mono = var if k == 1 else f"{var}^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    __str__ = to_str


def _coerce(value) -> UPoly:
    if isinstance(value, UPoly):
        return value
    return UPoly((value,))


# -- Sturm sequences ----------------------------------------------------------

def sturm_sequence(p: UPoly) -> list[UPoly]:
    seq = [p, p.derivative()]
    while not seq[-1].is_zero():
        r = seq[-2] % seq[-1]
        # only signs matter, so divide out the positive content
        q = r.primitive()
        seq.append(q if (q.lc > 0) != (r.lc > 0) else -q)
    seq.pop()
    return seq


def sign_variations(seq: Sequence[UPoly], x: Fraction | None, at_inf: int = 0) -> int:
    """Sign changes of the sequence evaluated at x (or at +inf / -inf)."""
    signs = []
    for q in seq:
        if x is None:
            s = q.sign_at_plus_inf() if at_inf > 0 else q.sign_at_minus_inf()
        else:
            s = q.sign_at(x)
        if s:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def count_roots(p: UPoly, lo: Fraction | None, hi: Fraction | None, seq=None) -> int:
    """Distinct real roots of p in the open interval (lo, hi); None means infinite."""
    if p.is_zero():
        raise ValueError("zero polynomial has infinitely many roots")
    if p.degree == 0:
        return 0
    seq = seq if seq is not None else sturm_sequence(p)
    v_lo = sign_variations(seq, lo, -1)
    v_hi = sign_variations(seq, hi, +1)
    n = v_lo - v_hi
    if hi is not None and p(hi) == 0:
        n -= 1
    return n


def resultant(a: UPoly, b: UPoly) -> Fraction:
    """lc(a)^deg(b) * prod of b over the roots of a."""
    if a.is_zero() or b.is_zero():
        return Fraction(0)
    factor = Fraction(1)
    while True:
        da, db = a.degree, b.degree
        if da == 0:
            return factor * a.lc**db
        if db == 0:
            return factor * b.lc**da
        r = b % a
        if r.is_zero():
            return Fraction(0)
        dr = r.degree
        factor *= a.lc ** (db - dr)
        if (da * dr) % 2:
            factor = -factor
        a, b = r, a


def interpolate(points: Sequence[tuple[Fraction, Fraction]]) -> UPoly:
    """Lagrange interpolation through distinct abscissae (Newton form)."""
    xs = [as_rat(x) for x, _ in points]
    coef = [as_rat(y) for _, y in points]
    n = len(xs)
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    p = UPoly((coef[-1],)) if coef else UPoly()
    for i in range(n - 2, -1, -1):
        p = p * UPoly((-xs[i], 1)) + UPoly((coef[i],))
    return p


def bivariate_resultant(P: Sequence[UPoly], Q: Sequence[UPoly]) -> UPoly:
    """Resultant in y of two polynomials given as coefficient lists (in y) of UPoly in x.

    Computed by evaluation at integer abscissae where neither leading
    coefficient vanishes, followed by interpolation.
    """
    P = list(P)
    Q = list(Q)
    while P and P[-1].is_zero():
        P.pop()
    while Q and Q[-1].is_zero():
        Q.pop()
    if not P or not Q:
        return UPoly()
    dyP, dyQ = len(P) - 1, len(Q) - 1
    dxP = max(c.degree for c in P)
    dxQ = max(c.degree for c in Q)
    bound = dyP * max(dxQ, 0) + dyQ * max(dxP, 0)
    lcP, lcQ = P[-1], Q[-1]
    pts: list[tuple[Fraction, Fraction]] = []
    k = 0
    while len(pts) < bound + 1:
        for x in ((Fraction(k),) if k == 0 else (Fraction(k), Fraction(-k))):
            if len(pts) > bound:
                break
            if lcP(x) == 0 or lcQ(x) == 0:
                continue
            a = UPoly([c(x) for c in P])
            b = UPoly([c(x) for c in Q])
            pts.append((x, resultant(a, b)))
        k += 1
    return interpolate(pts)


def _det(rows: list) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def subresultant_coeffs(a: UPoly, b: UPoly) -> list[Fraction]:
    """Principal subresultant coefficients psc_0 .. psc_{min(m,n)-1} of a and b.

    psc_j is the determinant of the Sylvester-type matrix built from n-j
    shifted copies of a and m-j shifted copies of b, restricted to the
    columns of degrees m+n-j-1 down to j.  The smallest j with psc_j != 0 is
    the degree of gcd(a, b).
    """
    m, n = a.degree, b.degree
    out = []
    for j in range(min(m, n)):
        size = m + n - 2 * j
        rows = []
        for poly, copies in ((a, n - j), (b, m - j)):
            for i in range(copies):
                # row for x^i * poly, columns for degrees m+n-j-1 .. j
                rows.append([poly[d - i] for d in range(m + n - j - 1, j - 1, -1)])
        assert all(len(r) == size for r in rows)
        out.append(_det(rows))
    return out


def bivariate_psc(P: Sequence[UPoly], Q: Sequence[UPoly]) -> list[UPoly]:
    """Principal subresultant coefficients in y of two polynomials given as
    coefficient lists (in y) of UPoly in x; one UPoly in x per index j."""
    P = list(P)
    Q = list(Q)
    while P and P[-1].is_zero():
        P.pop()
    while Q and Q[-1].is_zero():
        Q.pop()
    dyP, dyQ = len(P) - 1, len(Q) - 1
    if dyP < 1 or dyQ < 1:
        return []
    dxP = max(max(c.degree for c in P), 0)
    dxQ = max(max(c.degree for c in Q), 0)
    bound = dyP * dxQ + dyQ * dxP
    lcP, lcQ = P[-1], Q[-1]
    samples: list[tuple[Fraction, list]] = []
    k = 0
    while len(samples) < bound + 1:
        for x in ((Fraction(k),) if k == 0 else (Fraction(k), Fraction(-k))):
            if len(samples) > bound:
                break
            if lcP(x) == 0 or lcQ(x) == 0:
                continue
            a = UPoly([c(x) for c in P])
            b = UPoly([c(x) for c in Q])
            samples.append((x, subresultant_coeffs(a, b)))
        k += 1
    return [interpolate([(x, vals[j]) for x, vals in samples]) for j in range(min(dyP, dyQ))]
