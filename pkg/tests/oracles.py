"""Independent reference computations used to check derived values.

Nothing here imports the package under test except to convert results.
Polynomials are plain coefficient lists, lowest degree first.
"""
from fractions import Fraction


def peval(coeffs, x):
    acc = Fraction(0)
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def sign(v) -> int:
    return (v > 0) - (v < 0)


def root_brackets(coeffs, lo=Fraction(-64), hi=Fraction(64), steps=4096):
    """Brackets of sign changes on a uniform grid, plus exact grid roots.

    Good enough for the small, well-separated examples in the tests.
    """
    out = []
    h = (hi - lo) / steps
    prev_x, prev_s = lo, sign(peval(coeffs, lo))
    for i in range(1, steps + 1):
        x = lo + i * h
        s = sign(peval(coeffs, x))
        if s == 0:
            out.append((x, x))
        elif prev_s != 0 and s != prev_s:
            out.append((prev_x, x))
        prev_x, prev_s = x, s
    return out


def bisect(coeffs, lo, hi, width=Fraction(1, 10**12)):
    """Shrink a sign-change bracket."""
    slo = sign(peval(coeffs, lo))
    while hi - lo > width:
        mid = (lo + hi) / 2
        s = sign(peval(coeffs, mid))
        if s == 0:
            return mid, mid
        if s == slo:
            lo = mid
        else:
            hi = mid
    return lo, hi


def sylvester_resultant(a, b):
    """Resultant via the Sylvester determinant (coefficient lists, lowest first)."""
    m, n = len(a) - 1, len(b) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([Fraction(0)] * i + list(reversed(a)) + [Fraction(0)] * (size - m - 1 - i))
    for i in range(m):
        rows.append([Fraction(0)] * i + list(reversed(b)) + [Fraction(0)] * (size - n - 1 - i))
    return det(rows)


def det(rows):
    a = [list(map(Fraction, r)) for r in rows]
    n, d = len(a), Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d *= a[c][c]
        for r in range(c + 1, n):
            f = a[r][c] / a[c][c]
            for k in range(c, n):
                a[r][k] -= f * a[c][k]
    return d


def sum_poly(p, q):
    """Res_y(p(y), q(x - y)) as a coefficient list in x, by interpolation."""
    deg = (len(p) - 1) * (len(q) - 1)
    pts = []
    for x in range(deg + 1):
        # q(x - y) as a polynomial in y
        qy = [Fraction(0)] * len(q)
        for k, c in enumerate(q):
            for j in range(k + 1):
                qy[j] += c * _binom(k, j) * Fraction(x) ** (k - j) * (-1) ** j
        pts.append((Fraction(x), sylvester_resultant(p, qy)))
    return _lagrange(pts)


def _binom(n, k):
    out = 1
    for i in range(k):
        out = out * (n - i) // (i + 1)
    return out


def _lagrange(pts):
    n = len(pts)
    coeffs = [Fraction(0)] * n
    for i, (xi, yi) in enumerate(pts):
        basis = [Fraction(1)]
        den = Fraction(1)
        for j, (xj, _) in enumerate(pts):
            if j == i:
                continue
            basis = [Fraction(0)] + basis
            for k in range(len(basis) - 1):
                basis[k] -= xj * basis[k + 1]
            den *= xi - xj
        for k in range(n):
            coeffs[k] += yi * basis[k] / den
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def refine_until_disjoint(a_iv, a_coeffs, b):
    """Order of an algebraic number (bracket + polynomial) against a rational."""
    lo, hi = a_iv
    while lo <= b <= hi:
        if lo == hi == b:
            return 0
        lo, hi = bisect(a_coeffs, lo, hi, (hi - lo) / 4)
    return -1 if hi < b else 1


def sign_vectors(polys, samples):
    """Sign vector of each poly at each sample (rational samples only)."""
    return [tuple(sign(peval(p, s)) for p in polys) for s in samples]


def brute_sign_conditions(polys, lo=-8, hi=8, den=16):
    """Set of realised sign vectors on a dense rational grid."""
    seen = set()
    for i in range(lo * den, hi * den + 1):
        x = Fraction(i, den)
        seen.add(tuple(sign(peval(p, x)) for p in polys))
    return seen


def grid(lo=-4, hi=4, den=8):
    return [Fraction(i, den) for i in range(lo * den, hi * den + 1)]


__all__ = [name for name in dir() if not name.startswith("_")]
