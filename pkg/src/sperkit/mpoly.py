"""Recursive dense multivariate polynomials over the rationals.

A polynomial is either a ``Fraction`` or a pair ``(i, coeffs)`` meaning
``sum_k coeffs[k] * v_i**k`` where every coefficient only involves variables
with index greater than ``i``.  Coefficient tuples have length at least two
and a nonzero last entry, so the representation is canonical: equal
polynomials are equal tuples, hashable and printable in a fixed order.

Variable indices refer to a per-context ordered variable list; index 0 is the
outermost (main) variable.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import zip_longest
from typing import Mapping

from .upoly import UPoly

ZERO = Fraction(0)
ONE = Fraction(1)
_INF = 1 << 30


def var_of(p) -> int:
    return p[0] if isinstance(p, tuple) else _INF


def is_const(p) -> bool:
    return not isinstance(p, tuple)


def mk(i: int, coeffs) -> object:
    coeffs = list(coeffs)
    while coeffs and is_zero(coeffs[-1]):
        coeffs.pop()
    if not coeffs:
        return ZERO
    if len(coeffs) == 1:
        return coeffs[0]
    return (i, tuple(coeffs))


def is_zero(p) -> bool:
    return not isinstance(p, tuple) and p == 0


def const(c) -> object:
    return Fraction(c)


def var(i: int) -> object:
    return (i, (ZERO, ONE))


def add(p, q):
    vp, vq = var_of(p), var_of(q)
    if vp == _INF and vq == _INF:
        return p + q
    if vp < vq:
        cs = p[1]
        return (vp, (add(cs[0], q),) + cs[1:])
    if vq < vp:
        cs = q[1]
        return (vq, (add(cs[0], p),) + cs[1:])
    return mk(vp, [add(a, b) for a, b in zip_longest(p[1], q[1], fillvalue=ZERO)])


def neg(p):
    if is_const(p):
        return -p
    return (p[0], tuple(neg(c) for c in p[1]))


def sub(p, q):
    return add(p, neg(q))


def scale(p, c: Fraction):
    if c == 0:
        return ZERO
    if is_const(p):
        return p * c
    return (p[0], tuple(scale(a, c) for a in p[1]))


def mul(p, q):
    vp, vq = var_of(p), var_of(q)
    if vp == _INF:
        return scale(q, p)
    if vq == _INF:
        return scale(p, q)
    if vp < vq:
        return (vp, tuple(mul(c, q) for c in p[1]))
    if vq < vp:
        return (vq, tuple(mul(p, c) for c in q[1]))
    a, b = p[1], q[1]
    out = [ZERO] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if is_zero(ca):
            continue
        for j, cb in enumerate(b):
            if not is_zero(cb):
                out[i + j] = add(out[i + j], mul(ca, cb))
    return mk(vp, out)


def power(p, n: int):
    result, base = ONE, p
    while n:
        if n & 1:
            result = mul(result, base)
        base = mul(base, base)
        n >>= 1
    return result


def degree(p, i: int) -> int:
    """Degree in variable i (0 for the zero polynomial)."""
    v = var_of(p)
    if v == i:
        return len(p[1]) - 1
    if v < i:
        return max(degree(c, i) for c in p[1])
    return 0


def involves(p, i: int) -> bool:
    return degree(p, i) > 0


def variables(p) -> set[int]:
    if is_const(p):
        return set()
    out = {p[0]}
    for c in p[1]:
        out |= variables(c)
    return out


def total_degree(p) -> int:
    if is_const(p):
        return 0 if p != 0 else -1
    return max(k + total_degree(c) for k, c in enumerate(p[1]) if not is_zero(c))


def head(p, i: int = 0):
    """Leading coefficient in variable i (p itself if i is not its main variable)."""
    if var_of(p) == i:
        return p[1][-1]
    return p


def behead(p, i: int = 0):
    """p minus its leading term in variable i."""
    if var_of(p) != i:
        return ZERO
    return mk(i, p[1][:-1])


def coeff_list(p, i: int = 0) -> list:
    """Coefficients in the main variable i, lowest first (p must not involve
    variables below i)."""
    if var_of(p) == i:
        return list(p[1])
    return [p]


def diff(p, i: int = 0):
    """Derivative with respect to variable i, assumed not nested below another."""
    v = var_of(p)
    if v == i:
        return mk(i, [scale(c, Fraction(k)) for k, c in enumerate(p[1])][1:])
    if v < i:
        return mk(v, [diff(c, i) for c in p[1]])
    return ZERO


def shift_main(p, k: int, i: int = 0):
    """p * v_i^k, for p not involving variables below i."""
    if k == 0 or is_zero(p):
        return p
    return mk(i, [ZERO] * k + coeff_list(p, i))


def pdivide(s, p, i: int = 0):
    """Pseudo-division in variable i: returns (k, r) with head(p)^k * s = q*p + r."""
    a = head(p, i)
    n = degree(p, i)
    r = s
    k = 0
    while not is_zero(r) and degree(r, i) >= n:
        b = head(r, i)
        d = degree(r, i)
        r = sub(mul(a, r), mul(b, shift_main(p, d - n, i)))
        k += 1
    return k, r


def lead_rational(p) -> Fraction:
    while not is_const(p):
        p = p[1][-1]
    return p


def normalize(p):
    """(monic-ised p, sign of the scaling); used as a key for sign lookups."""
    c = lead_rational(p)
    if c == 0:
        return ZERO, 0
    return scale(p, 1 / c), (1 if c > 0 else -1)


def primitive(p):
    """Positive rational multiple with integer coefficients of content 1 and
    positive leading rational."""
    from math import gcd, lcm
    if is_const(p):
        return ONE if p != 0 else ZERO
    coeffs = []

    def walk(q):
        if is_const(q):
            coeffs.append(q)
        else:
            for c in q[1]:
                walk(c)

    walk(p)
    den = 1
    num = 0
    for c in coeffs:
        den = lcm(den, c.denominator)
    for c in coeffs:
        num = gcd(num, (c * den).numerator)
    factor = Fraction(den, num)
    if lead_rational(p) < 0:
        factor = -factor
    return scale(p, factor)


def evaluate(p, values: Mapping[int, Fraction]):
    """Substitute rational values for some variables; returns a polynomial."""
    if is_const(p):
        return p
    i, cs = p
    cs = [evaluate(c, values) for c in cs]
    if i in values:
        x = values[i]
        acc = ZERO
        for c in reversed(cs):
            acc = add(mul(acc, x), c)
        return acc
    return mk(i, cs)


def substitute(p, i: int, q):
    """Replace variable i by the polynomial q (q must not involve variables below i)."""
    if is_const(p):
        return p
    v, cs = p
    if v > i:
        return p
    cs = [substitute(c, i, q) for c in cs]
    if v == i:
        acc = ZERO
        for c in reversed(cs):
            acc = add(mul(acc, q), c)
        return acc
    acc = ZERO
    for c in reversed(cs):
        acc = add(mul(acc, var(v)), c)
    return acc


def homogenised_substitute(p, num, den, i: int = 0):
    """den^d * p(v_i := num/den) with d = degree(p, i); num, den free of v_i."""
    cs = coeff_list(p, i)
    d = len(cs) - 1
    acc = ZERO
    for j, c in enumerate(cs):
        if is_zero(c):
            continue
        acc = add(acc, mul(c, mul(power(num, j), power(den, d - j))))
    return acc


def to_upoly(p, i: int) -> UPoly:
    """Convert a polynomial in the single variable i."""
    if is_const(p):
        return UPoly((p,))
    if p[0] != i or any(not is_const(c) for c in p[1]):
        raise ValueError("polynomial is not univariate in the requested variable")
    return UPoly(p[1])


def from_upoly(u: UPoly, i: int):
    return mk(i, list(u.coeffs))


def rename(p, mapping: Mapping[int, int]):
    """Re-express p under a new variable order (mapping old index -> new index)."""
    if is_const(p):
        return p
    i, cs = p
    acc = ZERO
    x = var(mapping[i])
    for c in reversed(cs):
        acc = add(mul(acc, x), rename(c, mapping))
    return acc


def to_str(p, names) -> str:
    from .formula import poly_to_term, term_to_str
    return term_to_str(poly_to_term(p, names))
