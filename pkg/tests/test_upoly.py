import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from sperkit.upoly import (
    UPoly, bivariate_psc, bivariate_resultant, count_roots, interpolate, resultant,
    sturm_sequence, subresultant_coeffs,
)

x = UPoly.x()
polys = st.lists(st.integers(-6, 6), min_size=1, max_size=5).map(UPoly)


def test_arithmetic_and_printing():
    p = (x - 1) * (x + 1)
    assert p == x * x - 1
    assert str(3 * x ** 2 - x + Fraction(1, 2)) == "3*x^2 - x + 1/2"
    q, r = divmod(x ** 3 + 1, x + 1)
    assert q == x * x - x + 1 and r.is_zero()
    assert (x * x - 1).compose(x + 1) == x * x + 2 * x
    assert UPoly([4, 2]).primitive() == x + 2


@settings(max_examples=80, deadline=None)
@given(polys, polys)
def test_divmod_identity(a, b):
    if b.is_zero():
        return
    q, r = divmod(a, b)
    assert q * b + r == a
    assert r.is_zero() or r.degree < b.degree


@settings(max_examples=80, deadline=None)
@given(polys, polys)
def test_gcd_divides_both(a, b):
    g = a.gcd(b)
    if g.is_zero():
        assert a.is_zero() and b.is_zero()
        return
    assert (a % g).is_zero() and (b % g).is_zero()


def test_squarefree():
    assert ((x - 1) ** 3 * (x + 2)).squarefree() == (x - 1) * (x + 2)


@settings(max_examples=60, deadline=None)
@given(polys, polys)
def test_resultant_matches_sylvester_oracle(a, b):
    if a.degree < 1 or b.degree < 1:
        return
    assert resultant(a, b) == oracles.sylvester_resultant(list(a.coeffs), list(b.coeffs))


def test_count_roots_against_grid_oracle():
    rng = random.Random(4)
    for _ in range(30):
        roots = sorted({Fraction(rng.randint(-20, 20), 4) for _ in range(rng.randint(1, 4))})
        p = UPoly.from_roots(roots)
        assert count_roots(p, None, None) == len(roots)
        assert count_roots(p, Fraction(-1), Fraction(1)) == sum(-1 < r < 1 for r in roots)


def test_sturm_sequence_signs_only():
    seq = sturm_sequence(x ** 3 - 2 * x + 1)
    assert seq[0] == x ** 3 - 2 * x + 1
    assert all(not q.is_zero() for q in seq)


def test_interpolate():
    pts = [(Fraction(i), Fraction(i * i - 3)) for i in range(4)]
    assert interpolate(pts) == x * x - 3


def test_bivariate_resultant_eliminates_y():
    # Res_y(y^2 - x, y - 1) = 1 - x up to sign
    P = [-x, UPoly([0]), UPoly([1])]
    Q = [UPoly([-1]), UPoly([1])]
    r = bivariate_resultant(P, Q)
    assert r.primitive() == (x - 1).primitive()


def test_subresultants():
    assert subresultant_coeffs(x * x - 2, 2 * x) == [Fraction(8)]
    # common factor of degree 2 kills psc_0 and psc_1
    a = (x * x + 1) * (x - 3)
    b = (x * x + 1) * (x + 5)
    assert subresultant_coeffs(a, b)[:2] == [0, 0]


def test_bivariate_psc_discriminant():
    # f = y^2 - x, f_y = 2y: psc_0 is a multiple of x
    P = [-x, UPoly([0]), UPoly([1])]
    Q = [UPoly([0]), UPoly([2])]
    (psc0,) = bivariate_psc(P, Q)
    assert psc0.primitive() == x
