from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from sperkit.errors import DivisionByZero, NegativeRadicand, ZeroPolynomial
from sperkit.exactnum import (
    InvalidRealAlg, Ordering, RealAlg, isolate_roots, ralg_add, ralg_cmp, ralg_div,
    ralg_eval, ralg_inv, ralg_mul, ralg_sign, ralg_sqrt, ralg_sub, sign_at,
)
from sperkit.upoly import UPoly

x = UPoly.x()
Q = RealAlg.from_rational
SQRT2 = ralg_sqrt(Q(2))
SQRT3 = ralg_sqrt(Q(3))

rats = st.fractions(min_value=-50, max_value=50, max_denominator=12)


def test_isolate_x2_minus_2_matches_bisection_oracle():
    roots = isolate_roots(x * x - 2)
    brackets = oracles.root_brackets([-2, 0, 1])
    assert len(roots) == len(brackets) == 2
    for r, (lo, hi) in zip(roots, brackets):
        lo, hi = oracles.bisect([-2, 0, 1], lo, hi)
        assert r.lo < hi and lo < r.hi
        assert r.defining == x * x - 2
    assert roots[0] == -SQRT2 and roots[1] == SQRT2


def test_isolate_trivial_cases():
    assert isolate_roots(x * x + 1) == []
    assert [r.rat for r in isolate_roots(x ** 3 - x)] == [-1, 0, 1]
    with pytest.raises(ZeroPolynomial):
        isolate_roots(UPoly())


def test_isolate_non_squarefree_input():
    p = (x - 1) ** 2 * (x * x - 3)
    roots = isolate_roots(p)
    assert len(roots) == 3 and roots[1] == Q(1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=2, max_size=6))
def test_isolate_intervals_disjoint_and_sign_changing(coeffs):
    p = UPoly(coeffs)
    if p.degree < 1:
        return
    roots = isolate_roots(p)
    for a, b in zip(roots, roots[1:]):
        assert a.hi <= b.lo
    sq = p.squarefree()
    for r in roots:
        if r.rat is None:
            assert sq(r.lo) * sq(r.hi) < 0
        else:
            assert p(r.rat) == 0
    # every sign change found on a grid brackets one of the isolated roots
    for lo, hi in oracles.root_brackets(list(p.coeffs)):
        assert any(ralg_cmp(r, Q(lo)) is not Ordering.LT and ralg_cmp(r, Q(hi)) is not Ordering.GT
                   for r in roots)


def test_add_examples():
    assert SQRT2 + (-SQRT2) == Q(0)
    assert (Q(Fraction(1, 2)) + Q(Fraction(1, 3))).rat == Fraction(5, 6)
    s = ralg_add(SQRT2, SQRT3)
    want = oracles.sum_poly([-2, 0, 1], [-3, 0, 1])
    # the oracle is monic up to sign; compare after normalising
    lc = want[-1]
    assert s.defining == UPoly([c / lc for c in want]).primitive()
    assert Fraction(3) < s.lo and s.hi < 4


def test_cmp_examples():
    assert ralg_cmp(SQRT2, Q(Fraction(3, 2))) is Ordering.LT
    other = RealAlg.root(x * x - 2, 0, 100)
    assert ralg_cmp(SQRT2, other) is Ordering.EQ
    assert ralg_cmp(Q(0), Q(-1)) is Ordering.GT
    # independent refinement oracle
    assert oracles.refine_until_disjoint(SQRT2.interval, [-2, 0, 1], Fraction(3, 2)) == -1


def test_sqrt_examples():
    assert ralg_sqrt(Q(4)).rat == 2
    assert ralg_sqrt(Q(2)).defining == x * x - 2 and 1 <= SQRT2.lo
    assert ralg_sqrt(Q(0)).rat == 0
    with pytest.raises(NegativeRadicand):
        ralg_sqrt(Q(-1))


def test_sign_at_examples():
    assert sign_at(x * x - 2, SQRT2) == 0
    assert sign_at(x, -SQRT2) == -1
    p = x ** 3 - 2 * x + 1
    # oracle: evaluate p(sqrt 2) as a number and compare with 0
    assert sign_at(p, SQRT2) == ralg_sign(ralg_eval(p, SQRT2)) == 1


def test_rational_detection():
    r = ralg_mul(SQRT2, SQRT2)
    assert r.rat == 2
    assert ralg_sub(SQRT3, SQRT3).rat == 0
    assert ralg_div(SQRT2, SQRT2).rat == 1
    assert RealAlg.root(x * x - 4, 0, 3).rat == 2


def test_inverse_and_errors():
    assert ralg_mul(ralg_inv(SQRT2), SQRT2) == Q(1)
    with pytest.raises(DivisionByZero):
        ralg_inv(Q(0))
    with pytest.raises(InvalidRealAlg):
        RealAlg.root(x * x - 2, -2, 2)
    with pytest.raises(ZeroPolynomial):
        RealAlg.root(UPoly(), 0, 1)


@settings(max_examples=100, deadline=None)
@given(rats, rats)
def test_rational_fast_path_agrees_with_fractions(a, b):
    assert (Q(a) + Q(b)).rat == a + b
    assert (Q(a) * Q(b)).rat == a * b
    assert ralg_cmp(Q(a), Q(b)).value == (a > b) - (a < b)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 40), st.integers(1, 5))
def test_sqrt_squares_back(n, d):
    a = Q(Fraction(n, d))
    r = ralg_sqrt(a)
    assert r * r == a and r.sign() >= 0


def test_order_is_total_and_compatible():
    vals = [SQRT2, -SQRT3, Q(Fraction(7, 5)), SQRT2 + 1, Q(0)]
    for a in vals:
        for b in vals:
            o = ralg_cmp(a, b)
            assert o in Ordering
            assert (o is Ordering.EQ) == (ralg_cmp(b, a) is Ordering.EQ)
            if a.sign() >= 0 and b.sign() >= 0:
                assert (a + b).sign() >= 0 and (a * b).sign() >= 0
