import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from gen import rand_cellset
from sperkit.errors import PreconditionError
from sperkit.exactnum import RealAlg, isolate_roots, ralg_sqrt
from sperkit.parser import parse
from sperkit.sper import (
    CellSet, Closed, ConeOrder, LeftCut, MinusInf, PlusInf, RightCut, SperPoint1, basic_open,
    boundary_diagnostic, closure, coefficient_cone_compare, complement, cone_axioms_spotcheck,
    cone_contains, contains, describe, difference, from_formula, intersect, is_subset, nonneg,
    point_sign, project, pullback_basic_open, specializes, supp, to_formula, union,
)
from sperkit.upoly import UPoly

t = UPoly.x()
SQRT2 = ralg_sqrt(RealAlg.from_rational(2))
R = CellSet.everything()
EMPTY = CellSet.empty()


def cells(s):
    return [(kind, member) for kind, _, _, member in s.cells()]


def test_points_and_equality():
    assert Closed(SQRT2) == Closed(RealAlg.root(t * t - 2, 0, 10))
    assert RightCut(0) != Closed(0) and LeftCut(0) != RightCut(0)
    assert MinusInf == SperPoint1("minus_inf")
    with pytest.raises(ValueError):
        SperPoint1("closed")
    with pytest.raises(ValueError):
        SperPoint1("sideways", 1)


def test_supp_examples():
    assert supp(Closed(SQRT2)).generator == t * t - 2
    assert supp(RightCut(0)).is_zero and supp(PlusInf).is_zero
    assert supp(Closed(SQRT2)).contains((t * t - 2) * (t + 5))


def test_cone_contains_examples():
    assert cone_contains(Closed(0), t)
    assert cone_contains(RightCut(0), t) and point_sign(RightCut(0), t) == 1
    assert not cone_contains(MinusInf, t)


def test_cut_sign_oracle():
    # sign just right of (left of) a at a rational sample closer than any other root
    rng = random.Random(12)
    for _ in range(40):
        roots = sorted({Fraction(rng.randint(-6, 6), 2) for _ in range(3)})
        p = UPoly.from_roots(roots) * UPoly([rng.choice((-1, 1))])
        for r in roots:
            gap = min([abs(r - s) for s in roots if s != r] + [Fraction(1)]) / 4
            assert point_sign(RightCut(r), p) == oracles.sign(p(r + gap))
            assert point_sign(LeftCut(r), p) == oracles.sign(p(r - gap))


def test_cone_axioms_examples():
    assert cone_axioms_spotcheck(Closed(0), [t, t * t, UPoly([1])])
    assert cone_axioms_spotcheck(RightCut(0), [t, -t])
    assert cone_axioms_spotcheck(PlusInf, [t - 10**6])
    assert cone_contains(PlusInf, t - 10**6)


def test_coefficient_cone_examples():
    assert coefficient_cone_compare(t * t + 1, 2 * t * t) is ConeOrder.INCOMPARABLE
    assert coefficient_cone_compare(UPoly(), t) is ConeOrder.LE
    assert coefficient_cone_compare(t, t) is ConeOrder.EQ
    assert coefficient_cone_compare(t + 1, t) is ConeOrder.GE


def test_basic_open_examples():
    assert cells(basic_open([t])) == [("interval", False), ("point", False), ("interval", True)]
    unit = basic_open([t, 1 - t])
    assert cells(unit) == [("interval", False), ("point", False), ("interval", True),
                           ("point", False), ("interval", False)]
    assert is_subset(basic_open([t - Fraction(1, 3)]), basic_open([t]))
    assert basic_open([UPoly([1])]) == R
    with pytest.raises(PreconditionError):
        basic_open([])


def test_from_formula_examples():
    s = from_formula(parse("x^2 < 2"))
    assert [b for b in s.breakpoints] == isolate_roots(t * t - 2)
    assert [m for m in s.membership] == [False, False, True, False, False]
    assert from_formula(parse("x >= 0")) == nonneg(t)
    assert from_formula(parse("exists y. y^2 = x /\\ y != 0")) == basic_open([t])
    with pytest.raises(PreconditionError):
        from_formula(parse("x > y"))


def test_set_operation_examples():
    pieces = [basic_open([t, 1 - t]), from_formula(parse("x = 1")), basic_open([t - 1, 2 - t])]
    u = union(union(*pieces[:2]), pieces[2])
    assert u == basic_open([t, 2 - t]) and len(u.breakpoints) == 2
    assert intersect(basic_open([t]), basic_open([-t])).is_empty()
    assert difference(R, basic_open([t])) == nonneg(-t)


def test_closure_examples():
    assert closure(basic_open([t, 1 - t])) == intersect(nonneg(t), nonneg(1 - t))
    point = from_formula(parse("x^2 = 2 /\\ x > 0"))
    assert closure(point) == point
    assert closure(basic_open([t])) == nonneg(t)
    assert describe(closure(basic_open([t, 1 - t]))) == "[0, 1]"


def test_specializes_examples():
    assert specializes(RightCut(0), Closed(0))
    assert not specializes(Closed(0), RightCut(0))
    assert not specializes(PlusInf, Closed(3))
    assert specializes(LeftCut(SQRT2), Closed(SQRT2))


def test_contains_examples():
    unit = basic_open([t, 1 - t])
    assert contains(unit, RightCut(0)) and not contains(unit, Closed(0))
    assert contains(R, MinusInf) and contains(R, PlusInf)
    assert boundary_diagnostic(unit, Closed(0)) is not None
    assert boundary_diagnostic(unit, Closed(Fraction(1, 2))) is None


def test_project_examples():
    assert project(parse("y^2 = x /\\ y != 0")) == basic_open([t])
    assert project(parse("y = x")) == R
    assert project(parse("y^2 = -1 - x^2")).is_empty()


def test_pullback_examples():
    assert pullback_basic_open([t], t * t) == complement(from_formula(parse("x = 0")))
    assert pullback_basic_open([t - 1], t * t) == from_formula(parse("x < -1 \\/ x > 1"))
    assert pullback_basic_open([UPoly([1])], t ** 3 - t) == R


def test_canonical_form_and_validation():
    s = CellSet([0, 1, 2], [False, False, True, True, True, False, False])
    assert len(s.breakpoints) == 2  # 1 is removable
    with pytest.raises(PreconditionError):
        CellSet([1, 0], [False] * 5)
    with pytest.raises(PreconditionError):
        CellSet([0], [True])
    with pytest.raises(AttributeError):
        s.membership = ()


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_to_formula_round_trip(seed):
    s = rand_cellset(random.Random(seed))
    assert from_formula(to_formula(s, "x"), "x") == s


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6))
def test_operations_agree_pointwise(seed):
    rng = random.Random(seed)
    a, b = rand_cellset(rng), rand_cellset(rng)
    u, i, c = union(a, b), intersect(a, b), complement(a)
    for p in a.sample_points() + b.sample_points():
        assert contains(u, p) == (contains(a, p) or contains(b, p))
        assert contains(i, p) == (contains(a, p) and contains(b, p))
        assert contains(c, p) == (not contains(a, p))
