import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from gen import rand_formula
from sperkit.errors import ParseError, UnknownVariable
from sperkit.formula import (
    Add, And, Atom, Const, Exists, Forall, Neg, Not, Or, Var, alpha_equal, eval_qf_rational,
    free_vars, from_poly_atoms, substitute, to_poly_atoms, to_str,
)
from sperkit.parser import parse, parse_term, parse_upoly
from sperkit.upoly import UPoly


def poly_text(text: str) -> str:
    return to_str(from_poly_atoms(to_poly_atoms(parse(text))))


def test_parse_examples():
    f = parse("exists t. t - 1/2 > 0")
    assert f == Exists("t", Atom(Add(Var("t"), Neg(Const(Fraction(1, 2)))), ">", Const(Fraction(0))))
    assert isinstance(parse("x^2 + 1 > 0"), Atom)
    body = parse("exists y. y^2 = x /\\ y != 0")
    assert isinstance(body, Exists) and isinstance(body.body, And)
    assert isinstance(parse("exists t. 0 <= t /\\ t <= 1"), Exists)
    assert to_str(parse("1/2 * x^2 - 3 > 0")) == "1/2*x^2 - 3 > 0"


def test_precedence_and_literals():
    f = parse("a > 0 \\/ b > 0 /\\ c > 0")
    assert isinstance(f, Or) and isinstance(f.args[1], And)
    assert isinstance(parse("~ ~ x > 0"), Not)
    assert to_str(parse("true \\/ false")) == "true \\/ false"
    assert isinstance(parse("forall x. x^2 >= 0"), Forall)


@pytest.mark.parametrize("text, line, column", [
    ("x + > 1", 1, 5),
    ("x > 0\n /\\ y >", 2, 8),
    ("x >> 1", 1, 4),
    ("exists . x > 0", 1, 8),
    ("x^0 > 1", 1, 3),
    ("(x > 1", 1, 7),
])
def test_parse_errors_carry_position(text, line, column):
    with pytest.raises(ParseError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_unknown_variable():
    with pytest.raises(UnknownVariable):
        parse("x > z", ["x"])
    # bound variables need no declaration
    parse("exists z. x > z", ["x"])


def test_poly_atoms_examples():
    assert poly_text("~(a > 0 /\\ b = 0)") == "-a >= 0 \\/ b != 0"
    assert poly_text("x < y") == "-x + y > 0"
    assert poly_text("(x-1)*(x+1) >= 0") == "x^2 - 1 >= 0"


def test_substitute_examples():
    assert to_str(substitute(parse("x > 0"), "x", Const(Fraction(3)))) == "3 > 0"
    out = substitute(parse("exists x. x > y"), "y", Var("x"))
    assert alpha_equal(out, parse("exists z. z > x"))
    assert to_str(substitute(parse("T - a = 0"), "a", parse_term("t^2"))) == "T - t^2 = 0"


def test_free_vars_examples():
    assert free_vars(parse("exists y. y^2 = x")) == {"x"}
    assert free_vars(parse("forall x. x^2 >= 0")) == set()
    assert free_vars(parse("x > 0 \\/ y > 0")) == {"x", "y"}


def test_parse_upoly():
    assert parse_upoly("x^2 - 2") == UPoly([-2, 0, 1])
    assert parse_upoly("(t + 1)^2", "t") == UPoly([1, 2, 1])


def test_print_parse_round_trip_on_random_formulas():
    rng = random.Random(11)
    for _ in range(200):
        f = rand_formula(rng, 3)
        if rng.random() < 0.3:
            f = Exists("y", f)
        assert alpha_equal(parse(to_str(f)), f)


_values = st.fractions(min_value=-4, max_value=4, max_denominator=4)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), _values, _values)
def test_poly_atoms_preserve_truth(seed, xv, yv):
    f = rand_formula(random.Random(seed), 3)
    env = {"x": xv, "y": yv}
    g = from_poly_atoms(to_poly_atoms(f, ["x", "y"]))
    assert eval_qf_rational(f, env) == eval_qf_rational(g, env)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10**6), _values, _values)
def test_substitute_commutes_with_evaluation(seed, xv, yv):
    f = rand_formula(random.Random(seed), 2)
    g = substitute(f, "x", Const(xv))
    assert eval_qf_rational(g, {"y": yv}) == eval_qf_rational(f, {"x": xv, "y": yv})
