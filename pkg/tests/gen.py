"""Seeded random generators shared by the property tests."""
from __future__ import annotations

import random
from fractions import Fraction
from functools import cmp_to_key

from sperkit.exactnum import Ordering, RealAlg, ralg_cmp, ralg_sqrt
from sperkit.formula import RELS, Add, And, Atom, Const, Mul, Neg, Not, Or, Pow, Var
from sperkit.sper import CellSet
from sperkit.upoly import UPoly


def rand_rat(rng: random.Random, span: int = 20, den: int = 6) -> Fraction:
    return Fraction(rng.randint(-span, span), rng.randint(1, den))


def rand_term(rng: random.Random, names=("x", "y"), deg: int = 3):
    """Sum of up to four monomials of total degree <= deg, coefficients in [-5, 5]."""
    monos = [(i, j) for i in range(deg + 1) for j in range(deg + 1 - i)]
    t = None
    for i, j in rng.sample(monos, rng.randint(1, 4)):
        c = rng.randint(-5, 5)
        if c == 0:
            continue
        m = Const(Fraction(abs(c)))
        for name, k in zip(names, (i, j)):
            if k:
                m = Mul(m, Pow(Var(name), k) if k > 1 else Var(name))
        if c < 0:
            m = Neg(m)
        t = m if t is None else Add(t, m)
    return t or Const(Fraction(1))


def rand_formula(rng: random.Random, depth: int = 2):
    if depth == 0 or rng.random() < 0.4:
        return Atom(rand_term(rng), rng.choice(RELS), Const(Fraction(0)))
    k = rng.random()
    if k < 0.4:
        return And((rand_formula(rng, depth - 1), rand_formula(rng, depth - 1)))
    if k < 0.8:
        return Or((rand_formula(rng, depth - 1), rand_formula(rng, depth - 1)))
    return Not(rand_formula(rng, depth - 1))


_IRRATIONAL = None


def _irrationals():
    global _IRRATIONAL
    if _IRRATIONAL is None:
        _IRRATIONAL = [ralg_sqrt(RealAlg.from_rational(q)) for q in (2, 3, 5)]
        _IRRATIONAL += [-a for a in _IRRATIONAL]
    return _IRRATIONAL


def rand_breakpoints(rng: random.Random, k: int) -> list[RealAlg]:
    pool = []
    for _ in range(k):
        if rng.random() < 0.25:
            pool.append(rng.choice(_irrationals()))
        else:
            pool.append(RealAlg.from_rational(Fraction(rng.randint(-6, 6), rng.choice((1, 1, 2, 3)))))
    pool.sort(key=cmp_to_key(lambda a, b: ralg_cmp(a, b).value))
    return [a for i, a in enumerate(pool) if i == 0 or ralg_cmp(pool[i - 1], a) is not Ordering.EQ]


def rand_cellset(rng: random.Random, max_points: int = 4) -> CellSet:
    bps = rand_breakpoints(rng, rng.randint(0, max_points))
    return CellSet(bps, [rng.random() < 0.5 for _ in range(2 * len(bps) + 1)])


def rand_upoly(rng: random.Random, deg: int = 3, span: int = 5) -> UPoly:
    return UPoly([rng.randint(-span, span) for _ in range(rng.randint(1, deg + 1))])
