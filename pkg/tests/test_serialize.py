import random

import pytest

from gen import rand_cellset, rand_formula
from sperkit.errors import ParseError
from sperkit.exactnum import RealAlg, ralg_sqrt
from sperkit.formula import Exists, alpha_equal
from sperkit.parser import parse
from sperkit.sections import SectionDesc, eval_at_closed, section_from_poly
from sperkit.serialize import (
    cellset_from_json, cellset_to_json, formula_from_json, formula_to_json, point_from_json,
    point_to_json, realalg_from_json, realalg_to_json, section_from_json, section_to_json,
)
from sperkit.sper import CellSet, Closed, LeftCut, MinusInf, basic_open
from sperkit.upoly import UPoly

SQRT2 = ralg_sqrt(RealAlg.from_rational(2))


def test_realalg_formats():
    assert realalg_to_json(RealAlg.from_rational(0.5)) == {"rat": "1/2"}
    out = realalg_to_json(SQRT2)
    assert out["defining"] == "x^2 - 2" and len(out["interval"]) == 2
    assert realalg_from_json(out) == SQRT2
    assert realalg_from_json("5/6") == RealAlg.from_rational(0.5) + RealAlg.from_rational(1) / 3
    assert realalg_from_json({"defining": "x^2 - 2", "interval": ["1", "2"]}) == SQRT2


@pytest.mark.parametrize("bad", [
    {"defining": "x^2 - 2", "interval": ["1"]},
    {"defining": "x^2 - 2"},
    {"rat": "1/0"},
    {"rat": 1.5},
    True,
    {"defining": "x^2 - 2 /\\", "interval": ["1", "2"]},
])
def test_realalg_rejects_bad_input(bad):
    with pytest.raises(ParseError):
        realalg_from_json(bad)


def test_points_round_trip():
    for p in (Closed(SQRT2), LeftCut(0), MinusInf):
        assert point_from_json(point_to_json(p)) == p
    with pytest.raises(ParseError):
        point_from_json({"kind": "middle", "value": None})
    with pytest.raises(ParseError):
        point_from_json({"kind": "closed", "value": None})


def test_cellsets_round_trip():
    rng = random.Random(13)
    for _ in range(50):
        s = rand_cellset(rng)
        assert cellset_from_json(cellset_to_json(s)) == s
    with pytest.raises(ParseError):
        cellset_from_json({"breakpoints": [], "membership": ["yes"]})


def test_formulas_round_trip():
    rng = random.Random(14)
    for _ in range(50):
        f = Exists("y", rand_formula(rng, 3))
        assert alpha_equal(formula_from_json(formula_to_json(f)), f)
    for bad in ({"op": "xor"}, {"op": "atom", "rel": "~", "lhs": {"var": "x"}, "rhs": {"const": "0"}},
                {"op": "and", "args": [{"op": "true"}]}):
        with pytest.raises(ParseError):
            formula_from_json(bad)


def test_sections_round_trip():
    s = section_from_poly(UPoly([1, 0, 1]), basic_open([UPoly.x()]))
    back = section_from_json(section_to_json(s))
    assert back.validated and back.domain == s.domain
    assert eval_at_closed(back, 2) == RealAlg.from_rational(5)
    renamed = SectionDesc(CellSet.everything(), parse("V = u^2", ["u", "V"]), True, "u", "V")
    again = section_from_json(section_to_json(renamed))
    assert (again.var, again.tvar) == ("u", "V")
    assert eval_at_closed(again, 3) == RealAlg.from_rational(9)
