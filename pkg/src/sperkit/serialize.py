"""JSON interchange formats.

Rationals are strings such as ``"5/6"`` or ``"-2"``.  A real algebraic
number is ``{"rat": "5/6"}`` or ``{"defining": "x^2 - 2", "interval": ["1", "2"]}``;
points, cell sets, formulas and sections build on that.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import ParseError
from .exactnum import RealAlg
from .formula import (
    Add, And, Atom, Const, Exists, FalseF, Forall, Formula, Mul, Neg, Not, Or, Pow,
    Term, TrueF, Var, rename_apart, to_str,
)
from .parser import parse, parse_upoly
from .sections import SectionDesc
from .sper import CellSet, SperPoint1

POINT_KINDS = ("closed", "left_cut", "right_cut", "minus_inf", "plus_inf")


def rat_to_json(q: Fraction) -> str:
    return str(Fraction(q))


def rat_from_json(s) -> Fraction:
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise ParseError(f"expected a rational string, got {s!r}")
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad rational {s!r}") from exc


def _need(obj, key, kind=None):
    if not isinstance(obj, dict) or key not in obj:
        raise ParseError(f"missing field {key!r}")
    v = obj[key]
    if kind is not None and not isinstance(v, kind):
        raise ParseError(f"field {key!r} has the wrong type")
    return v


# -- numbers and points ----------------------------------------------------------

def realalg_to_json(a: RealAlg) -> dict:
    if a.rat is not None:
        return {"rat": rat_to_json(a.rat)}
    lo, hi = a.interval
    return {"defining": a.defining.to_str("x"), "interval": [rat_to_json(lo), rat_to_json(hi)]}


def realalg_from_json(obj) -> RealAlg:
    if isinstance(obj, (str, int)) and not isinstance(obj, bool):
        return RealAlg.from_rational(rat_from_json(obj))
    if isinstance(obj, dict) and "rat" in obj:
        return RealAlg.from_rational(rat_from_json(obj["rat"]))
    poly = parse_upoly(_need(obj, "defining", str))
    iv = _need(obj, "interval", list)
    if len(iv) != 2:
        raise ParseError("interval must have two endpoints")
    return RealAlg.root(poly, rat_from_json(iv[0]), rat_from_json(iv[1]))


def point_to_json(p: SperPoint1) -> dict:
    return {"kind": p.kind, "value": None if p.value is None else realalg_to_json(p.value)}


def point_from_json(obj) -> SperPoint1:
    kind = _need(obj, "kind", str)
    if kind not in POINT_KINDS:
        raise ParseError(f"unknown point kind {kind!r}")
    value = obj.get("value")
    try:
        return SperPoint1(kind, None if value is None else realalg_from_json(value))
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def cellset_to_json(s: CellSet) -> dict:
    return {"breakpoints": [realalg_to_json(b) for b in s.breakpoints],
            "membership": list(s.membership)}


def cellset_from_json(obj) -> CellSet:
    bps = [realalg_from_json(b) for b in _need(obj, "breakpoints", list)]
    mem = _need(obj, "membership", list)
    if not all(isinstance(m, bool) for m in mem):
        raise ParseError("membership entries must be booleans")
    return CellSet(bps, mem)


# -- formulas ---------------------------------------------------------------------

def term_to_json(t: Term) -> dict:
    if isinstance(t, Const):
        return {"const": rat_to_json(t.value)}
    if isinstance(t, Var):
        return {"var": t.name}
    if isinstance(t, Add):
        return {"op": "add", "args": [term_to_json(t.left), term_to_json(t.right)]}
    if isinstance(t, Mul):
        return {"op": "mul", "args": [term_to_json(t.left), term_to_json(t.right)]}
    if isinstance(t, Neg):
        return {"op": "neg", "arg": term_to_json(t.arg)}
    if isinstance(t, Pow):
        return {"op": "pow", "base": term_to_json(t.base), "exp": t.exp}
    raise TypeError(f"not a term: {t!r}")


def term_from_json(obj) -> Term:
    if not isinstance(obj, dict):
        raise ParseError("term must be an object")
    if "const" in obj:
        return Const(rat_from_json(obj["const"]))
    if "var" in obj:
        return Var(_need(obj, "var", str))
    op = _need(obj, "op", str)
    if op in ("add", "mul"):
        args = _need(obj, "args", list)
        if len(args) != 2:
            raise ParseError(f"{op} takes two arguments")
        cls = Add if op == "add" else Mul
        return cls(term_from_json(args[0]), term_from_json(args[1]))
    if op == "neg":
        return Neg(term_from_json(_need(obj, "arg")))
    if op == "pow":
        exp = _need(obj, "exp", int)
        if exp < 1:
            raise ParseError("exponent must be a positive integer")
        return Pow(term_from_json(_need(obj, "base")), exp)
    raise ParseError(f"unknown term operator {op!r}")


def formula_to_json(f: Formula) -> dict:
    if isinstance(f, Atom):
        return {"op": "atom", "rel": f.rel, "lhs": term_to_json(f.lhs), "rhs": term_to_json(f.rhs)}
    if isinstance(f, TrueF):
        return {"op": "true"}
    if isinstance(f, FalseF):
        return {"op": "false"}
    if isinstance(f, (And, Or)):
        return {"op": "and" if isinstance(f, And) else "or",
                "args": [formula_to_json(a) for a in f.args]}
    if isinstance(f, Not):
        return {"op": "not", "arg": formula_to_json(f.arg)}
    if isinstance(f, (Exists, Forall)):
        return {"op": "exists" if isinstance(f, Exists) else "forall",
                "var": f.var, "body": formula_to_json(f.body)}
    raise TypeError(f"not a formula: {f!r}")


def formula_from_json(obj) -> Formula:
    from .formula import FALSE, TRUE, RELS
    op = _need(obj, "op", str)
    if op == "atom":
        rel = _need(obj, "rel", str)
        if rel not in RELS:
            raise ParseError(f"unknown relation {rel!r}")
        return Atom(term_from_json(_need(obj, "lhs")), rel, term_from_json(_need(obj, "rhs")))
    if op == "true":
        return TRUE
    if op == "false":
        return FALSE
    if op in ("and", "or"):
        args = tuple(formula_from_json(a) for a in _need(obj, "args", list))
        if len(args) < 2:
            raise ParseError(f"{op} needs at least two arguments")
        return And(args) if op == "and" else Or(args)
    if op == "not":
        return Not(formula_from_json(_need(obj, "arg")))
    if op in ("exists", "forall"):
        cls = Exists if op == "exists" else Forall
        return rename_apart(cls(_need(obj, "var", str), formula_from_json(_need(obj, "body"))))
    raise ParseError(f"unknown formula operator {op!r}")


# -- sections ----------------------------------------------------------------------

def section_to_json(s: SectionDesc) -> dict:
    return {"domain": cellset_to_json(s.domain), "phi": to_str(s.phi),
            "validated": s.validated, "vars": {"x": s.var, "T": s.tvar}}


def section_from_json(obj) -> SectionDesc:
    domain = cellset_from_json(_need(obj, "domain"))
    names = obj.get("vars", {"x": "x", "T": "T"})
    if not isinstance(names, dict):
        raise ParseError("vars must be an object")
    var, tvar = names.get("x", "x"), names.get("T", "T")
    phi = parse(_need(obj, "phi", str), [var, tvar])
    validated = obj.get("validated", False)
    if not isinstance(validated, bool):
        raise ParseError("validated must be a boolean")
    return SectionDesc(domain, phi, validated, var, tvar)
