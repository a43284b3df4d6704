"""Command-line interface.

Every invocation prints one envelope ``{"status", "result", "diagnostics"}``
in JSON mode (the default) or a plain rendering in text mode.  Exit codes:
0 success, 2 malformed input, 3 violated precondition, 4 resource limit,
1 anything else.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import replace
from typing import Sequence

from . import __version__, sections as sec, sper
from .decide import Limits, decide_sentence, eliminate, qe
from .errors import ParseError, PreconditionError, ResourceLimit, SperkitError
from .exactnum import isolate_roots
from .formula import to_str
from .parser import parse, parse_upoly
from .serialize import (
    cellset_from_json, cellset_to_json, formula_to_json, point_from_json, point_to_json,
    realalg_from_json, realalg_to_json, section_from_json, section_to_json,
)


class UsageError(ParseError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# -- argument helpers -------------------------------------------------------------

def _load_json(text: str):
    """Inline JSON, or ``@path`` for a file."""
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {text[1:]}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno) from exc


def _set_arg(text: str, var: str, limits: Limits) -> sper.CellSet:
    """A set given as JSON (inline or @file) or as a formula in one variable."""
    if text.startswith("@") or text.lstrip().startswith("{"):
        return cellset_from_json(_load_json(text))
    return sper.from_formula(parse(text), var, limits)


def _point_arg(text: str) -> sper.SperPoint1:
    """``closed:1/2``, ``right_cut:0``, ``left_cut:-3``, ``plus_inf``,
    ``minus_inf`` or a JSON point."""
    if text.startswith("@") or text.lstrip().startswith("{"):
        return point_from_json(_load_json(text))
    kind, _, value = text.partition(":")
    aliases = {"left": "left_cut", "right": "right_cut", "+inf": "plus_inf", "-inf": "minus_inf"}
    kind = aliases.get(kind, kind)
    if kind not in ("closed", "left_cut", "right_cut", "minus_inf", "plus_inf"):
        raise ParseError(f"unknown point kind {kind!r}")
    if kind in ("minus_inf", "plus_inf"):
        if value:
            raise ParseError("infinite points take no value")
        return sper.SperPoint1(kind)
    if not value:
        raise ParseError(f"point kind {kind!r} needs a value")
    return sper.SperPoint1(kind, realalg_from_json(value if not value.lstrip().startswith("{")
                                                   else json.loads(value)))


def _value_arg(text: str):
    if text.startswith("@") or text.lstrip().startswith("{"):
        return realalg_from_json(_load_json(text))
    return realalg_from_json(text.strip())


def _section_arg(text: str) -> sec.SectionDesc:
    return section_from_json(_load_json(text if text.startswith("@") or text.lstrip().startswith("{")
                                        else "@" + text))


def _limits(args) -> Limits:
    try:
        base = Limits.from_env()
    except ValueError as exc:
        raise ParseError(f"SPERKIT_LIMITS: {exc}") from exc
    changes = {k: v for k, v in (("max_degree", args.max_degree), ("max_atoms", args.max_atoms),
                                 ("max_depth", args.max_depth)) if v is not None}
    for k, v in changes.items():
        if v < 1:
            raise ParseError(f"--{k.replace('_', '-')} must be positive")
    return replace(base, **changes)


def _formula_result(f) -> dict:
    return {"text": to_str(f), "ast": formula_to_json(f)}


# -- commands ------------------------------------------------------------------------

def cmd_roots(args, limits, diags):
    roots = isolate_roots(parse_upoly(args.poly))
    return [realalg_to_json(r) for r in roots]


def cmd_decide(args, limits, diags):
    return decide_sentence(parse(args.formula), limits)


def cmd_qe(args, limits, diags):
    f = parse(args.formula)
    out = eliminate(f, args.var, limits) if args.var else qe(f, None, limits)
    return _formula_result(out)


def cmd_cells(args, limits, diags):
    f = parse(args.formula)
    s = sper.from_formula(f, args.var, limits)
    diags.append(f"set: {sper.describe(s)}")
    return cellset_to_json(s)


def cmd_setop(args, limits, diags):
    a = _set_arg(args.lhs, args.var, limits)
    if args.op == "complement":
        if args.rhs is not None:
            raise UsageError("complement takes one set")
        out = sper.complement(a)
    else:
        if args.rhs is None:
            raise UsageError(f"{args.op} takes two sets")
        b = _set_arg(args.rhs, args.var, limits)
        out = {"union": sper.union, "intersect": sper.intersect,
               "difference": sper.difference}[args.op](a, b)
    diags.append(f"set: {sper.describe(out)}")
    return cellset_to_json(out)


def cmd_closure(args, limits, diags):
    out = sper.closure(_set_arg(args.set, args.var, limits))
    diags.append(f"set: {sper.describe(out)}")
    return cellset_to_json(out)


def cmd_contains(args, limits, diags):
    s = _set_arg(args.set, args.var, limits)
    pt = _point_arg(args.point)
    note = sper.boundary_diagnostic(s, pt)
    if note:
        diags.append(note)
    return sper.contains(s, pt)


def cmd_project(args, limits, diags):
    s = sper.project(parse(args.formula), args.x, args.y, limits)
    diags.append(f"set: {sper.describe(s)}")
    return cellset_to_json(s)


def cmd_section(args, limits, diags):
    op = args.action
    extra = args.args
    want = {"validate": 0, "eval": 1, "add": 1, "mul": 1, "inv": 0, "sqrt": 0,
            "extend": 1, "compat": 0, "neg": 0}[op]
    if len(extra) != want:
        raise UsageError(f"section {op} takes {want + 1} argument(s)")
    s = _section_arg(args.section)
    if op == "validate":
        ok = sec.validate(s, limits)
        return {"valid": ok, "section": section_to_json(s)}
    if op == "eval":
        return realalg_to_json(sec.eval_at_closed(s, _value_arg(extra[0]), limits))
    if op in ("add", "mul"):
        other = _section_arg(extra[0])
        fn = sec.sec_add if op == "add" else sec.sec_mul
        return section_to_json(fn(s, other))
    if op == "neg":
        return section_to_json(sec.sec_neg(s))
    if op == "inv":
        return section_to_json(sec.sec_inv(s, limits))
    if op == "sqrt":
        return section_to_json(sec.sec_sqrt(s, limits))
    if op == "extend":
        return section_to_json(sec.extend_by_zero(s, _set_arg(extra[0], s.var, limits)))
    return sec.is_compatible(s, limits)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sperkit", description="Exact real spectrum toolkit over Q[x].")
    p.add_argument("--version", action="version", version=f"sperkit {__version__}")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--max-degree", type=int, default=None)
    p.add_argument("--max-atoms", type=int, default=None)
    p.add_argument("--max-depth", type=int, default=None)
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    c = sub.add_parser("roots", help="isolate the real roots of a polynomial")
    c.add_argument("poly")
    c.set_defaults(fn=cmd_roots)

    c = sub.add_parser("decide", help="truth value of a closed sentence")
    c.add_argument("formula")
    c.set_defaults(fn=cmd_decide)

    c = sub.add_parser("qe", help="eliminate quantifiers (or one variable)")
    c.add_argument("--var", default=None)
    c.add_argument("formula")
    c.set_defaults(fn=cmd_qe)

    c = sub.add_parser("cells", help="cell set of a formula in one variable")
    c.add_argument("--var", default=None)
    c.add_argument("formula")
    c.set_defaults(fn=cmd_cells)

    c = sub.add_parser("setop", help="boolean operation on sets")
    c.add_argument("--var", default="x")
    c.add_argument("op", choices=("union", "intersect", "difference", "complement"))
    c.add_argument("lhs")
    c.add_argument("rhs", nargs="?")
    c.set_defaults(fn=cmd_setop)

    c = sub.add_parser("closure", help="closure of a set")
    c.add_argument("--var", default="x")
    c.add_argument("set")
    c.set_defaults(fn=cmd_closure)

    c = sub.add_parser("contains", help="membership of a point")
    c.add_argument("--var", default="x")
    c.add_argument("set")
    c.add_argument("point")
    c.set_defaults(fn=cmd_contains)

    c = sub.add_parser("project", help="image of a set in (x, y) under projection to x")
    c.add_argument("--x", default="x")
    c.add_argument("--y", default="y")
    c.add_argument("formula")
    c.set_defaults(fn=cmd_project)

    c = sub.add_parser("section", help="operations on section files")
    c.add_argument("action", choices=("validate", "eval", "add", "mul", "neg", "inv", "sqrt",
                                      "extend", "compat"))
    c.add_argument("section")
    c.add_argument("args", nargs="*")
    c.set_defaults(fn=cmd_section)
    return p


def _render_text(result) -> str:
    if isinstance(result, bool):
        return "true" if result else "false"
    if isinstance(result, dict) and "text" in result:
        return result["text"]
    return json.dumps(result, sort_keys=True)


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    fmt = "text" if "--format=text" in argv or _follows(argv, "--format", "text") else "json"
    diags: list[str] = []
    try:
        args = build_parser().parse_args(list(argv))
        fmt = args.format
        limits = _limits(args)
        result = args.fn(args, limits, diags)
        code = 0
        envelope = {"status": "ok", "result": result, "diagnostics": diags}
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except (ParseError, PreconditionError, ResourceLimit) as exc:
        code = exc.exit_code
        envelope = {"status": "error", "result": None,
                    "diagnostics": diags + [f"{type(exc).__name__}: {exc}"]}
    except (SperkitError, ValueError, RecursionError) as exc:
        code = 1
        envelope = {"status": "error", "result": None,
                    "diagnostics": diags + [f"{type(exc).__name__}: {exc}"]}
    if fmt == "json":
        out.write(json.dumps(envelope, sort_keys=True) + "\n")
    else:
        if envelope["status"] == "ok":
            out.write(_render_text(envelope["result"]) + "\n")
        for d in envelope["diagnostics"]:
            err.write(("error: " if envelope["status"] == "error" else "note: ") + d + "\n")
    return code


def _follows(argv, flag, value) -> bool:
    return any(a == flag and b == value for a, b in zip(argv, argv[1:]))


def main(argv: Sequence[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
