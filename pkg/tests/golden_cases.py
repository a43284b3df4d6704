"""CLI invocations with golden envelopes in tests/golden/<name>.json.

Regenerate with ``python3 tests/golden_cases.py --write`` from the repo root.
"""
import io
import json
import sys
from pathlib import Path

HERE = Path(__file__).parent
DATA = HERE / "data"

CASES = {
    "decide_sqrt2": ["decide", "exists x. x^2 = 2"],
    "decide_false": ["decide", "exists x. x > 0 /\\ x < 0"],
    "qe_parabola": ["qe", "--var", "y", "exists y. y^2 = x /\\ y != 0"],
    "qe_forall": ["qe", "forall y. x*y^2 + 1 > 0"],
    "cells_disc": ["cells", "x^2 < 2"],
    "roots_cubic": ["roots", "x^3 - x"],
    "roots_sqrt2": ["roots", "x^2 - 2"],
    "setop_union": ["setop", "union", "0 < x /\\ x < 1", "1 <= x /\\ x < 2"],
    "setop_complement": ["setop", "complement", "x^2 < 2"],
    "closure_unit": ["closure", "0 < x /\\ x < 1"],
    "contains_cut": ["contains", "x > 0", "right_cut:0"],
    "contains_closed": ["contains", "x > 0", "closed:0"],
    "project_parabola": ["project", "y^2 = x /\\ y != 0"],
    "section_validate_abs": ["section", "validate", "{data}/abs.json"],
    "section_eval_ident": ["section", "eval", "{data}/ident.json",
                           '{"defining": "x^2 - 2", "interval": ["1", "2"]}'],
    "section_add": ["section", "add", "{data}/ident.json", "{data}/const2.json"],
    "section_inv": ["section", "inv", "{data}/t_on_positive.json"],
    "section_inv_vanishing": ["section", "inv", "{data}/ident.json"],
    "section_sqrt": ["section", "sqrt", "{data}/t_on_nonneg.json"],
    "section_extend": ["section", "extend", "{data}/t_on_positive.json", "x = x"],
    "section_compat_step": ["section", "compat", "{data}/step.json"],
    "parse_error": ["decide", "exists x. x^2 = "],
    "limit_error": ["--max-degree", "2", "decide", "exists x. x^3 = 2"],
}


def argv_for(name: str) -> list[str]:
    return [a.replace("{data}", str(DATA)) for a in CASES[name]]


def run_case(name: str) -> tuple[int, dict]:
    from sperkit.cli import run
    out, err = io.StringIO(), io.StringIO()
    code = run(argv_for(name), out, err)
    return code, json.loads(out.getvalue())


def normalise(envelope: dict) -> dict:
    """Golden files must not depend on where the repository lives."""
    text = json.dumps(envelope, sort_keys=True).replace(str(DATA), "{data}")
    return json.loads(text)


if __name__ == "__main__" and "--write" in sys.argv:
    sys.path.insert(0, str(HERE.parent / "src"))
    (HERE / "golden").mkdir(exist_ok=True)
    for name in CASES:
        code, env = run_case(name)
        record = {"argv": CASES[name], "exit": code, "envelope": normalise(env)}
        path = HERE / "golden" / f"{name}.json"
        path.write_text(json.dumps(record, indent=2, sort_keys=True) + "\n")
        print(f"{name}: exit {code}")
