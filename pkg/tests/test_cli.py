import io
import json
import subprocess
import sys

import pytest

from golden_cases import CASES, DATA, HERE, normalise, run_case
from sperkit.cli import run


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden_envelopes(name):
    golden = json.loads((HERE / "golden" / f"{name}.json").read_text())
    code, envelope = run_case(name)
    assert code == golden["exit"]
    # byte comparison after key-order normalisation
    assert json.dumps(normalise(envelope), sort_keys=True) == \
        json.dumps(golden["envelope"], sort_keys=True)


@pytest.mark.parametrize("argv, code", [
    (["decide", "x >"], 2),
    (["decide", "x > 0 /\\"], 2),
    (["decide", "exists x. x ^ -1 > 0"], 2),
    (["bogus"], 2),
    ([], 2),
    (["qe"], 2),
    (["cells", "x > 0 /\\ y > 0"], 3),
    (["decide", "x > 0"], 3),
    (["setop", "union", "x > 0"], 2),
    (["setop", "complement", "x > 0", "x < 1"], 2),
    (["contains", "x > 0", "sideways:0"], 2),
    (["contains", "x > 0", "closed"], 2),
    (["contains", "{not json", "closed:0"], 2),
    (["contains", '{"breakpoints": [], "membership": [1]}', "closed:0"], 2),
    (["section", "eval", "/nonexistent/section.json", "1"], 2),
    (["section", "inv", str(DATA / "ident.json")], 3),
    (["section", "sqrt", str(DATA / "ident.json")], 3),
    (["section", "eval", str(DATA / "t_on_positive.json"), "-1"], 3),
    (["section", "eval", str(DATA / "ident.json")], 2),
    (["section", "add", str(DATA / "ident.json"), str(DATA / "t_on_positive.json")], 3),
    (["section", "extend", str(DATA / "ident.json"), "x > 0"], 3),
    (["roots", "0"], 3),
    (["--max-degree", "2", "decide", "exists x. x^3 = 2"], 4),
    (["--max-atoms", "1", "decide", "exists x. x > 0 /\\ x < 1"], 4),
    (["--max-degree", "0", "decide", "true"], 2),
    (["decide", "forall x. x^2 >= 0"], 0),
    (["decide", "exists x. x^2 < 0"], 0),
])
def test_exit_code_matrix(argv, code):
    got, out, _ = call(*argv)
    assert got == code
    envelope = json.loads(out)  # always exactly one well-formed envelope
    assert set(envelope) == {"status", "result", "diagnostics"}
    assert envelope["status"] == ("ok" if code == 0 else "error")
    assert out.count("\n") == 1


def test_env_limits(monkeypatch):
    monkeypatch.setenv("SPERKIT_LIMITS", "degree=2")
    assert call("decide", "exists x. x^3 = 2")[0] == 4
    assert call("--max-degree", "3", "decide", "exists x. x^3 = 2")[0] == 0
    monkeypatch.setenv("SPERKIT_LIMITS", "nonsense")
    assert call("decide", "true")[0] == 2


def test_text_format():
    code, out, err = call("--format", "text", "qe", "--var", "y", "exists y. y^2 = x /\\ y != 0")
    assert (code, out, err) == (0, "x > 0\n", "")
    code, out, err = call("--format", "text", "decide", "x >")
    assert code == 2 and out == "" and err.startswith("error: ParseError")
    code, out, err = call("--format=text", "contains", "x > 0", "closed:0")
    assert out == "false\n" and err.startswith("note: closed point 0")


def test_file_arguments(tmp_path):
    from sperkit.serialize import cellset_to_json
    from sperkit.sper import basic_open
    from sperkit.upoly import UPoly
    path = tmp_path / "set.json"
    path.write_text(json.dumps(cellset_to_json(basic_open([UPoly.x()]))))
    code, out, _ = call("contains", f"@{path}", "right_cut:0")
    assert code == 0 and json.loads(out)["result"] is True
    code, out, _ = call("closure", f"@{path}")
    assert json.loads(out)["diagnostics"] == ["set: [0, +inf)"]


def test_section_eval_and_compat():
    code, out, _ = call("section", "eval", str(DATA / "abs.json"), "-3")
    assert code == 3  # abs.json is not marked validated
    code, out, _ = call("section", "compat", str(DATA / "ident.json"))
    assert (code, json.loads(out)["result"]) == (0, True)
    code, out, _ = call("section", "eval", str(DATA / "t_on_nonneg.json"), "4")
    assert json.loads(out)["result"] == {"rat": "4"}


def test_version_and_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "sperkit", "--version"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("sperkit ")
    proc = subprocess.run([sys.executable, "-m", "sperkit", "decide", "exists x. x^2 = 2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout) == {"status": "ok", "result": True, "diagnostics": []}
