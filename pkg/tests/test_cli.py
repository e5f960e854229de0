import json
import shutil
import subprocess
import sys

import pytest

from eiscurve import codec
from eiscurve.cli import main
from helpers import worked_cases

REP = {"p": 3, "generators": [[["1", "1"], ["0", "1"]], [["1", "0"], ["3", "1"]]], "labels": ["M1", "M2"]}


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        import io

        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    def write(name, obj):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj))
        return str(path)

    return write


def test_bernoulli_golden(capsys):
    assert run(capsys, "bernoulli", "--k", "2", "--modulus", "1", "--char-index", "0") == (0, "1/6\n", "")
    assert run(capsys, "bernoulli", "--k", "1", "--modulus", "3", "--char-index", "1", "--oracle")[1] == "-1/3\n"


def test_bernoulli_cyclotomic_value(capsys):
    code, out, _ = run(capsys, "bernoulli", "--k", "1", "--modulus", "5", "--char-index", "1")
    assert code == 0 and json.loads(out)["order"] == 4


def test_selmer_golden(capsys, files):
    path = files("w1.json", codec.encode_selmer_problem(worked_cases()[0][1]))
    code, out, _ = run(capsys, "selmer", "--problem", path)
    assert code == 0
    assert out.splitlines()[:2] == ["dimension: 1", "ledger: 0,0,-1,1,1,0"]
    code, out, _ = run(capsys, "selmer", "--problem", path, "--json")
    res = json.loads(out)
    assert res["dimension"] == 1 and [e["value"] for e in res["ledger"]] == [0, 0, -1, 1, 1, 0]


@pytest.mark.parametrize("case", worked_cases(), ids=[c[0] for c in worked_cases()])
def test_selmer_all_cases(capsys, files, case):
    _, prob, dim, ledger = case
    code, out, _ = run(capsys, "selmer", "--problem", files("p.json", codec.encode_selmer_problem(prob)))
    assert out.splitlines()[:2] == [f"dimension: {dim}", "ledger: " + ",".join(map(str, ledger))]


def test_selmer_assume_dual(capsys, files):
    prob = {"p": 5, "chi": {"modulus": 1, "exponents": []}, "j": 2, "sigma": [7, 5, "inf"], "conditions": {"7": "zero", "5": "zero"}}
    path = files("w2.json", prob)
    out = run(capsys, "selmer", "--problem", path)[1]
    assert out.startswith("dimension: -1 + dim H^1_Lperp(Q, V*(1))\nledger: ?,0,0,0,0,-1")
    out = run(capsys, "selmer", "--problem", path, "--assume-dual", "1")[1]
    assert out.startswith("dimension: 0\nledger: 1,0,0,0,0,-1")


def test_eigencheck_golden(capsys, files, tmp_path):
    e2 = tmp_path / "e2.json"
    crit = tmp_path / "e2crit5.json"
    assert run(capsys, "eisenstein", "--e2", "--prec", "100", "--output", str(e2))[0] == 0
    assert run(capsys, "refine", "--mode", "crit", "--prime", "5", "--input", str(e2), "--output", str(crit))[0] == 0
    assert run(capsys, "eigencheck", "--op", "U:5", "--input", str(crit)) == (0, "eigenvalue: 5\n", "")
    assert run(capsys, "eigencheck", "--op", "U:5", "--input", str(e2))[1] == "eigenvalue: none\n"
    out = run(capsys, "eigencheck", "--op", "T:7", "--input", str(crit), "--json")[1]
    assert json.loads(out) == {"op": "T:7", "eigenvalue": "8"}


def test_stdin_pipeline(capsys, monkeypatch):
    _, e2, _ = run(capsys, "eisenstein", "--e2", "--prec", "40")
    _, ref, _ = run(capsys, "refine", "--mode", "ord", "--prime", "3", stdin=e2, monkeypatch=monkeypatch)
    _, hk, _ = run(capsys, "hecke", "--op", "U:3", stdin=ref, monkeypatch=monkeypatch)
    f = codec.decode_qexpansion(json.loads(hk))
    assert f.prec == 13 and f[1] == 1 and f[2] == 3


def test_eigensystem(capsys, files, tmp_path):
    f = tmp_path / "f.json"
    run(capsys, "eisenstein", "--e2", "--prec", "600", "--output", str(f))
    g = tmp_path / "g.json"
    run(capsys, "refine", "--mode", "crit", "--prime", "5", "--input", str(f), "--output", str(g))
    run(capsys, "refine", "--mode", "ord", "--prime", "7", "--input", str(g), "--output", str(f))
    ops = [{"op": f"T:{l}", "eigenvalue": str(1 + l)} for l in (2, 3, 11, 13, 47)]
    ops += [{"op": "U:7", "eigenvalue": "1"}, {"op": "U:5", "eigenvalue": "5"}]
    spec = files("sys.json", {"operators": ops, "prime_bound": 50})
    code, out, _ = run(capsys, "eigensystem", "--spec", spec, "--input", str(f))
    assert code == 0 and out.splitlines()[-1] == "overall: pass"
    assert "U:5: expected 5 found 5 pass" in out
    bad = files("bad.json", {"operators": [{"op": "U:5", "eigenvalue": "1"}]})
    out = run(capsys, "eigensystem", "--spec", bad, "--input", str(f), "--json")[1]
    assert json.loads(out)["passed"] is False


def test_eisenstein_with_characters(capsys):
    code, out, _ = run(capsys, "eisenstein", "--k", "1", "--psi-modulus", "3", "--psi-index", "1", "--prec", "6")
    f = codec.decode_qexpansion(json.loads(out))
    assert code == 0 and f[0] == codec.decode_rational("1/6") and f[2] == 0 and f[3] == 1


def test_characters(capsys):
    out = run(capsys, "characters", "--modulus", "8")[1].splitlines()
    assert len(out) == 4 and out[0].startswith("0: exponents=[0, 0] order=1 conductor=1")
    rows = json.loads(run(capsys, "characters", "--modulus", "5", "--json")[1])
    assert [r["character"]["order"] for r in rows] == [1, 4, 2, 4]


def test_btree_commands(capsys, files):
    rep = files("rep.json", REP)
    code, out, _ = run(capsys, "btree", "stable-set", "--rep", rep, "--cap", "6")
    assert code == 0 and "length: 1" in out and "endpoints: -1,0 0,0" in out
    res = json.loads(run(capsys, "btree", "stable-set", "--rep", rep, "--json")[1])
    assert [v["b"] for v in res["vertices"]] == ["0", "0"] and res["unbounded"] is False
    out = run(capsys, "btree", "classify", "--rep", rep, "--vertex", "0,0")[1]
    assert "class: reducible-indecomposable" in out
    args = ["btree", "index-check", "--rep", rep, "--psi1", "M1=1,M2=1", "--psi2", "M1=1,M2=1", "--words", "6"]
    assert run(capsys, *args, "--n", "1")[1].endswith("holds\n")
    assert run(capsys, *args, "--n", "2")[1].endswith("fails\n")


@pytest.mark.parametrize(
    "argv,code,prefix",
    [
        (["bernoulli", "--k", "2", "--modulus", "1", "--char-index", "0", "--bogus"], 2, "error[argument]"),
        (["bernoulli", "--k", "2", "--modulus", "1", "--char-index", "5"], 2, "error[argument]"),
        (["bernoulli", "--k", "2", "--mod", "1", "--char-index", "0"], 2, "error[argument]"),
        (["bernoulli", "--k", "2", "--modulus", "4", "--char-index", "0"], 2, "error[argument]"),
        (["eisenstein", "--k", "3", "--prec", "5"], 1, "error[parity]"),
        (["eisenstein", "--prec", "5"], 2, "error[argument]"),
        (["selmer", "--problem", "/nonexistent/p.json"], 2, "error[argument]"),
        (["frobnicate"], 2, "error[argument]"),
    ],
)
def test_exit_codes(capsys, argv, code, prefix):
    got, out, err = run(capsys, *argv)
    assert got == code and out == "" and err.startswith(prefix) and len(err.splitlines()) == 1


def test_domain_errors(capsys, files, tmp_path):
    e2 = tmp_path / "e2.json"
    run(capsys, "eisenstein", "--e2", "--prec", "10", "--output", str(e2))
    code, _, err = run(capsys, "hecke", "--op", "U:7", "--input", str(e2))
    assert code == 1 and err.startswith("error[precision]")
    code, _, err = run(capsys, "hecke", "--op", "T:6", "--input", str(e2))
    assert code == 2 and "prime" in err
    unanchored = files("r.json", {"p": 3, "generators": [[["1", "1/3"], ["0", "1"]]]})
    code, _, err = run(capsys, "btree", "stable-set", "--rep", unanchored)
    assert code == 1 and err.startswith("error[no-anchor]")
    code, _, err = run(capsys, "btree", "classify", "--rep", files("rep.json", REP), "--vertex=-2,0")
    assert code == 1 and err.startswith("error[unstable]")


def test_malformed_json(capsys, files):
    code, _, err = run(capsys, "selmer", "--problem", files("bad.json", '{"p": 5,\n  "chi": }'))
    assert code == 2 and "line 2 column" in err
    code, _, err = run(capsys, "selmer", "--problem", files("bad2.json", {"p": 5}))
    assert code == 2 and err.startswith("error[decode]: $.chi")


def test_help_lists_flags(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["btree", "index-check", "--help"])
    assert exc.value.code == 0
    out = capsys.readouterr().out
    assert all(flag in out for flag in ("--rep", "--psi1", "--psi2", "--n", "--words"))


def test_deterministic_output(capsys, files):
    path = files("w1.json", codec.encode_selmer_problem(worked_cases()[5][1]))
    a = run(capsys, "selmer", "--problem", path, "--json")[1]
    b = run(capsys, "selmer", "--problem", path, "--json")[1]
    assert a == b


@pytest.mark.skipif(shutil.which("eiscurve") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["eiscurve", "bernoulli", "--k", "4", "--modulus", "1", "--char-index", "0"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "-1/30\n"
    proc = subprocess.run(["eiscurve", "selmer", "--problem", "-"], input="{not json", capture_output=True, text=True)
    assert proc.returncode == 2 and "line 1 column" in proc.stderr
