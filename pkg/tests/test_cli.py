import json
import subprocess
import sys

import pytest

from boolsens.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_measure_expression(capsys):
    code, out, _ = run(capsys, "measure", "-e", "x1 & x2", "-n", "2")
    d = json.loads(out)
    assert code == 0
    assert (d["s"], d["bs"], d["c"], d["d"], d["deg"]) == (2, 2, 2, 2, 2)


def test_measure_family_only(capsys):
    code, out, _ = run(capsys, "measure", "--family", "rubinstein", "--k", "4", "--only", "s")
    assert code == 0 and json.loads(out)["s"] == 4


def test_measure_syntax_error(capsys):
    code, _, err = run(capsys, "measure", "-e", "x1 &", "-n", "2")
    assert code == 2 and "position 4" in err


def test_measure_cap(capsys):
    code, _, err = run(capsys, "measure", "--family", "rubinstein", "--k", "4")
    assert code == 3 and "bs_full" in err


@pytest.mark.parametrize("argv", [
    ["measure", "-n", "2"],
    ["measure", "--family", "nope", "-n", "2"],
    ["measure", "--tt", "/nonexistent/file"],
    ["measure", "-e", "x1", "-n", "1", "--only", "zz"],
    ["huang", "-n", "2", "--submatrix", "0,9"],
    ["huang", "-n", "2", "--submatrix", "a,b"],
])
def test_input_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_table_and_tt_round_trip(capsys, tmp_path):
    p = tmp_path / "f.tt"
    assert run(capsys, "table", "-e", "x1 ^ x2 ^ x3", "-n", "3", "--out", str(p))[0] == 0
    assert p.read_text() == "3\n96\n"
    code, out, _ = run(capsys, "measure", "--tt", str(p), "--only", "s,deg")
    d = json.loads(out)
    assert code == 0 and d["s"] == 3 and d["deg"] == 3 and d["bs"] is None


def test_huang_square(capsys):
    code, out, _ = run(capsys, "huang", "-n", "3", "--check-square")
    assert code == 0 and out == "A²=3I: PASS\n"


def test_huang_submatrix(capsys):
    code, out, _ = run(capsys, "huang", "-n", "2", "--submatrix", "0,1,2")
    assert code == 0
    lam = float(out.splitlines()[0].split("=")[1])
    assert abs(lam - 2 ** 0.5) < 1e-9
    assert out.splitlines()[0] == "lambda1 = 1.41421356237"


def test_huang_files(capsys, tmp_path):
    vf = tmp_path / "v.txt"
    vf.write_text("2\n0\n1\n2\n")
    m, j = tmp_path / "a.txt", tmp_path / "a.json"
    code, out, _ = run(capsys, "huang", "-n", "2", "--spectrum", "--vertices", str(vf),
                       "--matrix-out", str(m), "--json", str(j))
    assert code == 0
    assert m.read_text().splitlines()[:2] == ["4", "0 1 1 0"]
    rep = json.loads(j.read_text())
    assert rep["multiplicity_plus_sqrt_n"] == 2 and rep["trace"] == 0
    assert rep["submatrix"]["max_degree"] == 2
    vf.write_text("3\n0\n")
    assert run(capsys, "huang", "-n", "2", "--vertices", str(vf))[0] == 2


def test_huang_cap(capsys):
    assert run(capsys, "huang", "-n", "13")[0] == 3


def test_subgraph(capsys, tmp_path):
    code, out, _ = run(capsys, "subgraph", "-e", "x1 & x2", "-n", "2", "--level", "0")
    d = json.loads(out)
    assert code == 0 and d["vertices"] == 3 and d["max_degree"] == 2 and d["gamma"] == 2
    vf = tmp_path / "v.txt"
    vf.write_text("2\n0\n1\n2\n")
    d = json.loads(run(capsys, "subgraph", "--vertices", str(vf))[1])
    assert d["lambda1_ge_sqrt_n"] is True and abs(d["lambda1"] - 2 ** 0.5) < 1e-9


def test_verify_chain(capsys):
    code, out, _ = run(capsys, "verify", "chain", "-n", "3")
    d = json.loads(out)
    assert code == 0 and d["checked"] == 256 and d["violations"] == []


def test_verify_chung(capsys):
    code, out, _ = run(capsys, "verify", "chung", "-n", "9")
    d = json.loads(out)
    assert code == 0 and d["witnesses"]["size_X"] == 255 and d["ok"]


def test_verify_unknown(capsys):
    assert run(capsys, "verify", "nope", "-n", "2")[0] == 2


def test_verify_out_and_summary(capsys, tmp_path):
    p = tmp_path / "r.json"
    code, out, err = run(capsys, "verify", "g", "-n", "2", "--out", str(p))
    assert code == 0 and out == "" and "PASS" in err
    assert json.loads(p.read_text())["witnesses"]["g_sqrt_n"] == 3


def test_verify_sampled_default_and_determinism(capsys):
    a = run(capsys, "verify", "huang", "-n", "5", "--samples", "30", "--seed", "4")[1]
    b = run(capsys, "verify", "huang", "-n", "5", "--samples", "30", "--seed", "4")[1]
    assert a == b and json.loads(a)["checked"] == 30


def test_verify_violation_exit_code(capsys, monkeypatch):
    from boolsens import verifier

    def broken(n, **kw):
        rep = verifier.verify_chung(n)
        rep.violations.append({"check": "forced"})
        return rep

    monkeypatch.setitem(verifier.CAMPAIGNS, "chung", broken)
    assert run(capsys, "verify", "chung", "-n", "4")[0] == 1


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "boolsens", "measure", "-e", "x1", "-n", "1", "--only", "s"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and json.loads(res.stdout)["s"] == 1
