from __future__ import annotations

import csv
import io
import json

import pytest

from tuttekit.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_tutte_circuit(capsys):
    code, out, _ = run(capsys, "tutte", "--graph", "circuit:m=4", "--format", "text")
    assert code == 0 and out == "x^3 + x^2 + x + y\n"


def test_tutte_methods_agree(capsys):
    outs = {run(capsys, "tutte", "--graph", "clan:jn:r=2,m=2", "--method", m)[1]
            for m in ("dc", "oracle", "transfer")}
    assert len(outs) == 1


def test_json_payload(capsys):
    code, out, _ = run(capsys, "flow", "--graph", "clan:jn:r=2,m=1", "--format", "json")
    body = json.loads(out)
    assert body == {"kind": "flow", "graph": "clan:jn:r=2,m=1", "polynomial": "q^4 - 5*q^3 + 9*q^2 - 7*q + 2"}


def test_evaluate_at(capsys):
    code, out, _ = run(capsys, "chromatic", "--graph", "complete:r=4", "--at", "5")
    assert "value: 120" in out


def test_counts(capsys):
    code, out, _ = run(capsys, "counts", "--graph", "clan:jn:r=2,m=2", "--format", "csv")
    rows = dict(csv.reader(io.StringIO(out)))
    assert rows["N_ST"] == "72" and rows["a"] == rows["a_1"]


def test_spanning_table_row(capsys):
    code, out, _ = run(capsys, "tables", "spanning", "--family", "jn")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["r", "e^z", "R1", "R2"]
    assert rows[1] == ["2", "3.464", "0.693", "0.786"]


def test_structure_table(capsys):
    code, out, _ = run(capsys, "tables", "structure")
    assert out.splitlines()[-1] == "8,128,128,127,120,99,64,29,8,1,704"


def test_alpha_table(capsys):
    code, out, _ = run(capsys, "tables", "alpha", "--lattice", "sq")
    assert "3,P,3.240,closed-form" in out.splitlines()


def test_alpha_command(capsys):
    code, out, _ = run(capsys, "alpha", "--lattice", "tri", "--Ly", "3", "--bc", "P", "--format", "json")
    body = json.loads(out)
    assert abs(body["alpha_fit"] - 4.14082) < 1e-5 and body["alpha_fit"] == body["alpha_closed"]


def test_locus_negative_window(capsys):
    argv = ["locus", "--family", "clan:jn:r=3", "--fix", "v=-0.9", "--window", "-1:7:-3.5:3.5",
            "--res", "60", "--format", "csv"]
    code, out, _ = run(capsys, *argv)
    assert code == 0 and out.startswith("re,im,kind,label\n")
    _, out2, _ = run(capsys, *argv, "--threads", "4")
    assert out == out2


def test_zeros(capsys):
    code, out, _ = run(capsys, "zeros", "--family", "clan:jn:r=2,m=2", "--poly", "F", "--format", "json")
    body = json.loads(out)
    assert len(body["points"]) == 7 and [2.0, 0.0] in body["points"]


def test_usage_errors(capsys):
    assert run(capsys, "tutte", "--graph", "nope:1")[0] == 2
    assert run(capsys, "locus", "--family", "clan:jn:r=3", "--window", "1:0:0:1")[0] == 2
    assert run(capsys, "alpha", "--lattice", "sq", "--Ly", "2", "--bc", "P", "--route", "closed")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["tutte"])
    assert exc.value.code == 2


def test_guard_exit(capsys):
    code, _, err = run(capsys, "tutte", "--graph", "sq:Ly=3,Lx=8", "--method", "oracle")
    assert code == 3 and "guard" in err


def test_verify_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "clan-r3")
    assert code == 0 and out.strip().endswith("checks passed")
    assert "FAIL" not in out


def test_output_file(tmp_path, capsys):
    path = tmp_path / "t.json"
    assert main(["potts", "--graph", "circuit:m=3", "--format", "json", "-o", str(path)]) == 0
    assert json.loads(path.read_text())["kind"] == "potts"
