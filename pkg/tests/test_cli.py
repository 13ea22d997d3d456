import csv
import io
import json
import subprocess
import sys

import pytest

from circdet.cli import run, stringify


def call(*argv):
    buf = io.StringIO()
    code = run(list(argv), buf)
    return code, [json.loads(line) for line in buf.getvalue().splitlines() if line.strip()]


def test_member_z25():
    code, out = call("member", "--n", "25", "1375", "26375")
    assert code == 0
    assert [o["decision"] for o in out] == ["Member", "NonMember"]
    assert out[0]["value"] == "1375"


def test_strict_exit_code():
    code, _ = call("--strict", "member", "--n", "25", "26375")
    assert code == 1
    code, _ = call("--strict", "member", "--n", "25", "1375")
    assert code == 0


def test_general_check():
    _, out = call("member", "--p", "5", "--t", "2", "125")
    assert out[0]["status"] == "Excluded"


def test_classify_with_certificates():
    code, out = call("classify", "--p", "5", "--q", "4871", "11")
    assert code == 0
    assert [o["label"] for o in out] == ["Artiad", "Perissad"]
    certs = out[0]["certificates"]
    assert {"reduction", "fibonacci", "quintic", "jacobi", "dickson"} <= set(certs)


def test_classify_mod9_context():
    _, out = call("classify", "--p", "3", "--q", "73", "13")
    assert out[0]["context"] == "mod9" and out[0]["label"] == "Type3"
    assert out[1]["context"] == "mod3" and out[1]["label"] == "Type1"


def test_witness_roundtrip():
    from circdet.cyclo import measure
    from circdet.poly import IntPoly

    code, out = call("witness", "--n", "27", "--q", "73", "--level", "5")
    assert code == 0 and out[0]["verified"] is True
    F = IntPoly.parse(out[0]["F"])
    assert measure(F, 3, 3)[0] == int(out[0]["target"]) == 17739


def test_witness_target_and_mismatch():
    _, out = call("witness", "--n", "25", "--target", "4125")
    assert out[0]["verified"] and out[0]["target"] == "4125"
    code, out = call("--strict", "witness", "--n", "25", "--q", "211")
    assert code == 1 and out[0]["error"] == "TypeMismatch"


def test_search_to_file_and_audit(tmp_path):
    path = str(tmp_path / "z27.jsonl")
    code, out = call("search", "--p", "3", "--t", "3", "--coeffs", "0,1", "--max-degree", "9", "--f1", "3", "--out", path)
    assert code == 0 and out[0]["status"] == "complete"
    code, out = call("--strict", "audit", path)
    assert code == 0 and out[0]["clean"] is True


def test_search_stream_and_probe():
    _, out = call("search", "--p", "3", "--t", "3", "--coeffs", "0,1", "--max-degree", "9", "--f1", "3")
    assert any(o["F"] == "1,0,0,0,0,0,0,0,1,1" and o["measure"] == "1539" for o in out)
    _, out = call("search", "--p", "5", "--t", "2", "--max-degree", "8", "--f1", "5,-5", "--probe", "3")
    assert out[0]["hits"] == []


def test_tables():
    _, out = call("tables", "--context", "mod5", "--bound", "12")
    assert out[0]["lists"] == {"Perissad": ["11"], "Artiad": []}


def test_csv_output():
    buf = io.StringIO()
    assert run(["--csv", "member", "--n", "25", "1375", "7"], buf) == 0
    rows = list(csv.reader(io.StringIO(buf.getvalue())))
    assert rows[0][:3] == ["value", "group", "decision"]
    assert rows[1][2] == "Member" and len(rows) == 3


def test_usage_errors():
    assert run(["member", "--n", "26", "5"], io.StringIO()) == 2
    code, out = call("classify", "--p", "5", "--q", "13")
    assert code == 2 and out[0]["error"] == "NotApplicable"


def test_stringify_keeps_big_ints_exact():
    big = 3**200
    assert stringify({"a": [big, True, None]}) == {"a": [str(big), True, None]}


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "circdet", "member", "--n", "27", "1539"], capture_output=True, text=True)
    assert res.returncode == 0
    assert json.loads(res.stdout)["decision"] == "Member"
