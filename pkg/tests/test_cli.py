import csv
import io
import json
import subprocess
import sys

import pytest

from ratvec.cli import run

SURD_W = "(156303 - 9*sqrt(10054801))/211888"


def call(*argv, env=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, err = call(*argv, "--json")
    doc = json.loads(out)
    assert doc["schema_version"] == "v1"
    assert {"verdict", "region", "values", "diagnostics", "command"} <= set(doc)
    return code, doc


def test_forward_four_rational_roots():
    code, doc = call_json("forward", "--roots", "1,3/2,13/8,7/4")
    assert code == 0 and doc["region"] == "Z1"
    approx = doc["values"]["approx"]
    for got, want in zip(approx["critical_points"], (1.1506, 1.5560, 1.6996)):
        assert abs(got - want) < 5e-4
    bounds = {b["name"]: b["approx"] for b in doc["values"]["bounds"]}
    assert abs(bounds["v_lower"] - 0.3578) < 5e-4
    assert abs(bounds["w_upper"] - 0.6483) < 5e-4


def test_forward_float_path():
    code, doc = call_json("forward", "--roots", "1.0,1.5,1.625,1.75")
    assert code == 0
    assert abs(doc["values"]["u"] - 0.3013) < 5e-4


def test_forward_text_output():
    code, out, _ = call("forward", "--roots=-1,0,1/20,21/20")
    assert code == 0
    assert "u: 3/10" in out and "region: Z2" in out


def test_check_exit_codes():
    assert call("check", "--uvw", "3/10,1/2,7/10")[0] == 0
    assert call("check", "--uvw", "9/32,4/9,7/10")[0] == 1
    assert call("check", "--uvw", "0.3,0.5,0.7", "--exact")[0] == 2
    assert call("check", "--uvw", "1/0,1/2,1/2")[0] == 2
    assert call("check", "--uvw", "1/2,1/2")[0] == 2


def test_check_reports_k():
    _, doc = call_json("check", "--uvw", "9/32,4/9,7/10")
    assert doc["values"]["k"] == "-127/12960"
    assert doc["verdict"] == "not-ratio-vector"


def test_solve_w_and_reconstruct_surd_point():
    code, doc = call_json("solve-w", "--u", "15/32", "--v", "5/9")
    assert code == 0 and doc["region"] == "Z3"
    member = [s for s in doc["values"]["solutions"] if s["is_ratio_vector"]]
    assert member[0]["text"] == SURD_W
    code, doc = call_json("reconstruct", "--uvw", f"15/32,5/9,{SURD_W}")
    assert code == 0
    vals = doc["values"]
    assert abs(vals["approx"]["r"] - 5.9821) < 5e-4
    assert abs(vals["approx"]["s"] - 9.7305) < 5e-4
    assert vals["derivative_at_critical_points"] == ["0", "0", "0"]
    assert vals["critical_points_exact"] is True


def test_reconstruct_non_member_and_unchecked():
    assert call("reconstruct", "--uvw", "9/32,4/9,7/10")[0] == 1
    code, doc = call_json("reconstruct", "--uvw", "9/32,4/9,7/10", "--unchecked")
    assert code == 1 and doc["values"]["off_variety"] is True


def test_line_and_bounds():
    code, doc = call_json("line", "--c", "3/10")
    assert code == 0 and doc["values"]["r"] == "1/20" and doc["values"]["s"] == "21/20"
    assert call("line", "--c", "1/4")[0] == 1
    code, doc = call_json("bounds", "--n", "4", "--k", "2")
    assert code == 0 and (doc["values"]["lower"], doc["values"]["upper"]) == ("1/3", "2/3")
    assert call("bounds", "--n", "4", "--k", "4")[0] == 2


def test_verify_identities():
    code, doc = call_json("verify-identities")
    assert code == 0 and doc["verdict"] == "pass"
    assert len(doc["values"]["identities"]) == 10
    assert call("verify-identities", "--only", "I99")[0] == 2


def test_sample_to_file_and_recheck(tmp_path):
    path = tmp_path / "rows.csv"
    code, out, _ = call("sample", "--count", "25", "--seed", "9", "--out", str(path))
    assert code == 0
    summary = json.loads(out)
    assert summary["values"]["violations"] == []
    rows = list(csv.DictReader(path.open()))
    assert len(rows) == 25
    for row in rows[:5]:
        uvw = ",".join(row[k] for k in ("u", "v", "w"))
        assert call("check", "--uvw", uvw)[0] == 0
        code, doc = call_json("reconstruct", "--uvw", uvw)
        assert code == 0
        assert abs(doc["values"]["r"] - float(row["r"])) <= 1e-6 * float(row["r"])


def test_sample_stdout_and_env_tolerance(monkeypatch):
    code, out, err = call("sample", "--count", "3", "--seed", "1")
    assert code == 0 and out.startswith("r1,r2,r3,r4,u,v,w")
    assert json.loads(err)["command"] == "sample"
    monkeypatch.setenv("RATVEC_DEFAULT_TOL", "1e-6")
    code, _, _ = call("sample", "--count", "3", "--seed", "1")
    assert code == 1          # looser bisection no longer meets the residual budget
    monkeypatch.setenv("RATVEC_DEFAULT_TOL", "bogus")
    assert call("sample", "--count", "3", "--seed", "1")[0] == 2


def test_sample_invalid_count():
    assert call("sample", "--count", "0", "--seed", "1")[0] == 2


def test_argparse_errors_are_input_errors():
    assert call("forward")[0] == 2
    assert call("nonsense")[0] == 2


def test_console_script_entry_point():
    proc = subprocess.run([sys.executable, "-m", "ratvec.cli", "bounds", "--n", "5", "--k", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "1/5" in proc.stdout
