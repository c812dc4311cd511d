import io
import json

import pytest

from salemlab.cli import run, to_json


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def test_classify_json():
    code, out, _ = call("classify", "--poly", "1,1,0,-1")
    assert code == 0
    d = json.loads(out)
    assert list(d)[:2] == ["verdict", "value"]
    assert d["verdict"] == "Pisot"
    assert d["value"] == pytest.approx(1.324717957, abs=1e-9)


def test_json_is_canonical():
    code, out, _ = call("classify", "--poly", "1,1,0,-1,-1,-1,-1,-1,0,1,1")
    assert to_json(json.loads(out)) + "\n" == out


def test_identical_argv_identical_bytes():
    argv = ("salem-seq", "--poly", "1,1,0,-1", "--eta", "1", "--m", "10")
    assert call(*argv) == call(*argv)


def test_twelve_significant_digits():
    _, out, _ = call("measure", "--poly", "1,1,0,-1", "--format", "text")
    value = out.splitlines()[1].split(": ")[1]
    assert value == "1.32471795724"


def test_oracle_check_passes():
    code, out, _ = call("classify", "--poly", "1,-1,-1,-1,1", "--oracle-check")
    assert code == 0
    assert json.loads(out)["oracle"]["brute_force_irreducible"] is True
    code, _, _ = call("roots", "--poly", "1,1,0,-1", "--oracle-check")
    assert code == 0


def test_family_identities():
    code, out, _ = call("family", "--kind", "beta", "--u0", "2", "--s", "3", "--check-identities")
    assert code == 0
    d = json.loads(out)
    eq20 = [r for r in d["identities"] if r["identity_id"].startswith("Eq20.")]
    assert eq20 and all(r["holds"] for r in eq20)
    assert d["sprime"] is True


def test_scan_csv():
    code, out, _ = call("scan", "--degree", "10", "--height", "1", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "poly,tau"
    assert lines[1].startswith('"1,1,0,-1,-1,-1,-1,-1,0,1,1",1.17628081826')


def test_iterate_csv():
    code, out, _ = call("iterate", "--kind", "alpha", "--u0", "2", "--s", "3", "--format", "csv")
    assert code == 0
    assert out.splitlines()[0] == "n,a_n,F_n0,all_hold"
    rows = out.splitlines()[1:]
    # step 1 carries the displayed first-step form, which differs by a sign
    assert rows[0].endswith("False")
    assert all(r.endswith("True") for r in rows[1:])


def test_associate():
    code, out, _ = call("associate", "--poly", "1,-1,-2,-1,1", "--m", "2", "--eta", "-1")
    assert code == 0
    assert any(a["P"] == "1,1,-1" for a in json.loads(out)["associations"])


def test_verify_identities_summary():
    code, out, _ = call("verify-identities", "--kind", "beta")
    assert code == 0
    summary = {s["identity_id"]: s for s in json.loads(out)["summary"]}
    assert summary["Eq20.QzA"]["holds"] == summary["Eq20.QzA"]["evaluated"] == 28


def test_closure():
    code, out, _ = call("closure", "--lo", "1.17", "--hi", "1.33", "--budget", "50")
    assert code == 0 and json.loads(out)["examined"] == 50


def test_usage_errors():
    assert call("classify")[0] == 2
    assert call("classify", "--poly", "1,x")[0] == 2
    assert call("nonsense")[0] == 2
    assert call("family", "--kind", "beta", "--eps", "2")[0] == 2


def test_domain_error_exit_one():
    code, out, err = call("family", "--kind", "uv_beta", "--u0", "2", "--v0", "5", "--s", "3")
    assert code == 1 and out == ""
    assert json.loads(err)["error"] == "ValueError"
    code, _, err = call("associate", "--poly", "1,1,0,-1", "--m", "1", "--eta", "1")
    assert code == 1 and "reciprocal" in err


def test_negative_leading_poly_spelling():
    code, out, _ = call("roots", "--poly=-1,0,1")
    assert code == 0 and json.loads(out)["on"] == 2
