import json
import subprocess
import sys

import pytest

from rootdual import cli


def run(*args):
    p = subprocess.run([sys.executable, "-m", "rootdual.cli", *args], capture_output=True, text=True)
    return p.returncode, p.stdout, p.stderr


def call(capsys, *args):
    rc = cli.main(list(args))
    return rc, json.loads(capsys.readouterr().out)


def test_describe_c3(capsys):
    rc, out = call(capsys, "describe", "C3-sc@R")
    assert rc == 0 and out["schema"] == "rootdual/v1"
    r = out["result"]
    assert (r["roots"], r["positive_roots"], r["w0_length"]) == (18, 9, 9)
    assert r["minus_one_in_W"] and r["center"] == ["Z/2"]


def test_involution_unitary_p_adic(capsys):
    rc, out = call(capsys, "involution", "2A2-sc@Qp3")
    assert rc == 0 and out["result"]["c_trivial"] is False
    assert all(out["result"]["checks"].values())


def test_negative_verdict_still_exits_zero(capsys):
    rc, out = call(capsys, "cohomology", "SL3@Qp7")
    assert rc == 0 and out["result"]["prop2"]["verdict"] == "fails"


def test_levi_and_eta(capsys):
    rc, out = call(capsys, "levi", "A2-sc@R", "--subset", "0")
    assert rc == 0 and out["result"]["target_subset"] == [1]
    rc, out = call(capsys, "eta", "2A3-sc@R", "--z", "0,0,0")
    assert rc == 0 and out["result"]["eta_value"] == "0"


def test_parse_error_exit_2():
    rc, out, err = run("describe", "A9-xx@R")
    assert rc == 2
    e = json.loads(out)["error"]
    assert e["kind"] == "parse" and e["position"] == 2
    assert "^" in err


def test_bad_input_exit_2(capsys):
    rc, out = call(capsys, "levi", "A2-sc@R", "--subset", "5")
    assert rc == 2 and out["error"]["kind"] == "input"
    rc, out = call(capsys, "eta", "A2-ad@R", "--z", "1/3,0")
    assert rc == 2


def test_invariant_violation_exit_3(capsys, monkeypatch):
    def broken(form, args):
        raise AssertionError("forced")
    monkeypatch.setitem(cli.COMMANDS, "describe", broken)
    rc, out = call(capsys, "describe", "A1-sc@R")
    assert rc == 3 and out["error"]["kind"] == "invariant"


def test_selftest():
    rc, out, _ = run("selftest")
    assert rc == 0 and json.loads(out)["result"]["passed"]


def test_output_is_deterministic():
    a = run("involution", "3D4-sc@Qp3")[1]
    b = run("involution", "3D4-sc@Qp3")[1]
    assert a == b and "elapsed_ms" not in a


def test_timing_flag(capsys):
    rc, out = call(capsys, "--timing", "describe", "A1-sc@R")
    assert rc == 0 and out["elapsed_ms"] >= 0


def test_catalog_lines(capsys):
    assert cli.main(["catalog", "--rank", "2", "--fields", "R"]) == 0
    lines = capsys.readouterr().out.splitlines()
    rows = [json.loads(l) for l in lines]
    assert rows and all(r["command"] == "catalog" for r in rows)
    assert len({r["input"] for r in rows}) == len(rows)


@pytest.mark.parametrize("val", ["1/0", "x"])
def test_bad_rationals(val):
    rc, _, err = run("eta", "A1-sc@R", "--z", val)
    assert rc == 2 and err
