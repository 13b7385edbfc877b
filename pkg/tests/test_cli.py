import io
import json
import subprocess
import sys

import pytest

from suspcert.cli import run_cli
from suspcert.serialize import parse_certificate_json

A_TEXT = "0,0,0,-1;1,0,0,2;0,1,0,0;0,0,1,2"


def run(argv):
    buf = io.StringIO()
    code = run_cli(argv, buf)
    return code, buf.getvalue()


@pytest.mark.parametrize(
    "argv, code",
    [
        (["certify", "--a", "2", "--b", "0"], 0),
        (["certify", "--a", "2", "--b", "0", "--format", "json", "--recheck"], 0),
        (["certify", "--poly", "1,-2,0,-2,1"], 0),
        (["certify", "--a", "1", "--b", "1"], 1),
        (["certify", "--a", "0", "--b", "2"], 1),
        (["certify", "--a", "0", "--b", "3", "--recheck"], 1),
        (["certify", "--poly", "2,-2,0,-2,1"], 2),  # not reciprocal
        (["certify", "--poly", "1,0,-1,-3,-1,0,1"], 2),  # degree 6
        (["certify", "--poly", "1,x"], 2),
        (["certify", "--a", "2"], 2),
        (["certify", "--a", "2", "--b", "0", "--poly", "1,0,1"], 2),
        (["search", "--a-min", "2", "--a-max", "2", "--b-min", "0", "--b-max", "0"], 0),
        (["search", "--a-min", "0", "--a-max", "0", "--b-min", "0", "--b-max", "0"], 1),
        (["search", "--a-min", "1", "--a-max", "0", "--b-min", "0", "--b-max", "0"], 2),
        (["classify", "--a", "1", "--b", "1", "--format", "json"], 0),
        (["snf", "--matrix", A_TEXT, "--shift", "-1"], 0),
        (["snf", "--matrix", "1,2;3"], 2),
        (["abelianize", "--matrix", A_TEXT, "--m", "2", "--format", "json"], 0),
        (["abelianize", "--matrix", A_TEXT, "--generators", "1,0,0,0|0"], 2),
        (["metric", "--a", "1", "--b", "1"], 2),
        (["metric", "--a", "2", "--b", "0"], 0),
        (["frobnicate"], 2),
        ([], 2),
    ],
)
def test_exit_codes(argv, code):
    assert run(argv)[0] == code


def test_certify_text_output(capsys):
    code, out = run(["certify", "--a", "1", "--b", "1"])
    assert code == 1
    assert "verdict: not_counterexample" in out
    assert "reason: cyclotomic: Phi_10 divides p" in capsys.readouterr().err


def test_certify_json_is_parseable():
    code, out = run(["certify", "--a", "2", "--b", "0", "--format", "json"])
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "cert/1"
    assert data["verdict"] == "counterexample"
    assert data["metric_rank"] == 3 and data["fibration_bound"] == 1
    cert = parse_certificate_json(out.strip())
    assert cert.parameters == (2, 0)


def test_snf_output():
    assert run(["snf", "--matrix", A_TEXT, "--shift", "-1"])[1] == "1,1,1,2\n"
    data = json.loads(run(["snf", "--matrix", A_TEXT, "--shift", "-1", "--format", "json"])[1])
    assert data["divisors"] == ["1", "1", "1", "2"]


def test_abelianize_output():
    assert run(["abelianize", "--matrix", A_TEXT])[1] == "free_rank: 1\ntorsion: 2\n"
    code, out = run(["abelianize", "--matrix", A_TEXT, "--generators", "0,0,0,0|2;1,0,0,0|0;0,1,0,0|0"])
    assert code == 0 and out.startswith("free_rank: 1")


def test_search_json_envelope(capsys):
    code, out = run(["search", "--a-min", "-3", "--a-max", "3", "--b-min", "-3", "--b-max", "3",
                     "--format", "json", "--recheck"])
    assert code == 0
    data = json.loads(out)
    assert data["schema"] == "search/1"
    assert data["count"] == 24 == len(data["certificates"])
    assert "searched 49 pairs, 24 counterexamples" in capsys.readouterr().err


def test_search_output_is_deterministic():
    argv = ["search", "--a-min", "-2", "--a-max", "2", "--b-min", "-2", "--b-max", "2", "--format", "json"]
    first = run(argv)[1]
    assert run(argv + ["--jobs", "2"])[1] == first


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "suspcert", "certify", "--a", "2", "--b", "0"],
        capture_output=True, text=True, timeout=60,
    )
    assert proc.returncode == 0
    assert "metric_rank: 3" in proc.stdout
