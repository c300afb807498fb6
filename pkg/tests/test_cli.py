import json
import subprocess
import sys

import pytest

from pgl3zeta.cli import main
from pgl3zeta.ingest import dumps_complex


@pytest.fixture(scope="module")
def q2_file(tmp_path_factory, q2):
    path = tmp_path_factory.mktemp("cli") / "q2.json"
    path.write_text(dumps_complex(q2))
    return path


def test_local_check(capsys):
    assert main(["local-check", "--q", "2"]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["right_inverse"]["corrected_is_right_inverse"] is True
    assert out["right_inverse"]["claimed_is_right_inverse"] is False
    assert out["star"]["neighbours"] == 14
    assert out["discrepancies"]


def test_generate_and_validate(tmp_path, capsys):
    path = tmp_path / "g.json"
    assert main(["generate", "--q", "2", "--seed", "0", "--out", str(path)]) == 0
    assert main(["validate", "--in", str(path)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["ok"] and out["violations"] == []


def test_generate_is_deterministic(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    main(["generate", "--q", "3", "--seed", "4", "--out", str(a)])
    main(["generate", "--q", "3", "--seed", "4", "--out", str(b)])
    assert a.read_bytes() == b.read_bytes()


def test_validate_broken(q2_file, tmp_path, capsys):
    obj = json.loads(q2_file.read_text())
    obj["chambers"] = obj["chambers"][1:]
    bad = tmp_path / "broken.json"
    bad.write_text(json.dumps(obj))
    assert main(["validate", "--in", str(bad)]) == 1
    out = json.loads(capsys.readouterr().out)
    assert not out["ok"] and len(out["violations"]) == 4


def test_validate_unparsable(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"q": 2,\n')
    assert main(["validate", "--in", str(bad)]) == 1
    assert "line" in json.loads(capsys.readouterr().out)["violations"][0]


def test_operators(q2_file, tmp_path):
    out = tmp_path / "ops.json"
    assert main(["operators", "--in", str(q2_file), "--out", str(out), "--n-max", "4"]) == 0
    rep = json.loads(out.read_text())
    assert rep["T"]["rows"] == 21
    assert set(rep["A"]) == {"1", "2", "3", "4"}
    assert rep["checks"]["hecke_hard_ok"]
    assert rep["checks"]["trace_T_vs_trace_A"]["equal"] is False


def test_zeta_byte_identical(q2_file, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["zeta", "--in", str(q2_file), "--out", str(a), "--order", "8"]) == 0
    assert main(["zeta", "--in", str(q2_file), "--out", str(b), "--order", "8"]) == 0
    assert a.read_bytes() == b.read_bytes()
    rep = json.loads(a.read_text())
    for key in ("Z1", "Z2", "D", "Z", "certificates", "degree_audit"):
        assert key in rep
    assert rep["certificates"]["Z1_divides_D_power"]["found"] is False


def test_enumerate(q2_file, capsys):
    assert main(["enumerate", "--in", str(q2_file), "--n-max", "6", "--gallery-n-max", "1"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "n,geodesic_sum,trace_T_n,gallery_sum,trace_L_n,match"
    assert lines[1] == "1,0,0,60,1728,false"
    assert lines[6] == "6,12270,12270,,,true"


@pytest.mark.parametrize(
    "argv",
    [
        [],
        ["zeta"],
        ["zeta", "--in", "does-not-exist.json"],
        ["enumerate", "--in", "x.json", "--n-max", "11"],
        ["zeta", "--in", "x.json", "--order", "13"],
        ["local-check", "--q", "6"],
        ["frobnicate"],
    ],
)
def test_usage_errors(argv, capsys):
    assert main(argv) == 2


def test_output_dir_missing(q2_file):
    assert main(["zeta", "--in", str(q2_file), "--out", "/no/such/dir/out.json"]) == 2


def test_module_entry_point(q2_file):
    proc = subprocess.run(
        [sys.executable, "-m", "pgl3zeta", "validate", "--in", str(q2_file), "--out", "-"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["ok"] is True
