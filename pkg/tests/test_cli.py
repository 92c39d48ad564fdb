import io
import json
import subprocess
import sys

import pytest

from extutte import cli, data, suites
from extutte.ring import Poly


def run(argv):
    out = io.StringIO()
    code = cli.main(argv, out=out)
    return code, out.getvalue()


@pytest.fixture
def k4_file(tmp_path):
    path = tmp_path / "k4.net"
    path.write_text(data.K4_NET)
    return str(path)


@pytest.fixture
def series_file(tmp_path):
    path = tmp_path / "series.net"
    path.write_text("edge p1 a c port\nedge p2 a c port\nedge e1 a b r=1\nedge e2 b c r=1\n")
    return str(path)


def test_me_coordinates(k4_file):
    argv = ["me", k4_file]
    for key in data.K4_COORDS:
        argv += ["--coord", ",".join(key)]
    code, text = run(argv)
    assert code == 0
    assert text.splitlines() == list(data.K4_COORDS.values())


def test_me_json(k4_file):
    code, text = run(["me", k4_file, "--coord", "v1,i1,v3", "--json"])
    assert code == 0
    payload = json.loads(text)
    assert Poly.from_json(payload["v1,i1,v3"]) == Poly.parse(data.K4_COORDS[("v1", "i1", "v3")])


def test_me_full_listing(k4_file):
    code, text = run(["me", k4_file])
    assert code == 0
    assert "[v1 v2 v3] = " + data.K4_COORDS[("v1", "v2", "v3")] in text


def test_me_zero_extensor(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text(json.dumps({"ports": ["p1"], "nonports": ["e1"], "matrix": [[0, 0]]}))
    code, text = run(["me", str(path), "--coord", ""])
    assert code == 0
    assert text == "0\n"


def test_k4_demo_is_deterministic():
    code, first = run(["k4-demo"])
    _, second = run(["k4-demo"])
    assert code == 0 and first == second
    for value in data.K4_COORDS.values():
        assert value in first
    assert "its maximal minors equal M(N): True" in first


def test_verify_pass():
    code, text = run(["verify", "sum", "--random", "10", "--seed", "3", "--max-size", "5"])
    assert code == 0
    assert text.startswith("sum: PASS (10 instances")


def test_verify_failure_prints_counterexample(monkeypatch):
    def broken(count=1, seed=0, max_size=3):
        res = suites.SuiteResult("sum", instances=1)
        res.check(False, "N=[[1]] P=() E=(e1,)")
        return res

    monkeypatch.setitem(suites.SUITES, "sum", broken)
    code, text = run(["verify", "sum"])
    assert code == 2
    assert "FAIL" in text
    assert "counterexample: N=[[1]]" in text


def test_tree(k4_file):
    code, text = run(["tree", k4_file])
    assert code == 0 and text.startswith("reduce e4")
    code, text = run(["tree", k4_file, "--order", "e4,e3,e2,e1"])
    assert code == 0 and text.startswith("reduce e1")
    code, text = run(["tree", k4_file, "--json"])
    assert json.loads(text)["root"]["element"] == "e4"


def test_tree_bad_order(k4_file, capsys):
    code, _ = run(["tree", k4_file, "--order", "e1,e2"])
    assert code == 1
    assert "--order" in capsys.readouterr().err


def test_rankpoly(series_file):
    code, text = run(["rankpoly", series_file])
    assert code == 0 and "[ports=" in text
    code, text = run(["rankpoly", series_file, "--json"])
    assert code == 0 and "terms" in json.loads(text)


def test_maxwell(series_file):
    code, text = run(["maxwell", series_file])
    assert code == 0
    assert text.splitlines()[-1] == "agree: True"
    code, text = run(["maxwell", series_file, "--json"])
    assert json.loads(text)["agree"] is True


def test_errors_exit_one(tmp_path, capsys):
    bad = tmp_path / "bad.net"
    bad.write_text("edge e1 a\n")
    code, _ = run(["me", str(bad)])
    assert code == 1
    assert "line 1" in capsys.readouterr().err
    code, _ = run(["me", str(tmp_path / "missing.net")])
    assert code == 1


def test_module_entry_point(k4_file):
    proc = subprocess.run(
        [sys.executable, "-m", "extutte", "me", k4_file, "--coord", "v1,i1,v3"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.strip() == data.K4_COORDS[("v1", "i1", "v3")]
