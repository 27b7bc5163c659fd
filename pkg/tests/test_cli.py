import json
import subprocess
import sys

import pytest

from matchdual.cli import main
from matchdual.instances import six_point_example


@pytest.fixture
def files(tmp_path):
    (tmp_path / "six.json").write_text(json.dumps(six_point_example().to_json()))
    (tmp_path / "odd.json").write_text(json.dumps({"n": 3, "d": [[0, 1, 1], [1, 0, 1], [1, 1, 0]]}))
    (tmp_path / "bad.json").write_text(json.dumps({"n": 2, "d": [[0, 1], [2, 0]]}))
    (tmp_path / "square.csv").write_text("1,1\n1,-1\n-1,-1\n-1,1\n")
    cyc = {"vertices": list(range(6)), "edges": [[i, (i + 1) % 6, 1.0] for i in range(6)],
           "terminals": [0, 3], "partition": {"plus": [0], "minus": [3]}}
    (tmp_path / "cycle.json").write_text(json.dumps(cyc))
    path = {"vertices": [0, 1, 2, 3], "edges": [[0, 1, 1.0], [1, 2, 1.0], [2, 3, 1.0]], "terminals": [0, 3]}
    (tmp_path / "path.json").write_text(json.dumps(path))
    (tmp_path / "phi.json").write_text(json.dumps({"values": {"0": 0, "1": 1, "2": 2, "3": 3}}))
    return tmp_path


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_match(files, capsys):
    code, out = run(capsys, "match", "--metric", files / "six.json")
    assert code == 0
    obj = json.loads(out)
    assert obj["value"] == 4.0 and len(obj["pairs"]) == 3


def test_errors(files, capsys):
    code, out = run(capsys, "match", "--metric", files / "odd.json")
    assert code == 2
    assert json.loads(out)["error"]["kind"] == "OddCardinality"
    code, out = run(capsys, "validate", "--metric", files / "bad.json")
    assert code == 2 and json.loads(out)["error"]["kind"] == "AsymmetricInput"
    code, out = run(capsys, "match", "--metric", files / "missing.json")
    assert code == 2 and json.loads(out)["error"]["kind"] == "FileNotFound"
    code, out = run(capsys, "match", "--metric", files / "six.json", "--tol", "-1")
    assert code == 2


def test_certify_square(files, capsys):
    code, out = run(capsys, "certify", "--points", files / "square.csv", "--norm", "l2")
    obj = json.loads(out)
    assert code == 0
    assert obj["H1"] == pytest.approx(4.0)
    assert obj["report"]["ok"]


def test_dualize_and_tree(files, capsys):
    code, out = run(capsys, "dualize", "--metric", files / "six.json")
    obj = json.loads(out)
    assert obj["tree_like"] and obj["m"] == 4.0 and obj["D"][4][5] == 0.0
    code, out = run(capsys, "tree", "--metric", files / "six.json")
    assert code == 2 and json.loads(out)["error"]["kind"] == "NotTreeLike"
    code, out = run(capsys, "tree", "--metric", files / "six.json", "--dual")
    assert code == 0 and json.loads(out)["H1"] == 4.0


def test_oriented(files, capsys):
    code, out = run(capsys, "oriented", "--points", files / "square.csv", "--plus", "0,2", "--minus", "1,3")
    obj = json.loads(out)
    assert obj["value"] == pytest.approx(4) and obj["gap"] == pytest.approx(4)
    code, out = run(capsys, "oriented", "--points", files / "square.csv", "--plus", "0", "--minus", "1,3")
    assert code == 2 and json.loads(out)["error"]["kind"] == "InvalidPartition"


def test_calibration_commands(files, capsys):
    _, out = run(capsys, "calib-fill", "--graph", files / "cycle.json")
    assert json.loads(out)["mass"] == 3.0
    _, out = run(capsys, "calib-lev", "--graph", files / "cycle.json")
    assert json.loads(out)["lev"] == 0.0
    _, out = run(capsys, "calib-lev", "--graph", files / "path.json", "--function", files / "phi.json")
    assert json.loads(out)["lev"] == 3.0
    _, out = run(capsys, "calib-levz", "--graph", files / "cycle.json")
    obj = json.loads(out)
    assert obj["lev_z"] == pytest.approx(obj["M"]) == pytest.approx(3)


def test_dimension_commands(files, capsys):
    _, out = run(capsys, "dim-mk", "--points", files / "square.csv", "--k", "2,4")
    lines = out.splitlines()
    assert lines[0] == "k,value,mode,trial,seed"
    assert float(lines[2].split(",")[1]) == 4.0
    _, out = run(capsys, "dim-eps", "--points", files / "square.csv", "--eps", "3", "--mode", "heuristic")
    assert out.splitlines()[1].split(",")[1] == "0.0"
    _, out = run(capsys, "comb-tree", "--exponent", "2", "--K", "4")
    assert [float(r.split(",")[1]) for r in out.splitlines()[1:]] == pytest.approx([1, 2**0.5, 3**0.5, 2])
    _, out = run(capsys, "comb-tree", "--K", "2", "--format", "json")
    assert len(json.loads(out)["legs"]) == 4


def test_round_trip_and_determinism(files, capsys):
    _, a = run(capsys, "certify", "--metric", files / "six.json")
    _, b = run(capsys, "certify", "--metric", files / "six.json")
    assert a == b
    obj = json.loads(a)
    assert json.dumps(obj) == a.strip()


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "matchdual", "match", "--metric", str(files / "six.json")],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["value"] == 4.0
