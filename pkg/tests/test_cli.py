import json

import pytest

from jnrange import fixtures, io
from jnrange.cli import main


@pytest.fixture
def triple_file(tmp_path):
    def make(example_id):
        path = tmp_path / f"{example_id}.json"
        path.write_text(json.dumps(fixtures.load(example_id).to_json()))
        return path
    return make


def test_classify_report_is_deterministic(triple_file, tmp_path):
    src = triple_file("E9")
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["classify", str(src), "--out", str(a)]) == 0
    assert main(["classify", str(src), "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    report = json.loads(a.read_text())
    assert report["class_index"] == 9
    assert report["corner_points"] == [[1.0, 1.0, 0.0]]
    assert report["input_digest"] == io.digest(fixtures.load("E9").triple)


def test_classify_degenerate(tmp_path):
    path = tmp_path / "flat.json"
    path.write_text(json.dumps({"matrices": [[[float(i == j) * i for j in range(4)] for i in range(4)],
                                             [[0.0] * 4] * 4, [[0.0] * 4] * 4]}))
    assert main(["classify", str(path)]) == 3


def test_input_errors(tmp_path, triple_file, capsys):
    assert main(["classify", str(tmp_path / "missing.json")]) == 1
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["spectrum", str(bad)]) == 1
    assert main(["boundary", str(triple_file("E14")), "--dirs", "3", "--out", str(tmp_path / "m.obj")]) == 1
    with pytest.raises(SystemExit) as exc:
        main(["classify"])
    assert exc.value.code == 1
    assert main(["classify", str(triple_file("ex5-1-n5"))]) == 1


def test_boundary_with_separable(triple_file, tmp_path):
    out = tmp_path / "w.obj"
    assert main(["boundary", str(triple_file("E14")), "--dirs", "40", "--sep", "--out", str(out)]) == 0
    verts, tris = io.read_obj(out)
    assert len(verts) == 4 and len(tris) == 4
    assert (tmp_path / "w_sep.obj").exists()
    rows = (tmp_path / "w_gap.csv").read_text().splitlines()
    assert rows[0] == "ux,uy,uz,w_support,sep_support,gap" and len(rows) == 41
    assert max(abs(float(r.split(",")[-1])) for r in rows[1:]) < 1e-6


def test_spectrum(triple_file, capsys):
    assert main(["spectrum", str(triple_file("E13")), "--seed", "5"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert sorted(report["corner_points"]) == [[0.0, 1.0, -1.0], [0.0, 1.0, 1.0]]
    assert report["settings"]["seed"] == 5


def test_separable_command(triple_file, capsys):
    assert main(["separable", str(triple_file("E14")), "--dirs", "6", "--restarts", "8"]) == 0
    report = json.loads(capsys.readouterr().out)
    assert len(report["directions"]) == 6
    assert report["max_seesaw_ppt_difference"] < 1e-6


def test_verify_paper_subset(capsys):
    assert main(["verify-paper", "--only", "E3"]) == 0
    out = capsys.readouterr().out
    assert "[PASS] criterion 1" in out and "FAIL" not in out
    assert main(["verify-paper", "--only", "no-such-example"]) == 1


def test_loose_tolerance_breaks_the_harness(capsys):
    assert main(["verify-paper", "--only", "E14", "--tol", "1e-2"]) == 2
    assert "FAIL" in capsys.readouterr().out
