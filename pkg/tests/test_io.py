import json
import math

import numpy as np
import pytest

from jnrange import fixtures, io


@pytest.mark.parametrize("tag,value", [("-sqrt(3)/2", -math.sqrt(3) / 2), ("1/2", 0.5), (3, 3.0), ("2*sqrt(2)", 2 * math.sqrt(2))])
def test_scalar_tags(tag, value):
    assert io.scalar(tag) == pytest.approx(value)


@pytest.mark.parametrize("tag", ["__import__('os')", "exp(1)", True])
def test_scalar_rejects(tag):
    with pytest.raises(ValueError):
        io.scalar(tag)


def test_triple_round_trip(tetrahedron):
    back = io.parse_triple(json.loads(json.dumps(io.triple_to_json(tetrahedron))))
    for a, b in zip(back.matrices, tetrahedron.matrices):
        assert np.array_equal(a, b)
    assert io.digest(back) == io.digest(tetrahedron)


def test_parse_accepts_real_entries():
    t = io.parse_triple({"matrices": [[[1, 0], [0, -1]], [[0, 1], [1, 0]], [[[0, 0], [0, -1]], [[0, 1], [0, 0]]]]})
    assert np.allclose(t.matrices[2], [[0, -1j], [1j, 0]])


@pytest.mark.parametrize("doc", [
    {"matrices": [[[1]], [[1]]]},
    {"matrices": [[[1, 2], [3, 4]], [[1, 0], [0, 1]], [[1, 0], [0, 1]]]},
    {"n": 3, "matrices": [[[1, 0], [0, 1]]] * 3},
])
def test_parse_rejects(doc):
    with pytest.raises(ValueError):
        io.parse_triple(doc)


def test_obj_format(tmp_path):
    verts = np.array([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1 / 3]])
    tris = np.array([[0, 1, 2], [0, 1, 3]])
    path = tmp_path / "m.obj"
    io.write_obj(path, verts, tris)
    raw = path.read_bytes()
    assert b"\r" not in raw
    lines = raw.decode().splitlines()
    assert "v 0 0 0.333333333" in lines
    assert "f 1 2 3" in lines
    v, f = io.read_obj(path)
    assert np.allclose(v, verts, atol=1e-9)
    assert np.array_equal(f, tris)


def test_fixture_json_is_loadable(tmp_path):
    path = tmp_path / "e3.json"
    path.write_text(json.dumps(fixtures.load("E3").to_json()))
    assert io.load_triple(path).n == 4
