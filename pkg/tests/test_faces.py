import itertools

import numpy as np
import pytest

from jnrange import faces, fixtures
from jnrange.linalg import Triple, numerical_rank
from jnrange.shapes import ShapeClass
from jnrange.verify import projective_match, tetrahedron_tuples


@pytest.fixture(scope="module")
def tetra_report():
    return faces.analyze(fixtures.load("E14").triple)


def test_tetrahedron_tuples_match_facet_planes(tetra_report):
    verts = np.array(fixtures.load("E14").expected["corners"], dtype=float)
    found = [t.coefficients for t in tetra_report.tuples]
    assert projective_match(found, tetrahedron_tuples(verts))


def test_tuple_pencils_are_psd_rank_one(tetra_report, tetrahedron):
    for t in tetra_report.tuples:
        p = t.pencil(tetrahedron)
        assert np.linalg.eigvalsh(p).min() > -1e-9
        assert numerical_rank(p, 1e-6 * tetrahedron.scale) == 1


def test_tetrahedron_faces_are_triangles(tetra_report):
    assert [f.shape for f in tetra_report.rank3] == [ShapeClass.TRIANGLE] * 4
    assert all(len(f.segments) == 3 for f in tetra_report.rank3)
    assert tetra_report.signature.class_index == 14


def test_tetrahedron_faces_share_edges(tetra_report, tetrahedron):
    for f, g in itertools.combinations(tetra_report.rank3, 2):
        x = faces.intersect_faces(tetrahedron, f, g)
        assert not x.disjoint and x.dim == 1 and x.exposed
        assert x.length == pytest.approx(2 * np.sqrt(2), abs=1e-6)


@pytest.mark.parametrize("example_id", ["E1", "E2", "E6", "E12"])
def test_single_face_examples(example_id):
    ex = fixtures.load(example_id)
    report = faces.analyze(ex.triple, census=False)
    assert projective_match([t.coefficients for t in report.tuples], fixtures.expected_tuples(ex))
    assert tuple(report.counts) == tuple(ex.expected["signature"])


def test_sphere_has_no_flat_faces():
    x = np.array([[0, 1], [1, 0]], dtype=complex)
    y = np.array([[0, -1j], [1j, 0]])
    z = np.diag([1.0, -1]).astype(complex)
    report = faces.analyze(Triple.of(np.kron(x, np.eye(2)), np.kron(y, np.eye(2)), np.kron(z, np.eye(2))), census=False)
    # the sphere is smooth, but every exposed point has a 2-dim eigenspace
    assert report.tuples == []


def test_degenerate_range_raises():
    z = np.zeros((4, 4))
    with pytest.raises(faces.DegenerateRangeError):
        faces.classify_jnr(Triple.of(np.diag([0.0, 1, 2, 3]), z, z))
