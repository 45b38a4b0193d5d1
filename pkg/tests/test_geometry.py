import numpy as np
import pytest

from jnrange import geometry
from jnrange.linalg import Triple


def diagonal_triple(points) -> Triple:
    pts = np.asarray(points, dtype=float)
    return Triple.of(*(np.diag(pts[:, k]) for k in range(3)))


CUBE_CORNERS = [[0, 0, 0], [1, 0, 0], [0, 2, 0], [0, 0, 3]]


def test_fibonacci_directions_are_unit_and_deterministic():
    d = geometry.fibonacci_directions(300, seed=5, jitter=0.1)
    assert np.allclose(np.linalg.norm(d, axis=1), 1)
    assert np.array_equal(d, geometry.fibonacci_directions(300, seed=5, jitter=0.1))


def test_support_of_diagonal_triple_is_vertex_minimum():
    t = diagonal_triple(CUBE_CORNERS)
    dirs = geometry.fibonacci_directions(100)
    expected = (dirs @ np.array(CUBE_CORNERS, dtype=float).T).min(axis=1)
    assert np.allclose(geometry.support_values(t, dirs), expected, atol=1e-12)


def test_support_point_and_face_dim():
    t = diagonal_triple(CUBE_CORNERS)
    s = geometry.support(t, [0, 0, 1])
    assert s.face_dim == 2 and s.multiplicity == 3
    s = geometry.support(t, [-1, -1, -1])
    assert s.face_dim == 0 and np.allclose(s.point, [0, 0, 3])


def test_sample_boundary_of_simplex(tetrahedron):
    mesh = geometry.sample_boundary(tetrahedron, 200)
    assert not mesh.degenerate
    verts = {tuple(np.round(v, 6)) for v in mesh.vertices}
    assert verts == {(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)}
    assert len(mesh.triangles) == 4


@pytest.mark.parametrize("points,dim", [
    ([[0, 0, 0]] * 4, 0),
    ([[0, 0, 0], [1, 0, 0], [1, 0, 0], [0, 0, 0]], 1),
    ([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 0]], 2),
    (CUBE_CORNERS, 3),
])
def test_dimension(points, dim):
    assert geometry.dimension(diagonal_triple(points)) == dim


def test_degenerate_mesh_is_flagged():
    mesh = geometry.sample_boundary(diagonal_triple([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 0]]), 50)
    assert mesh.degenerate


def test_in_w(tetrahedron):
    assert geometry.in_w(tetrahedron, [0, 0, 0])
    assert not geometry.in_w(tetrahedron, [1, 1, -1])
