import numpy as np
import pytest

from jnrange import corners, fixtures
from jnrange.linalg import Triple


def test_joint_spectrum_of_tetrahedron(tetrahedron):
    spec = corners.joint_spectrum(tetrahedron)
    got = sorted(tuple(np.round(j.lam, 9)) for j in spec)
    want = sorted(tuple(map(float, c)) for c in fixtures.load("E14").expected["corners"])
    assert got == want


@pytest.mark.parametrize("point,dim", [
    ([1, 1, 1], 3),
    ([0, 0, 1], 2),
    ([1 / 3, 1 / 3, -1 / 3], 1),
])
def test_normal_cone_dimension(tetrahedron, point, dim):
    # vertex, edge midpoint, facet centroid
    assert corners.is_corner_point(tetrahedron, point).normal_cone_dim == dim


def test_point_outside_raises(tetrahedron):
    with pytest.raises(ValueError):
        corners.is_corner_point(tetrahedron, [1, 1, -1])


def test_split_at_corner(tetrahedron):
    spec = corners.joint_spectrum(tetrahedron)
    assert corners.verify_corner_block_structure(tetrahedron, spec[0])
    rest = corners.split_at_corner(tetrahedron, spec[0])
    assert rest.n == 3


def test_split_refuses_whole_space():
    t = Triple.of(np.eye(2), np.eye(2), np.eye(2))
    with pytest.raises(ValueError):
        corners.split_at_corner(t, corners.joint_spectrum(t)[0])


def test_three_segments_at_tetrahedron_vertex(tetrahedron):
    v = np.array([1.0, 1, 1])
    others = [np.array(c, dtype=float) for c in ([1, -1, -1], [-1, 1, -1], [-1, -1, 1])]
    check = corners.check_three_segment_corner(tetrahedron, [(v, o) for o in others])
    assert check.is_corner and check.applies and not check.falsification


def test_three_segments_need_concurrency(tetrahedron):
    a, b, c, d = (np.array(x, dtype=float) for x in fixtures.load("E14").expected["corners"])
    with pytest.raises(ValueError):
        corners.check_three_segment_corner(tetrahedron, [(a, b), (c, d), (a, c)])


def test_three_segments_outside_four_dimensions():
    ex = fixtures.load("ex5-1-n5")
    check = corners.check_three_segment_corner(ex.triple, ex.expected["segments"])
    assert not check.applies and not check.is_corner and not check.falsification
