import numpy as np
import pytest

from jnrange import fixtures
from jnrange.shapes import (
    CLASS_TABLE, ClassSignature, ShapeClass, SignatureError, classify_reducible,
    classify_shape, ellipse_test, is_unitarily_irreducible,
)

from conftest import random_unitary

EXEMPLARS = ["type-exemplar-0", "type-exemplar-1", "type-exemplar-2", "type-exemplar-3", "bordered-3x3"]


@pytest.mark.parametrize("example_id", EXEMPLARS)
def test_exemplar_shapes(example_id):
    ex = fixtures.load(example_id)
    assert classify_shape(*ex.pair).shape.value == ex.expected["shape"]


@pytest.mark.parametrize("example_id", EXEMPLARS)
def test_shape_is_unitary_and_affine_invariant(example_id, rng):
    b1, b2 = fixtures.load(example_id).pair
    u = random_unitary(rng, 3)
    m = np.array([[1.3, -0.4], [0.7, 2.1]])
    c1 = u.conj().T @ (m[0, 0] * b1 + m[0, 1] * b2 + 0.3 * np.eye(3)) @ u
    c2 = u.conj().T @ (m[1, 0] * b1 + m[1, 1] * b2 - 1.1 * np.eye(3)) @ u
    assert classify_shape(c1, c2).shape == classify_shape(b1, b2).shape


@pytest.mark.parametrize("diag,shape", [
    ([[0, 0], [1, 0], [0, 1]], ShapeClass.TRIANGLE),
    ([[0, 0], [1, 1], [2, 2]], ShapeClass.SEGMENT),
    ([[1, 2], [1, 2], [1, 2]], ShapeClass.POINT),
])
def test_commuting_pairs(diag, shape):
    d = np.array(diag, dtype=float)
    assert classify_reducible(np.diag(d[:, 0]), np.diag(d[:, 1])).shape == shape


def test_block_pair_with_point_outside_is_droplet():
    b = np.zeros((3, 3), dtype=complex)
    b[0, 1] = 1
    b[2, 2] = 2
    verdict = classify_shape((b + b.conj().T) / 2, (b - b.conj().T) / 2j)
    assert verdict.reducible and verdict.shape == ShapeClass.DROPLET


def test_block_pair_with_point_inside_is_ellipse():
    b = np.zeros((3, 3), dtype=complex)
    b[0, 1] = 2
    b[2, 2] = 0.1
    verdict = classify_shape((b + b.conj().T) / 2, (b - b.conj().T) / 2j)
    assert verdict.shape == ShapeClass.ELLIPSE
    assert verdict.ellipse.minor_axis == pytest.approx(2.0)


def test_irreducibility_of_jordan_block():
    j = np.diag([1.0, 1.0], 1).astype(complex)
    assert is_unitarily_irreducible((j + j.T) / 2, (j - j.T) / 2j)
    assert not is_unitarily_irreducible(np.diag([1.0, 2, 3]), np.diag([0.0, 1, 1]))


def test_nilpotent_jordan_block_is_circular():
    j = np.diag([1.0, 1.0], 1).astype(complex)
    e = ellipse_test((j + j.T) / 2, (j - j.T) / 2j)
    assert e is not None
    assert e.minor_axis == pytest.approx(e.major_axis)
    assert e.major_axis == pytest.approx(np.sqrt(2))


def test_class_table_is_complete():
    assert len(CLASS_TABLE) == 15
    assert len(set(CLASS_TABLE)) == 15
    for k, counts in enumerate(CLASS_TABLE):
        sig = ClassSignature.from_counts(counts)
        assert sig.class_index == k and sig.counts == tuple(counts)
    assert {k for k in range(15) if ClassSignature.from_counts(CLASS_TABLE[k]).implies_corner} == {8, 9, 10, 11, 13, 14}


@pytest.mark.parametrize("counts", [(1, 1, 0, 0), (0, 0, 0, 3), (0, 0, 0, 5), (0, 3, 0, 0)])
def test_signature_outside_table(counts):
    with pytest.raises(SignatureError):
        ClassSignature.from_counts(counts)
