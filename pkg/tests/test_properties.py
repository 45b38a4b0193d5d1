import numpy as np
from hypothesis import given, settings, strategies as st

from jnrange import geometry, separable
from jnrange.linalg import Triple, partial_transpose
from jnrange.shapes import classify_shape

seeds = st.integers(0, 2**32 - 1)


def _herm(rng, n):
    x = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return (x + x.conj().T) / 2


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_support_is_superadditive_and_homogeneous(seed):
    rng = np.random.default_rng(seed)
    t = Triple.of(*(_herm(rng, 4) for _ in range(3)))
    u, v = rng.standard_normal((2, 3))
    h = lambda w: geometry.support_values(t, np.atleast_2d(w))[0]
    assert h(u + v) >= h(u) + h(v) - 1e-10
    assert np.isclose(h(2.5 * u), 2.5 * h(u))


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_support_point_attains_support(seed):
    rng = np.random.default_rng(seed)
    t = Triple.of(*(_herm(rng, 3) for _ in range(3)))
    u = geometry.unit(rng.standard_normal(3))
    s = geometry.support(t, u)
    assert np.isclose(s.point @ u, s.support_value, atol=1e-10)


@given(seeds)
@settings(max_examples=25, deadline=None)
def test_partial_transpose_is_an_involution(seed):
    x = _herm(np.random.default_rng(seed), 4)
    assert np.array_equal(partial_transpose(partial_transpose(x)), x)


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_seesaw_bounds(seed):
    rng = np.random.default_rng(seed)
    h = _herm(rng, 4)
    value, state = separable.seesaw_minimize(h, 8, rng)
    assert value >= np.linalg.eigvalsh(h)[0] - 1e-12
    assert np.isclose(np.vdot(state.vector, h @ state.vector).real, value)


@given(seeds, st.floats(0.2, 5), st.floats(-np.pi, np.pi))
@settings(max_examples=30, deadline=None)
def test_shape_invariant_under_similarity(seed, stretch, angle):
    rng = np.random.default_rng(seed)
    b1, b2 = _herm(rng, 3), _herm(rng, 3)
    q = np.linalg.qr(rng.standard_normal((3, 3)) + 1j * rng.standard_normal((3, 3)))[0]
    c, s = np.cos(angle), np.sin(angle)
    c1 = q.conj().T @ (stretch * (c * b1 - s * b2)) @ q
    c2 = q.conj().T @ (s * b1 + c * b2 + np.eye(3)) @ q
    assert classify_shape(c1, c2).shape == classify_shape(b1, b2).shape
