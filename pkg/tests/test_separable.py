import numpy as np
import pytest

from jnrange import fixtures, geometry, separable
from jnrange.linalg import partial_transpose

from conftest import random_hermitian


def bloch_grid_minimum(h: np.ndarray, num: int = 40) -> float:
    """Brute-force min of <ab|h|ab> over a theta/phi grid on both Bloch spheres."""
    theta, phi = np.meshgrid(np.linspace(0, np.pi, num), np.linspace(0, 2 * np.pi, 2 * num, endpoint=False))
    kets = np.stack([np.cos(theta.ravel() / 2), np.exp(1j * phi.ravel()) * np.sin(theta.ravel() / 2)], axis=1)
    t = h.reshape(2, 2, 2, 2)
    vals = np.einsum("ai,bj,ijkl,ak,bl->ab", kets.conj(), kets.conj(), t, kets, kets, optimize=True)
    return float(vals.real.min())


def test_bell_hamiltonian_gap():
    h = separable.bell_hamiltonian()
    assert np.linalg.eigvalsh(h)[0] == pytest.approx(-1)
    value, state = separable.seesaw_minimize(h, 16, np.random.default_rng(0))
    assert value == pytest.approx(0, abs=1e-10)
    assert value <= bloch_grid_minimum(h) + 1e-12
    assert np.vdot(state.vector, h @ state.vector).real == pytest.approx(value, abs=1e-12)


def test_bell_ppt_value():
    value, rho = separable.ppt_minimize(separable.bell_hamiltonian())
    assert value == pytest.approx(0, abs=1e-7)
    assert separable.is_ppt(rho)


def test_identity_hamiltonian():
    assert separable.seesaw_minimize(np.eye(4), 4, np.random.default_rng(1))[0] == pytest.approx(1)
    assert separable.ppt_minimize(np.eye(4))[0] == pytest.approx(1, abs=1e-7)


def test_is_ppt():
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    assert not separable.is_ppt(np.outer(phi, phi))
    assert separable.is_ppt(np.eye(4) / 4)
    werner = 0.7 * np.eye(4) / 4 + 0.3 * np.outer(phi, phi)
    assert separable.is_ppt(werner)
    assert np.linalg.eigvalsh(partial_transpose(werner))[0] >= 0


@pytest.mark.parametrize("seed", range(5))
def test_seesaw_and_ppt_agree(seed):
    # two routes: product-vector alternation vs. PPT relaxation (exact for two qubits)
    h = random_hermitian(np.random.default_rng(seed), 4)
    saw = separable.seesaw_minimize(h, 32, np.random.default_rng(seed))[0]
    ppt = separable.ppt_minimize(h)[0]
    assert saw == pytest.approx(ppt, abs=1e-6)
    assert saw <= bloch_grid_minimum(h, 24) + 1e-12
    assert saw >= np.linalg.eigvalsh(h)[0] - 1e-12


def test_seesaw_is_reproducible(tetrahedron):
    u = geometry.unit([0.3, -0.2, 0.9])
    assert separable.seesaw_support(tetrahedron, u, seed=3)[0] == separable.seesaw_support(tetrahedron, u, seed=3)[0]


def test_product_vector_in_span(rng):
    x, y = rng.standard_normal((2, 4)) + 1j * rng.standard_normal((2, 4))
    v = separable.product_vector_in_span(x, y)
    assert np.linalg.svd(v.reshape(2, 2), compute_uv=False)[1] < 1e-10
    coef = np.linalg.lstsq(np.column_stack([x, y]), v, rcond=None)[0]
    assert np.allclose(np.column_stack([x, y]) @ coef, v, atol=1e-10)


def test_tangency_on_tetrahedron(tetrahedron):
    from jnrange import faces
    report = faces.analyze(tetrahedron, census=False)
    results = separable.tangency_check(tetrahedron, report.faces)
    assert len(results) == 4 and all(r.passed for r in results)


def test_requires_two_qubits():
    t = fixtures.load("ex5-1-n5").triple
    with pytest.raises(ValueError):
        separable.sample_sep_boundary(t, 20)


def test_segment_probe_on_tetrahedron(tetrahedron):
    mesh = geometry.sample_boundary(tetrahedron, 100)
    flat = [r for r in separable.segment_probe(mesh, tetrahedron) if r.kind == "flat"]
    assert len(flat) == 4


def test_single_restart_finds_product_ground_state(rng):
    a, b = rng.standard_normal((2, 2)) + 1j * rng.standard_normal((2, 2))
    v = np.kron(a, b)
    q = np.linalg.qr(np.column_stack([v, rng.standard_normal((4, 3)) + 1j * rng.standard_normal((4, 3))]))[0]
    h = q @ np.diag([-1.0, 0.2, 0.5, 2.0]) @ q.conj().T
    for seed in range(10):
        assert separable.seesaw_minimize(h, 1, np.random.default_rng(seed))[0] == pytest.approx(-1, abs=1e-12)
