import numpy as np

from jnrange import pencil


def test_chart_origin_is_base_point():
    u0 = np.array([0.2, -0.3, 0.9])
    u0 /= np.linalg.norm(u0)
    to_sphere = pencil.chart(u0)
    assert np.allclose(to_sphere(np.zeros(2)), u0)
    assert np.isclose(np.linalg.norm(to_sphere(np.array([3.0, -1.0]))), 1)


def test_dedup_directions():
    d = np.array([[1, 0, 0], [1, 1e-7, 0], [0, 1, 0], [-1, 0, 0]], dtype=float)
    d /= np.linalg.norm(d, axis=1, keepdims=True)
    assert len(pencil.dedup_directions(d, 1e-4)) == 3
    assert len(pencil.dedup_directions(d, 1e-4, antipodal=True)) == 2


def test_search_finds_planted_coalescence(rng):
    target = np.array([1.0, 2.0, 2.0]) / 3
    q = np.linalg.qr(rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))[0]
    planted = q @ np.diag([0.0, 0, 0, 1]) @ q.conj().T
    a1, a2 = (x + x.conj().T for x in rng.standard_normal((2, 4, 4)) + 1j * rng.standard_normal((2, 4, 4)))
    a3 = (planted - target[0] * a1 - target[1] * a2) / target[2]
    mats = np.array([a1, a2, a3])
    starts = target + 0.05 * rng.standard_normal((6, 3))
    found = pencil.search(mats, starts / np.linalg.norm(starts, axis=1, keepdims=True), 3)
    best = min(found, key=lambda u: pencil.spread(mats, u, 3))
    assert pencil.spread(mats, best, 3) < 1e-8
    assert np.allclose(best, target, atol=1e-7)
