"""Locating eigenvalue coalescence of a hermitian pencil sum_i u_i M_i.

We look for unit directions u where the lowest ``k`` eigenvalues of the
pencil coincide.  Two complementary searches feed a common acceptance test:

* Nelder-Mead descent of ``lambda_k - lambda_1`` in a local chart of the
  sphere, started from the local minima of a direction grid;
* a batched null-space refinement: with V spanning the current lowest k
  eigenvectors, solve for (u, c) making ``V* (u.M) V - c I`` vanish in the
  least-squares sense, then recompute V.  At a true coalescence point this
  is a fixed point and convergence near it is fast.
"""

from __future__ import annotations

import numpy as np
from scipy.optimize import minimize
from scipy.spatial import cKDTree


def chart(u0: np.ndarray):
    """Map R^{d-1} -> unit sphere centred at u0 (gnomonic chart)."""
    d = len(u0)
    q, _ = np.linalg.qr(np.column_stack([u0, np.eye(d)]))
    tangent = q[:, 1:d]

    def to_sphere(x):
        v = u0 + tangent @ x
        return v / np.linalg.norm(v)

    return to_sphere


def spread(mats: np.ndarray, u: np.ndarray, k: int) -> float:
    w = np.linalg.eigvalsh(np.tensordot(u, mats, axes=1))
    return float(w[k - 1] - w[0])


def grid_spread(mats: np.ndarray, dirs: np.ndarray, k: int) -> np.ndarray:
    w = np.linalg.eigvalsh(np.einsum("si,ijl->sjl", dirs, mats))
    return w[:, k - 1] - w[:, 0]


def grid_local_minima(dirs: np.ndarray, values: np.ndarray, neighbours: int = 8) -> np.ndarray:
    _, nb = cKDTree(dirs).query(dirs, k=neighbours + 1)
    return np.flatnonzero(values <= values[nb[:, 1:]].min(axis=1))


def descend(mats: np.ndarray, u0: np.ndarray, k: int, maxiter: int = 200, step: float = 0.05) -> np.ndarray:
    """Nelder-Mead on the chart around u0; returns the best unit direction."""
    to_sphere = chart(u0)
    d = len(u0) - 1
    simplex = np.vstack([np.zeros(d), step * np.eye(d)])
    res = minimize(
        lambda x: spread(mats, to_sphere(x), k),
        np.zeros(d),
        method="Nelder-Mead",
        options={"maxiter": maxiter, "xatol": 1e-13, "fatol": 1e-15, "initial_simplex": simplex},
    )
    return to_sphere(res.x)


def refine(mats: np.ndarray, dirs: np.ndarray, k: int, iters: int = 30) -> np.ndarray:
    """Batched null-space refinement of approximate coalescence directions."""
    dirs = np.array(np.atleast_2d(dirs), dtype=float)
    n = mats.shape[1]
    basis = np.concatenate([mats, np.eye(n)[None].astype(complex)])
    active = np.ones(len(dirs), dtype=bool)
    for _ in range(iters):
        if not active.any():
            break
        u = dirs[active]
        _, vecs = np.linalg.eigh(np.einsum("si,ijl->sjl", u, mats))
        v = vecs[:, :, :k]
        comp = np.einsum("sja,ijl,slb->siab", v.conj(), basis, v)
        flat = comp.reshape(len(u), len(basis), k * k)
        real = np.concatenate([flat.real, flat.imag], axis=2).transpose(0, 2, 1)
        _, _, vt = np.linalg.svd(real)
        x = vt[:, -1, :]
        new = x[:, : mats.shape[0]]
        norm = np.linalg.norm(new, axis=1)
        ok = norm > 1e-12
        new[ok] /= norm[ok, None]
        new[~ok] = u[~ok]
        flip = np.sum(new * u, axis=1) < 0
        new[flip] *= -1
        moved = np.linalg.norm(new - u, axis=1)
        idx = np.flatnonzero(active)
        dirs[idx] = new
        active[idx[moved < 1e-14]] = False
    return dirs


def search(mats: np.ndarray, starts: np.ndarray, k: int, maxiter: int = 200) -> np.ndarray:
    """Candidate coalescence directions from both search routes (unfiltered)."""
    values = grid_spread(mats, starts, k)
    local = grid_local_minima(starts, values) if len(starts) > 9 else np.arange(len(starts))
    described = [descend(mats, starts[i], k, maxiter) for i in local]
    candidates = np.vstack([starts] + ([np.array(described)] if described else []))
    return refine(mats, candidates, k)


def dedup_directions(dirs, angle: float, antipodal: bool = False) -> list[int]:
    """Indices of a greedy angular deduplication (first occurrence kept)."""
    kept: list[int] = []
    cos = np.cos(angle)
    for i, u in enumerate(dirs):
        dup = False
        for j in kept:
            c = float(np.dot(u, dirs[j]))
            if c >= cos or (antipodal and -c >= cos):
                dup = True
                break
        if not dup:
            kept.append(i)
    return kept
