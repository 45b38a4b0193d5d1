"""Dense hermitian linear algebra for the small matrices (n <= 5) used here.

Matrices are plain complex ``numpy`` arrays.  :func:`hermitian` is the single
validating entry point; everything else assumes its output.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .settings import DEFAULT, Settings


class DimensionError(ValueError):
    pass


class EigenDecomposition(NamedTuple):
    values: np.ndarray
    vectors: np.ndarray


def hermitian(x, settings: Settings = DEFAULT) -> np.ndarray:
    """Validate and symmetrize a square matrix.

    Entries must be finite and the asymmetry ``||X - X*||`` may not exceed
    ``settings.hermitian_reject * ||X||``.  The returned matrix is
    ``(X + X*) / 2`` with an exactly real diagonal.
    """
    a = np.array(x, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise ValueError("matrix has non-finite entries")
    scale = np.linalg.norm(a)
    asym = np.linalg.norm(a - a.conj().T)
    if asym > settings.hermitian_reject * max(scale, 1.0):
        raise ValueError(f"matrix is not hermitian (asymmetry {asym:.3e})")
    h = (a + a.conj().T) / 2
    h[np.diag_indices_from(h)] = h.diagonal().real
    return h


@dataclass(frozen=True)
class Triple:
    """Ordered triple (A1, A2, A3) of equal-size hermitian matrices."""

    a1: np.ndarray
    a2: np.ndarray
    a3: np.ndarray

    def __post_init__(self):
        shapes = {m.shape for m in self.matrices}
        if len(shapes) != 1:
            raise DimensionError(f"matrices of unequal size: {sorted(shapes)}")

    @classmethod
    def of(cls, a1, a2, a3, settings: Settings = DEFAULT) -> "Triple":
        return cls(*(hermitian(m, settings) for m in (a1, a2, a3)))

    @property
    def matrices(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        return (self.a1, self.a2, self.a3)

    @property
    def n(self) -> int:
        return self.a1.shape[0]

    @property
    def stack(self) -> np.ndarray:
        return np.stack(self.matrices)

    @property
    def scale(self) -> float:
        """Largest spectral norm among the three matrices (at least 1)."""
        return max(1.0, *(np.linalg.norm(m, 2) for m in self.matrices))

    def pencil(self, u) -> np.ndarray:
        u = np.asarray(u, dtype=float)
        return u[0] * self.a1 + u[1] * self.a2 + u[2] * self.a3

    def compressed(self, basis: np.ndarray) -> "Triple":
        return Triple(*(compress(m, basis) for m in self.matrices))


def _fix_phase(v: np.ndarray) -> np.ndarray:
    # make the first entry of largest modulus real positive
    k = int(np.argmax(np.abs(v) > np.abs(v).max() * (1 - 1e-8)))
    return v * (abs(v[k]) / v[k])


def hermitian_eig(a: np.ndarray, cluster_tol: float = 1e-10) -> EigenDecomposition:
    """Eigendecomposition with ascending eigenvalues and reproducible vectors.

    Vectors inside a numerically degenerate cluster are Gram-Schmidt
    re-orthonormalized in index order and every vector gets a fixed phase.
    """
    values, vectors = np.linalg.eigh(a)
    norm = max(1.0, float(np.abs(values).max(initial=0.0)))
    out = vectors.copy()
    start = 0
    n = len(values)
    for i in range(1, n + 1):
        if i == n or values[i] - values[i - 1] > cluster_tol * norm:
            if i - start > 1:
                block = out[:, start:i]
                q, _ = np.linalg.qr(block)
                out[:, start:i] = q
            start = i
    for j in range(n):
        out[:, j] = _fix_phase(out[:, j])
    return EigenDecomposition(values, out)


def frobenius_inner(a: np.ndarray, b: np.ndarray) -> float:
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return float(np.real(np.vdot(a, b)))


def principal_minor(a: np.ndarray, rows: Sequence[int]) -> float:
    """Determinant of the principal submatrix on ``rows`` (0-based indices)."""
    idx = sorted(set(int(r) for r in rows))
    if not idx or len(idx) != len(rows) or idx[0] < 0 or idx[-1] >= a.shape[0]:
        raise ValueError(f"invalid index set {rows!r} for size {a.shape[0]}")
    return float(np.real(np.linalg.det(a[np.ix_(idx, idx)])))


def principal_minors(a: np.ndarray, order: int) -> np.ndarray:
    n = a.shape[0]
    return np.array([principal_minor(a, c) for c in itertools.combinations(range(n), order)])


def numerical_rank(a: np.ndarray, tol: float = DEFAULT.rank_tol) -> int:
    if tol <= 0:
        raise ValueError("tol must be positive")
    values = np.linalg.eigvalsh(a)
    scale = max(1.0, float(np.abs(values).max(initial=0.0)))
    return int(np.sum(np.abs(values) > tol * scale))


def commutator(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    if x.shape != y.shape:
        raise DimensionError(f"shape mismatch {x.shape} vs {y.shape}")
    return x @ y - y @ x


def compress(a: np.ndarray, basis: np.ndarray, tol: float = DEFAULT.orthonormal_tol) -> np.ndarray:
    """Return the r x r matrix of ``a`` in the orthonormal columns ``basis``."""
    basis = np.asarray(basis, dtype=complex)
    if basis.ndim == 1:
        basis = basis[:, None]
    if basis.shape[0] != a.shape[0]:
        raise DimensionError(f"basis rows {basis.shape[0]} != matrix size {a.shape[0]}")
    gram = basis.conj().T @ basis
    if np.abs(gram - np.eye(basis.shape[1])).max() > tol:
        raise ValueError("basis columns are not orthonormal")
    c = basis.conj().T @ a @ basis
    return (c + c.conj().T) / 2


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape != (2, 2) or b.shape != (2, 2):
        raise DimensionError("kron expects two 2x2 matrices")
    return np.block([[a[0, 0] * b, a[0, 1] * b], [a[1, 0] * b, a[1, 1] * b]])


def partial_transpose(x: np.ndarray) -> np.ndarray:
    """Transpose each 2x2 block of a 4x4 matrix (second tensor factor)."""
    if x.shape != (4, 4):
        raise DimensionError("partial transpose is defined for 4x4 matrices")
    return x.reshape(2, 2, 2, 2).transpose(0, 3, 2, 1).reshape(4, 4)


def is_density(rho: np.ndarray, tol: float = 1e-10) -> bool:
    return bool(
        np.linalg.eigvalsh(rho).min() >= -tol and abs(np.trace(rho).real - 1) <= tol
    )


def orthonormal_complement(basis: np.ndarray) -> np.ndarray:
    n, r = basis.shape
    proj = np.eye(n) - basis @ basis.conj().T
    _, vecs = hermitian_eig(proj)
    return vecs[:, r:]
