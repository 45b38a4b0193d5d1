"""Support function, exposed faces and boundary sampling of W(A1, A2, A3).

The support function is used in its *minimum* form: for a unit direction u,
``h(u) = min_{x in W} <x, u> = lambda_min(u1 A1 + u2 A2 + u3 A3)``.  The
minimizing face is the image of the density matrices living on the
eigenspace of that smallest eigenvalue.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .linalg import Triple, hermitian_eig
from .settings import DEFAULT, Settings

log = logging.getLogger(__name__)

GOLDEN_ANGLE = np.pi * (3.0 - np.sqrt(5.0))


@dataclass
class SupportResult:
    direction: np.ndarray
    support_value: float
    multiplicity: int
    point: np.ndarray
    face_dim: int
    basis: np.ndarray = field(repr=False)


@dataclass
class BoundaryMesh:
    vertices: np.ndarray
    triangles: np.ndarray
    degenerate: bool = False
    directions: np.ndarray | None = field(default=None, repr=False)
    points: np.ndarray | None = field(default=None, repr=False)
    support_values: np.ndarray | None = field(default=None, repr=False)


def unit(u) -> np.ndarray:
    u = np.asarray(u, dtype=float)
    norm = np.linalg.norm(u)
    if not np.isfinite(norm) or norm == 0:
        raise ValueError("direction must be a nonzero finite vector")
    return u / norm


def fibonacci_directions(num: int, seed: int | None = None, jitter: float = 0.0) -> np.ndarray:
    """Deterministic near-uniform unit vectors; optional seeded jitter."""
    i = np.arange(num) + 0.5
    z = 1.0 - 2.0 * i / num
    r = np.sqrt(np.clip(1.0 - z * z, 0.0, None))
    phi = GOLDEN_ANGLE * i
    dirs = np.column_stack([r * np.cos(phi), r * np.sin(phi), z])
    if jitter > 0:
        rng = np.random.default_rng(seed)
        dirs = dirs + jitter * rng.standard_normal(dirs.shape)
        dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    return dirs


def measure(triple: Triple, rho: np.ndarray) -> np.ndarray:
    """Expectation values (tr rho A1, tr rho A2, tr rho A3)."""
    if rho.shape != (triple.n, triple.n):
        raise ValueError(f"state of size {rho.shape} for {triple.n}x{triple.n} matrices")
    return np.array([np.real(np.sum(rho.T * m)) for m in triple.matrices])


def measure_vector(triple: Triple, v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    v = v / np.linalg.norm(v)
    return np.array([np.real(np.vdot(v, m @ v)) for m in triple.matrices])


def pencils(triple: Triple, dirs: np.ndarray) -> np.ndarray:
    return np.einsum("ki,ijl->kjl", np.atleast_2d(dirs), triple.stack)


def support_values(triple: Triple, dirs: np.ndarray) -> np.ndarray:
    """Vectorized h(u) over the rows of ``dirs``."""
    return np.linalg.eigvalsh(pencils(triple, dirs))[:, 0]


def cluster_size(values: np.ndarray, pencil_norm: float, settings: Settings = DEFAULT) -> int:
    thresh = settings.cluster_gap * max(1.0, pencil_norm)
    return int(np.sum(values - values[0] < thresh))


def traceless_hermitian_basis(r: int) -> list[np.ndarray]:
    """Orthonormal basis (Frobenius) of traceless hermitian r x r matrices."""
    basis = []
    for j in range(r):
        for k in range(j + 1, r):
            s = np.zeros((r, r), dtype=complex)
            s[j, k] = s[k, j] = 1 / np.sqrt(2)
            basis.append(s)
            a = np.zeros((r, r), dtype=complex)
            a[j, k], a[k, j] = -1j / np.sqrt(2), 1j / np.sqrt(2)
            basis.append(a)
    for l in range(1, r):
        d = np.zeros(r)
        d[:l] = 1
        d[l] = -l
        basis.append(np.diag(d / np.linalg.norm(d)).astype(complex))
    return basis


def measure_map_matrix(compressed: Triple) -> np.ndarray:
    """3 x (r^2 - 1) real matrix of rho -> measure on traceless r x r hermitians."""
    basis = traceless_hermitian_basis(compressed.n)
    return np.array(
        [[np.real(np.sum(g.T * m)) for g in basis] for m in compressed.matrices]
    ).reshape(3, len(basis))


def face_dimension(triple: Triple, basis: np.ndarray, settings: Settings = DEFAULT) -> int:
    """Affine dimension of the image of the states supported on span(basis)."""
    basis = np.asarray(basis)
    if basis.ndim != 2 or basis.shape[1] == 0:
        raise ValueError("empty basis")
    if basis.shape[1] == 1:
        return 0
    m = measure_map_matrix(triple.compressed(basis))
    s = np.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > settings.face_dim_tol * triple.scale))


def support(triple: Triple, u, settings: Settings = DEFAULT) -> SupportResult:
    u = unit(u)
    h = triple.pencil(u)
    values, vectors = hermitian_eig(h)
    mult = cluster_size(values, float(np.abs(values).max()), settings)
    basis = vectors[:, :mult]
    point = measure_vector(triple, vectors[:, 0])
    dim = face_dimension(triple, basis, settings)
    return SupportResult(u, float(values[0]), mult, point, dim, basis)


def face_image_extent(triple: Triple, basis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Center and linear map of the face image: states on span(basis) map to
    ``center + M s`` with s ranging over the Bloch-type body of r x r states."""
    c = triple.compressed(basis)
    r = c.n
    center = np.array([np.trace(m).real / r for m in c.matrices])
    return center, measure_map_matrix(c)


def segment_endpoints(triple: Triple, basis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Endpoints of a face whose image is a segment (any rank)."""
    center, m = face_image_extent(triple, basis)
    uu, s, _ = np.linalg.svd(m)
    axis = uu[:, 0]
    c = triple.compressed(basis)
    proj = axis[0] * c.a1 + axis[1] * c.a2 + axis[2] * c.a3
    _, vecs = np.linalg.eigh(proj)
    lo = measure_vector(c, vecs[:, 0])
    hi = measure_vector(c, vecs[:, -1])
    return lo, hi


def _dedup(points: np.ndarray, tol: float) -> np.ndarray:
    if len(points) == 0:
        return points
    keys = np.round(points / tol).astype(np.int64)
    _, idx = np.unique(keys, axis=0, return_index=True)
    return points[np.sort(idx)]


def convex_hull_mesh(points: np.ndarray) -> tuple[np.ndarray, np.ndarray, bool]:
    """Triangulated convex hull; returns (vertices, triangles, degenerate)."""
    points = np.asarray(points, dtype=float)
    if len(points) == 0:
        return points.reshape(0, 3), np.zeros((0, 3), dtype=int), True
    diam = float(np.ptp(points, axis=0).max()) if len(points) > 1 else 0.0
    tol = 1e-9 * max(diam, 1e-300)
    pts = _dedup(points, max(tol, 1e-15))
    if diam == 0 or len(pts) < 4:
        return pts[:1] if diam == 0 else pts, np.zeros((0, 3), dtype=int), True
    centered = pts - pts.mean(axis=0)
    s = np.linalg.svd(centered, compute_uv=False)
    if s[2] <= 1e-9 * s[0]:
        return pts, np.zeros((0, 3), dtype=int), True
    try:
        # qhull may rescale its input in place, so hand it a copy
        hull = ConvexHull(pts.copy(), qhull_options="Qt Qc")
    except QhullError as exc:  # pragma: no cover - depends on qhull internals
        log.warning("convex hull failed: %s", exc)
        return pts, np.zeros((0, 3), dtype=int), True
    used = np.unique(hull.simplices)
    remap = -np.ones(len(pts), dtype=int)
    remap[used] = np.arange(len(used))
    tris = remap[hull.simplices]
    # orient outward
    verts = pts[used]
    centroid = verts.mean(axis=0)
    for t in tris:
        a, b, c = verts[t]
        if np.dot(np.cross(b - a, c - a), a - centroid) < 0:
            t[1], t[2] = t[2], t[1]
    return verts, tris, False


def boundary_points(triple: Triple, dirs: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """One boundary point per direction (image of a lowest eigenvector)."""
    values, vectors = np.linalg.eigh(pencils(triple, dirs))
    v = vectors[:, :, 0]
    pts = np.real(np.einsum("kj,ijl,kl->ki", v.conj(), triple.stack, v))
    return pts, values[:, 0]


def sample_boundary(triple: Triple, num_dirs: int, seed: int = 0, jitter: float = 0.0) -> BoundaryMesh:
    if num_dirs < 4:
        raise ValueError("num_dirs must be at least 4")
    dirs = fibonacci_directions(num_dirs, seed, jitter)
    pts, vals = boundary_points(triple, dirs)
    verts, tris, degenerate = convex_hull_mesh(pts)
    if degenerate:
        log.info("joint numerical range has dimension < 3; hull omitted")
    return BoundaryMesh(verts, tris, degenerate, dirs, pts, vals)


def dimension(triple: Triple, num_dirs: int = 200, tol: float = 1e-9) -> int:
    """Affine dimension of W, estimated from boundary samples."""
    pts, _ = boundary_points(triple, fibonacci_directions(num_dirs))
    centered = pts - pts.mean(axis=0)
    s = np.linalg.svd(centered, compute_uv=False)
    if s[0] <= tol * triple.scale:
        return 0
    return int(np.sum(s > tol * max(s[0], 1.0)))


def in_w(triple: Triple, p, tol: float = 1e-6, num_dirs: int = 2000) -> bool:
    """Necessary-condition membership test: p satisfies all probed halfspaces."""
    dirs = fibonacci_directions(num_dirs)
    gap = dirs @ np.asarray(p, dtype=float) - support_values(triple, dirs)
    return bool(gap.min() >= -tol * triple.scale)
