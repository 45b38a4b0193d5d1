"""Joint spectrum and corner points of W.

A boundary point p is a corner when its normal cone (the directions u whose
minimizing face contains p) is full dimensional.  The cone is sampled: a
probe direction u belongs to it when ``<p, u> - h(u)`` vanishes.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .geometry import fibonacci_directions, support, support_values, unit
from .linalg import Triple, hermitian_eig
from .pencil import chart
from .settings import DEFAULT, Settings

log = logging.getLogger(__name__)

THREE_SEGMENT_CLAIM = "three distinct segment faces of a 4x4 joint numerical range meet in a corner point"


@dataclass
class JointSpectrumPoint:
    lam: np.ndarray
    vector: np.ndarray
    eigenspace_dim: int
    basis: np.ndarray = field(repr=False)


@dataclass
class CornerVerdict:
    point: np.ndarray
    is_corner: bool
    normal_cone_dim: int
    supporting_directions: list[np.ndarray] = field(default_factory=list, repr=False)


def _split(a: np.ndarray, basis: np.ndarray, tol: float) -> list[np.ndarray]:
    """Split span(basis) into the eigenspaces of the compression of ``a``."""
    comp = basis.conj().T @ a @ basis
    values, vecs = hermitian_eig((comp + comp.conj().T) / 2)
    out, start = [], 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > tol:
            out.append(basis @ vecs[:, start:i])
            start = i
    return out


def joint_spectrum(triple: Triple, settings: Settings = DEFAULT) -> list[JointSpectrumPoint]:
    """Common eigenvectors of A1, A2, A3, one entry per joint eigenspace."""
    spaces = [np.eye(triple.n, dtype=complex)]
    for a in triple.matrices:
        tol = settings.common_eigvec * max(1.0, np.linalg.norm(a, 2))
        spaces = [s for b in spaces for s in _split(a, b, tol)]
    out = []
    for basis in spaces:
        v = basis[:, 0]
        lam = np.array([np.vdot(v, a @ v).real for a in triple.matrices])
        ok = all(
            np.linalg.norm(a @ basis - l * basis, 2) <= settings.common_eigvec * max(np.linalg.norm(a, 2), 1e-300)
            for a, l in zip(triple.matrices, lam)
        )
        if ok:
            out.append(JointSpectrumPoint(lam, v, basis.shape[1], basis))
    out.sort(key=lambda j: tuple(np.round(j.lam, 9)))
    return out


def _gaps(triple: Triple, p: np.ndarray, dirs: np.ndarray) -> np.ndarray:
    return dirs @ p - support_values(triple, dirs)


def _cloud(center: np.ndarray, radius: float, num: int, rng) -> np.ndarray:
    pts = center + radius * rng.standard_normal((num, 3))
    return pts / np.linalg.norm(pts, axis=1, keepdims=True)


def is_corner_point(
    triple: Triple,
    p,
    probes: int | None = None,
    seed: int | None = None,
    settings: Settings = DEFAULT,
) -> CornerVerdict:
    """Sample the normal cone of W at p and report its dimension.

    p is first snapped to the exact support point when some direction
    exposes a single point within ``corner_member`` of it; normal cone
    membership is then decided with the much tighter ``corner_exact`` so
    that curved or edge points do not produce a thickened cone.  Probes are
    a jittered lattice plus clouds of shrinking radius around the hits.
    """
    probes = settings.corner_probes if probes is None else probes
    seed = settings.seed if seed is None else seed
    p = np.asarray(p, dtype=float)
    scale = triple.scale
    rng = np.random.default_rng(seed)
    dirs = fibonacci_directions(probes, seed, jitter=0.5 / np.sqrt(probes))
    gaps = _gaps(triple, p, dirs)
    if gaps.min() < -settings.in_w_tol * scale:
        raise ValueError(f"point {p.tolist()} is not in W (violation {-gaps.min():.2e})")

    best = dirs[np.argsort(gaps)[:3]]
    refined = []
    for u0 in best:
        to_sphere = chart(u0)
        res = minimize(lambda x: float(_gaps(triple, p, to_sphere(x)[None])[0]), np.zeros(2),
                       method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-16, "maxiter": 400,
                                                     "initial_simplex": [[0, 0], [0.05, 0], [0, 0.05]]})
        refined.append(to_sphere(res.x))
    refined = np.array(refined)
    if _gaps(triple, p, refined).min() > settings.corner_member * scale:
        return CornerVerdict(p, False, 0)

    target = p
    for u in refined[np.argsort(_gaps(triple, p, refined))]:
        s = support(triple, u, settings)
        if s.face_dim == 0 and np.linalg.norm(s.point - p) <= settings.corner_member * scale:
            target = s.point
            break

    tol = settings.corner_exact * scale
    pool = np.vstack([dirs, refined])
    hits = pool[_gaps(triple, target, pool) <= tol]
    seeds = hits if len(hits) else refined[:1]
    for radius in (0.3, 0.1, 0.03, 0.01, 3e-3, 1e-3):
        centers = seeds[rng.choice(len(seeds), size=min(8, len(seeds)), replace=False)]
        cloud = np.vstack([_cloud(c, radius, 32, rng) for c in centers])
        new = cloud[_gaps(triple, target, cloud) <= tol]
        if len(new):
            hits = np.vstack([hits, new]) if len(hits) else new
            seeds = hits
    if len(hits) == 0:
        return CornerVerdict(p, False, 0)
    sv = np.linalg.svd(hits, compute_uv=False)
    dim = int(np.sum(sv > settings.corner_rank * sv[0]))
    order = np.lexsort(hits.T[::-1])
    return CornerVerdict(target, dim == 3, dim, [hits[i] for i in order])


def verify_corner_block_structure(triple: Triple, p: JointSpectrumPoint, settings: Settings = DEFAULT,
                                  check_corner: bool = True) -> bool:
    """A_i = lambda_i P + P' A_i P' for the projector P of the joint eigenspace."""
    if check_corner and not is_corner_point(triple, p.lam, settings=settings).is_corner:
        raise ValueError(f"{p.lam.tolist()} is not a corner point")
    proj = p.basis @ p.basis.conj().T
    rest = np.eye(triple.n) - proj
    for a, lam in zip(triple.matrices, p.lam):
        tol = settings.common_eigvec * max(np.linalg.norm(a, 2), 1e-300)
        if np.linalg.norm(rest @ a @ proj, 2) > tol or np.linalg.norm(proj @ a @ proj - lam * proj, 2) > tol:
            return False
    return True


def split_at_corner(triple: Triple, p: JointSpectrumPoint, settings: Settings = DEFAULT,
                    num_dirs: int = 50) -> Triple:
    """The complementary triple on range(1 - P); W = conv({lambda} and its range)."""
    if p.eigenspace_dim >= triple.n:
        raise ValueError("joint eigenspace is the whole space; nothing remains after splitting")
    if not verify_corner_block_structure(triple, p, settings, check_corner=False):
        raise ValueError("block structure violated at this joint eigenvector")
    rest = np.linalg.qr(np.column_stack([p.basis, np.eye(triple.n)]))[0][:, p.eigenspace_dim:triple.n]
    small = triple.compressed(rest)
    dirs = fibonacci_directions(num_dirs)
    lhs = support_values(triple, dirs)
    rhs = np.minimum(dirs @ p.lam, support_values(small, dirs))
    err = float(np.abs(lhs - rhs).max())
    if err > settings.in_w_tol * triple.scale:
        raise ArithmeticError(f"support identity fails after splitting (error {err:.2e})")
    return small


@dataclass
class ThreeSegmentCheck:
    point: np.ndarray
    is_corner: bool
    falsification: bool
    applies: bool
    claim: str = THREE_SEGMENT_CLAIM


def _on_boundary(triple: Triple, x: np.ndarray, tol: float) -> bool:
    dirs = fibonacci_directions(400)
    g = _gaps(triple, x, dirs)
    u0 = dirs[int(np.argmin(g))]
    to_sphere = chart(u0)
    res = minimize(lambda y: float(_gaps(triple, x, to_sphere(y)[None])[0]), np.zeros(2),
                   method="Nelder-Mead", options={"xatol": 1e-12, "fatol": 1e-16, "maxiter": 400})
    return abs(res.fun) <= tol


def check_three_segment_corner(triple: Triple, segments, settings: Settings = DEFAULT) -> ThreeSegmentCheck:
    """Three distinct boundary segments through a common point p.

    For 4x4 triples p must be a corner; a negative verdict on validated input
    is returned as a falsification event.  For other sizes the plain corner
    test is reported without that expectation.
    """
    segs = [tuple(np.asarray(e, dtype=float) for e in s) for s in segments]
    if len(segs) != 3:
        raise ValueError("exactly three segments are required")
    scale = triple.scale
    tol = settings.corner_member * scale
    ends = [e for s in segs for e in s]
    common = [e for e in ends if all(min(np.linalg.norm(e - s[0]), np.linalg.norm(e - s[1])) <= tol for s in segs)]
    if not common:
        raise ValueError("segments are not concurrent")
    p = common[0]
    dirs = []
    for a, b in segs:
        if np.linalg.norm(b - a) <= tol:
            raise ValueError("degenerate segment")
        for x in (a, b, (a + b) / 2):
            if not _on_boundary(triple, x, tol):
                raise ValueError(f"segment point {x.tolist()} is not on the boundary of W")
        dirs.append(unit(b - a))
    for i in range(3):
        for j in range(i + 1, 3):
            if abs(np.dot(dirs[i], dirs[j])) > 1 - 1e-9:
                raise ValueError("segments are not mutually distinct")
    verdict = is_corner_point(triple, p, settings=settings)
    applies = triple.n == 4
    falsified = applies and not verdict.is_corner
    if falsified:
        log.warning("FALSIFICATION: %s (at %s)", THREE_SEGMENT_CLAIM, p.tolist())
    return ThreeSegmentCheck(verdict.point, verdict.is_corner, falsified, applies)
