"""Separable joint numerical range of two-qubit (4x4) triples.

Two independent routes compute the separable support ``min tr(rho H)`` over
separable states, H = u.A:

* see-saw over pure product vectors a (x) b (an upper bound, exact when the
  alternation reaches the global minimum);
* the PPT relaxation ``rho >= 0, rho^Gamma >= 0, tr rho = 1`` solved with a
  primal log-barrier Newton method.  For two qubits PPT states are exactly
  the separable ones, so both routes must agree.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    BoundaryMesh,
    convex_hull_mesh,
    fibonacci_directions,
    measure,
    measure_vector,
    support_values,
    unit,
)
from .linalg import DimensionError, Triple, kron, partial_transpose
from .settings import DEFAULT, Settings

log = logging.getLogger(__name__)

TANGENCY_CLAIM = "every flat face of a two-qubit joint numerical range contains a product-state image"

_SIGMA = np.array([[[1, 0], [0, 1]], [[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]], dtype=complex)
# rho = (1 + sum_k x_k P_k) / 4 with P_k = sigma_i (x) sigma_j, (i, j) != (0, 0)
_PAIRS = [(i, j) for i in range(4) for j in range(4) if (i, j) != (0, 0)]
_P = np.array([kron(_SIGMA[i], _SIGMA[j]) for i, j in _PAIRS])
# partial transpose flips the sign of sigma_y in the second factor
_GAMMA_SIGN = np.array([-1.0 if j == 2 else 1.0 for _, j in _PAIRS])


class PPTSolverError(RuntimeError):
    def __init__(self, mu: float, message: str):
        super().__init__(f"{message} (barrier parameter reached {mu:.1e})")
        self.mu = mu


@dataclass
class ProductState:
    a: np.ndarray
    b: np.ndarray

    @property
    def vector(self) -> np.ndarray:
        return np.kron(self.a, self.b)

    @property
    def density(self) -> np.ndarray:
        v = self.vector
        return np.outer(v, v.conj())


@dataclass
class SepSupportResult:
    direction: np.ndarray
    seesaw_value: float
    ppt_value: float
    optimizer: ProductState = field(repr=False)
    ppt_state: np.ndarray = field(repr=False)


def _require_n4(triple: Triple) -> None:
    if triple.n != 4:
        raise DimensionError(f"separable ranges are implemented for 2x2 systems (n=4), got n={triple.n}")


def _random_qubits(rng, num: int) -> np.ndarray:
    """Uniform pure qubit states (Haar measure on the Bloch sphere)."""
    z = rng.standard_normal((num, 2)) + 1j * rng.standard_normal((num, 2))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def _lowest(m: np.ndarray, current: np.ndarray, tol: float) -> np.ndarray:
    """Lowest eigenvectors of a stack of 2x2 hermitians; keep ``current`` where degenerate."""
    w, v = np.linalg.eigh(m)
    out = v[:, :, 0].copy()
    flat = (w[:, 1] - w[:, 0]) <= tol
    out[flat] = current[flat]
    return out


def seesaw_minimize(h: np.ndarray, restarts: int, rng, settings: Settings = DEFAULT) -> tuple[float, ProductState]:
    """Alternating minimization of <a(x)b|H|a(x)b>, vectorized over restarts."""
    t = h.reshape(2, 2, 2, 2)  # t[i, k, j, l] = <e_i e_k| H |e_j e_l>
    scale = max(1.0, float(np.abs(h).max()))
    b = _random_qubits(rng, restarts)
    # first restart from the Schmidt factor of the ground state: exact when that state is a product
    ground = np.linalg.eigh(h)[1][:, 0].reshape(2, 2)
    b[0] = np.linalg.svd(ground)[2][0]
    a = np.tile(np.array([1, 0], dtype=complex), (restarts, 1))
    value = np.full(restarts, np.inf)
    active = np.ones(restarts, dtype=bool)
    for _ in range(settings.seesaw_maxiter):
        hb = np.einsum("rk,ikjl,rl->rij", b.conj(), t, b)
        a = _lowest(hb, a, 1e-14 * scale)
        ha = np.einsum("ri,ikjl,rj->rkl", a.conj(), t, a)
        b = _lowest(ha, b, 1e-14 * scale)
        new = np.real(np.einsum("rk,rkl,rl->r", b.conj(), ha, b))
        if np.any(new > value + 1e-12 * scale):
            raise ArithmeticError("see-saw objective increased")
        done = value - new < settings.seesaw_tol * scale
        value = np.minimum(value, new)
        active &= ~done
        if not active.any():
            break
    best = int(np.argmin(value))
    return float(value[best]), ProductState(a[best], b[best])


def seesaw_support(triple: Triple, u, restarts: int | None = None, seed: int | None = None,
                   settings: Settings = DEFAULT) -> tuple[float, ProductState]:
    _require_n4(triple)
    restarts = settings.seesaw_restarts if restarts is None else restarts
    seed = settings.seed if seed is None else seed
    return seesaw_minimize(triple.pencil(unit(u)), restarts, np.random.default_rng(seed), settings)


def _rho(x: np.ndarray) -> np.ndarray:
    return (np.eye(4) + np.tensordot(x, _P, axes=1)) / 4


def _barrier_terms(x: np.ndarray):
    """Barrier value, gradient and Hessian of -log det rho - log det rho^Gamma."""
    value, grad, hess = 0.0, np.zeros(15), np.zeros((15, 15))
    for sign in (np.ones(15), _GAMMA_SIGN):
        basis = _P * sign[:, None, None]
        rho = (np.eye(4) + np.tensordot(x, basis, axes=1)) / 4
        try:
            chol = np.linalg.cholesky(rho)
        except np.linalg.LinAlgError:
            return np.inf, None, None
        value -= 2 * np.sum(np.log(np.real(np.diag(chol))))
        m = np.linalg.solve(rho, basis) / 4  # rho^{-1} P_k / 4
        grad -= np.real(np.trace(m, axis1=1, axis2=2))
        hess += np.real(np.einsum("kab,lba->kl", m, m))
    return value, grad, hess


def ppt_minimize(h: np.ndarray, settings: Settings = DEFAULT) -> tuple[float, np.ndarray]:
    """min tr(rho H) over two-qubit states with positive partial transpose."""
    c = np.real(np.einsum("kab,ba->k", _P, h)) / 4
    scale = max(1.0, float(np.abs(h).max()))
    x = np.zeros(15)
    mu = settings.barrier_mu0
    while True:
        for _ in range(200):
            f0, g, hess = _barrier_terms(x)
            grad = c + mu * g
            try:
                step = -np.linalg.solve(mu * hess, grad)
            except np.linalg.LinAlgError:
                # near a degenerate optimal face the Hessian can be numerically singular
                step = -np.linalg.lstsq(mu * hess, grad, rcond=None)[0]
            decrement = float(-grad @ step)
            if decrement < 1e-9 * mu or decrement < 1e-12 * scale:
                break
            t, obj0 = 1.0, c @ x + mu * f0
            while t > 1e-16:
                f1 = _barrier_terms(x + t * step)[0]
                if np.isfinite(f1) and c @ (x + t * step) + mu * f1 <= obj0 - 0.25 * t * decrement:
                    break
                t /= 2
            else:
                # no representable decrease left; harmless once the barrier
                # gap (8 mu) is far below the accuracy we report
                if mu <= 1e-8:
                    break
                raise PPTSolverError(mu, "line search failed")
            x = x + t * step
        else:
            raise PPTSolverError(mu, "Newton iteration did not converge")
        if mu <= settings.barrier_mu_min:
            break
        mu /= settings.barrier_shrink
    rho = _rho(x)
    rho = (rho + rho.conj().T) / 2
    return float(np.real(np.trace(rho @ h))), rho


def ppt_support(triple: Triple, u, settings: Settings = DEFAULT) -> tuple[float, np.ndarray]:
    _require_n4(triple)
    return ppt_minimize(triple.pencil(unit(u)), settings)


def sep_support(triple: Triple, u, restarts: int | None = None, seed: int | None = None,
                settings: Settings = DEFAULT) -> SepSupportResult:
    u = unit(u)
    sv, state = seesaw_support(triple, u, restarts, seed, settings)
    pv, rho = ppt_support(triple, u, settings)
    return SepSupportResult(u, sv, pv, state, rho)


def direction_seeds(seed: int, num: int) -> list[int]:
    """Independent per-direction integer seeds derived from one master seed."""
    return [int(s.generate_state(1)[0]) for s in np.random.SeedSequence(seed).spawn(num)]


def sample_sep_boundary(triple: Triple, num_dirs: int, seed: int | None = None,
                        settings: Settings = DEFAULT) -> BoundaryMesh:
    """Boundary of W^sep from PPT optimizers over a direction lattice."""
    _require_n4(triple)
    if num_dirs < 4:
        raise ValueError("num_dirs must be at least 4")
    seed = settings.seed if seed is None else seed
    dirs = fibonacci_directions(num_dirs)
    pts, vals, used = [], [], []
    for k, u in enumerate(dirs):
        try:
            v, rho = ppt_support(triple, u, settings)
        except PPTSolverError as exc:
            log.warning("direction %d skipped: %s", k, exc)
            continue
        pts.append(measure(triple, rho))
        vals.append(v)
        used.append(u)
    pts, vals, used = np.array(pts), np.array(vals), np.array(used)
    check = fibonacci_directions(max(num_dirs, 200))
    violation = float((support_values(triple, check)[None, :] - pts @ check.T).max())
    if violation > settings.in_w_tol * triple.scale:
        log.warning("separable boundary point outside W by %.2e", violation)
    verts, tris, degenerate = convex_hull_mesh(pts)
    return BoundaryMesh(verts, tris, degenerate, used, pts, vals)


def product_vector_in_span(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """A product vector in span{x, y} (exists for every 2-dim subspace of C^2 (x) C^2)."""
    mx, my = x.reshape(2, 2), y.reshape(2, 2)
    if abs(np.linalg.det(my)) < 1e-14:
        m = my
    else:
        # det(mx + t my) is quadratic in t
        a = np.linalg.det(my)
        b = mx[0, 0] * my[1, 1] + my[0, 0] * mx[1, 1] - mx[0, 1] * my[1, 0] - my[0, 1] * mx[1, 0]
        cc = np.linalg.det(mx)
        t = np.roots([a, b, cc])[0]
        m = mx + t * my
    uu, _, vh = np.linalg.svd(m)
    return np.kron(uu[:, 0], vh[0])


@dataclass
class TangencyResult:
    direction: np.ndarray
    rank: int
    distance: float
    passed: bool
    product_image: np.ndarray
    method: str
    claim: str = TANGENCY_CLAIM


def face_product_state(triple: Triple, u, support_value: float, basis: np.ndarray,
                       settings: Settings = DEFAULT, seed: int = 0) -> tuple[np.ndarray, float, str]:
    """Product vector whose image lies in the face; (vector, distance to the face, method)."""
    h = triple.pencil(u) - support_value * np.eye(4)
    rng = np.random.default_rng(seed)
    _, state = seesaw_minimize(h, settings.seesaw_restarts, rng, settings)
    candidates = [(state.vector, "seesaw")]
    if basis.shape[1] >= 2:
        candidates.append((product_vector_in_span(basis[:, 0], basis[:, 1]), "subspace"))
    best = None
    for vec, method in candidates:
        x = measure_vector(triple, vec)
        proj = basis @ (basis.conj().T @ vec)
        if np.linalg.norm(proj) < 1e-12:
            continue
        dist = float(np.linalg.norm(x - measure_vector(triple, proj)))
        if best is None or dist < best[1]:
            best = (vec, dist, method)
        if dist <= settings.corner_member * triple.scale:
            break
    return best


def tangency_check(triple: Triple, faces, settings: Settings = DEFAULT) -> list[TangencyResult]:
    """For every detected flat face, find a product state with image in it."""
    _require_n4(triple)
    out = []
    for k, f in enumerate(faces):
        if f.dim < 1:
            continue
        vec, dist, method = face_product_state(triple, f.direction, f.support_value, f.basis, settings, k)
        passed = dist <= settings.corner_member * triple.scale
        if not passed:
            log.warning("FALSIFICATION: %s (face %d, distance %.2e)", TANGENCY_CLAIM, k, dist)
        out.append(TangencyResult(f.direction, f.rank, dist, passed, measure_vector(triple, vec), method))
    return out


@dataclass
class FlatRegion:
    normal: np.ndarray
    facets: int
    area: float
    aspect: float
    kind: str


def segment_probe(mesh: BoundaryMesh, triple: Triple | None = None, angle: float = 1e-3,
                  aspect_flag: float = 5.0, area_flag: float = 0.01,
                  settings: Settings = DEFAULT) -> list[FlatRegion]:
    """Heuristic flags for flat or ruled regions of a hull mesh (diagnostic only).

    Facets are clustered by normal.  A cluster covering more than
    ``area_flag`` of the surface is flagged flat when its plane really
    supports W^sep (checked with a PPT solve when a 4x4 triple is given;
    otherwise at least two coplanar facets are required).  Elongated
    clusters of three or more facets are flagged as ruled.
    """
    if mesh.degenerate or len(mesh.triangles) == 0:
        return []
    v = mesh.vertices[mesh.triangles]
    cross = np.cross(v[:, 1] - v[:, 0], v[:, 2] - v[:, 0])
    areas = np.linalg.norm(cross, axis=1) / 2
    normals = cross / np.maximum(2 * areas, 1e-300)[:, None]
    total = areas.sum()
    cos = np.cos(angle)
    labels = -np.ones(len(normals), dtype=int)
    reps: list[np.ndarray] = []
    for i in np.argsort(-areas, kind="stable"):
        for j, n in enumerate(reps):
            if normals[i] @ n >= cos:
                labels[i] = j
                break
        else:
            labels[i] = len(reps)
            reps.append(normals[i])
    probe = triple is not None and triple.n == 4
    flags = []
    for j, n in enumerate(reps):
        idx = np.flatnonzero(labels == j)
        area = float(areas[idx].sum())
        pts = np.unique(v[idx].reshape(-1, 3), axis=0)
        centered = pts - pts.mean(axis=0)
        s = np.linalg.svd(centered, compute_uv=False) if len(pts) > 2 else np.array([1.0, 0.0])
        aspect = float(s[0] / max(s[1], 1e-300))
        if area > area_flag * total:
            if probe:
                sag = float(-pts[0] @ n - ppt_support(triple, -n, settings)[0])
                flat = sag <= settings.in_w_tol * triple.scale
            else:
                flat = len(idx) >= 2
            if flat:
                flags.append(FlatRegion(n, len(idx), area, aspect, "flat"))
                continue
        if len(idx) >= 3 and aspect > aspect_flag:
            flags.append(FlatRegion(n, len(idx), area, aspect, "ruled"))
    return flags


def bell_hamiltonian() -> np.ndarray:
    """1 - 2|phi+><phi+| for phi+ = (|00> + |11>)/sqrt(2).

    Its ground state phi+ gives -1, while product states reach only 0
    because their overlap with phi+ is at most 1/2.
    """
    phi = np.array([1, 0, 0, 1]) / np.sqrt(2)
    return np.eye(4) - 2 * np.outer(phi, phi).astype(complex)


def is_ppt(rho: np.ndarray, tol: float = 1e-8) -> bool:
    return bool(np.linalg.eigvalsh(partial_transpose(rho)).min() >= -tol and np.linalg.eigvalsh(rho).min() >= -tol)

