"""Flat faces of W for 4x4 triples.

Rank-3 faces come from rank-one tuples: directions u where the three lowest
eigenvalues of u.A coincide, so that ``u0 + u.A`` (with u0 = -lambda_min) is
positive semidefinite of rank one and its kernel carries the face.  Rank-2
elliptic faces come from directions where exactly the two lowest eigenvalues
coincide and the face is two-dimensional.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from . import pencil
from .geometry import (
    cluster_size,
    face_dimension,
    face_image_extent,
    fibonacci_directions,
    measure_vector,
    segment_endpoints,
    support,
    unit,
)
from .linalg import DimensionError, Triple, numerical_rank, principal_minors
from .settings import DEFAULT, Settings
from .shapes import ClassSignature, PlaneEllipse, ShapeClass, ShapeVerdict, classify_shape

log = logging.getLogger(__name__)


class DegenerateFaceError(ValueError):
    """The face of a rank-one tuple is a segment or a point."""

    def __init__(self, span_dim: int):
        super().__init__(f"traceless span of the compressed face has dimension {span_dim} < 2")
        self.span_dim = span_dim


@dataclass
class RankOneTuple:
    """``u0 + u.A`` is positive semidefinite of rank one; kernel_basis spans its kernel."""

    u0: float
    u: np.ndarray
    kernel_basis: np.ndarray = field(repr=False)
    residual: float = 0.0

    @property
    def coefficients(self) -> np.ndarray:
        return np.concatenate([[self.u0], self.u])

    def pencil(self, triple: Triple) -> np.ndarray:
        return self.u0 * np.eye(triple.n) + triple.pencil(self.u)


@dataclass
class CompressedFace:
    """A 2-dimensional face as ``offset + lin @ (tr rho B1, tr rho B2)``."""

    b1: np.ndarray
    b2: np.ndarray
    offset: np.ndarray
    lin: np.ndarray

    def to_space(self, z: complex) -> np.ndarray:
        return self.offset + self.lin @ np.array([z.real, z.imag])


@dataclass
class EllipseFit:
    center: np.ndarray
    axes: np.ndarray  # columns: unit directions of the semi-axes
    semi_axes: np.ndarray
    residual: float


@dataclass
class FaceRecord:
    direction: np.ndarray
    support_value: float
    rank: int
    dim: int
    shape: ShapeClass
    basis: np.ndarray = field(repr=False)
    compressed_pair: CompressedFace | None = field(default=None, repr=False)
    segments: list[tuple[np.ndarray, np.ndarray]] = field(default_factory=list)
    ellipse: EllipseFit | None = None
    verdict: ShapeVerdict | None = field(default=None, repr=False)

    @property
    def elliptic(self) -> bool:
        return self.shape is ShapeClass.ELLIPSE

    @property
    def non_elliptic(self) -> bool:
        return self.dim == 2 and self.shape.type_index is not None


def _require_n4(triple: Triple) -> None:
    if triple.n != 4:
        raise DimensionError(f"face detection is implemented for 4x4 triples, got n={triple.n}")


def _sorted_by_direction(dirs: list[np.ndarray]) -> list[int]:
    return sorted(range(len(dirs)), key=lambda i: tuple(-np.round(dirs[i], 9)))


def _tuple_at(triple: Triple, u: np.ndarray, settings: Settings) -> RankOneTuple | None:
    h = triple.pencil(u)
    w, v = np.linalg.eigh(h)
    scale = triple.scale
    norm = max(1.0, float(np.abs(w).max()))
    if w[2] - w[0] > settings.rank1_accept * norm or w[3] - w[0] <= settings.cluster_gap * norm:
        return None
    p = h - w[0] * np.eye(4)
    m2 = float(np.abs(principal_minors(p, 2)).max())
    m3 = float(np.abs(principal_minors(p, 3)).max())
    tol = settings.rank1_verify
    if m2 > tol * scale**2 or m3 > tol * scale**3 or numerical_rank(p, tol) != 1:
        return None
    return RankOneTuple(float(-w[0]), u, v[:, :3], max(m2 / scale**2, m3 / scale**3))


def find_rank1_tuples(
    triple: Triple, settings: Settings = DEFAULT, grid: int | None = None, seed: int | None = None
) -> list[RankOneTuple]:
    """All rank-one tuples, oriented so that the pencil is positive semidefinite.

    Candidate directions minimize ``lambda_3 - lambda_1`` of u.A; they are
    accepted below ``rank1_accept * ||u.A||`` and then verified through the
    principal minors of the shifted pencil.
    """
    _require_n4(triple)
    grid = settings.rank1_grid if grid is None else grid
    seed = settings.seed if seed is None else seed
    starts = fibonacci_directions(grid, seed, jitter=0.0)
    candidates = pencil.search(triple.stack, starts, 3, settings.nm_maxiter)
    accepted = [t for u in candidates if (t := _tuple_at(triple, unit(u), settings)) is not None]
    keep = pencil.dedup_directions([t.u for t in accepted], settings.dedup_angle)
    tuples = [accepted[i] for i in keep]
    if len(tuples) > settings.continuum_warn:
        log.warning("%d rank-one tuples accepted; a continuum of flat faces is suspected", len(tuples))
    order = _sorted_by_direction([t.u for t in tuples])
    return [tuples[i] for i in order]


def compress_to_pair(triple: Triple, t: RankOneTuple, settings: Settings = DEFAULT) -> CompressedFace:
    """A 3x3 hermitian pair whose numerical range is affinely the face of ``t``."""
    comp = triple.compressed(t.kernel_basis)
    traces = np.array([np.trace(c).real / 3 for c in comp.matrices])
    traceless = [c - tr * np.eye(3) for c, tr in zip(comp.matrices, traces)]
    rows = np.array([np.concatenate([c.real.ravel(), c.imag.ravel()]) for c in traceless])
    uu, s, vt = np.linalg.svd(rows, full_matrices=False)
    span = int(np.sum(s > settings.face_dim_tol * triple.scale))
    if span < 2:
        raise DegenerateFaceError(span)
    b = [(vt[j, :9] + 1j * vt[j, 9:]).reshape(3, 3) for j in range(2)]
    b = [(x + x.conj().T) / 2 for x in b]
    return CompressedFace(b[0], b[1], traces, uu[:, :2] * s[:2])


def face_segments(triple: Triple, basis: np.ndarray, u: np.ndarray, settings: Settings = DEFAULT,
                  grid: int = 360) -> list[tuple[np.ndarray, np.ndarray]]:
    """Endpoints of the one-dimensional faces of the planar face on span(basis)."""
    comp = triple.compressed(basis)
    q, _ = np.linalg.qr(np.column_stack([u, np.eye(3)]))
    e1, e2 = q[:, 1], q[:, 2]
    mats = np.stack([comp.pencil(e1), comp.pencil(e2)])
    theta = 2 * np.pi * (np.arange(grid) + 0.5) / grid
    starts = np.column_stack([np.cos(theta), np.sin(theta)])
    norm = triple.scale
    dirs, out = [], []
    for d in pencil.search(mats, starts, 2, settings.nm_maxiter):
        w, v = np.linalg.eigh(d[0] * mats[0] + d[1] * mats[1])
        if w[1] - w[0] > settings.rank1_accept * norm or w[2] - w[0] <= settings.cluster_gap * norm:
            continue
        sub = basis @ v[:, :2]
        if face_dimension(triple, sub, settings) != 1:
            continue
        if any(np.dot(d, x) > np.cos(settings.dedup_angle) for x in dirs):
            continue
        dirs.append(d)
        out.append(segment_endpoints(triple, sub))
    return out


def _ellipse_from_face(triple: Triple, basis: np.ndarray, u: np.ndarray, settings: Settings,
                       num: int = 16) -> EllipseFit:
    """Exact ellipse of a rank-2 face plus an algebraic conic fit as a check."""
    center, m = face_image_extent(triple, basis)
    uu, s, _ = np.linalg.svd(m)
    # traceless basis is Frobenius-normalized: rho = 1/2 + sum x_k g_k, |x| <= 1/sqrt(2)
    semi = s[:2] / np.sqrt(2)
    axes = uu[:, :2]
    comp = triple.compressed(basis)
    q, _ = np.linalg.qr(np.column_stack([u, np.eye(3)]))
    plane = q[:, 1:3]
    pts = []
    for phi in 2 * np.pi * np.arange(num) / num:
        d = plane @ np.array([np.cos(phi), np.sin(phi)])
        _, v = np.linalg.eigh(comp.pencil(d))
        pts.append(measure_vector(comp, v[:, 0]) - center)
    xy = np.array(pts) @ plane
    x, y = xy[:, 0], xy[:, 1]
    design = np.column_stack([x * x, x * y, y * y, x, y, np.ones_like(x)])
    sv = np.linalg.svd(design, compute_uv=False)
    residual = float(sv[-1] / max(sv[0], 1e-300))
    return EllipseFit(center, axes, semi, residual)


def elliptic_census(
    triple: Triple,
    settings: Settings = DEFAULT,
    grid: int | None = None,
    tuples: list[RankOneTuple] | None = None,
) -> list[FaceRecord]:
    """All rank-2 faces that are two-dimensional (hence elliptic discs)."""
    _require_n4(triple)
    grid = settings.census_grid if grid is None else grid
    if tuples is None:
        tuples = find_rank1_tuples(triple, settings)
    starts = fibonacci_directions(grid)
    for t in tuples:
        starts = starts[starts @ t.u < np.cos(settings.census_exclusion)]
    candidates = pencil.search(triple.stack, starts, 2, settings.nm_maxiter)
    found: list[np.ndarray] = []
    for u in candidates:
        u = unit(u)
        w, v = np.linalg.eigh(triple.pencil(u))
        norm = max(1.0, float(np.abs(w).max()))
        if w[1] - w[0] > settings.rank1_accept * norm:
            continue
        if cluster_size(w, norm, settings) != 2 or face_dimension(triple, v[:, :2], settings) != 2:
            continue
        if any(np.dot(u, x) > np.cos(settings.dedup_angle) for x in found):
            continue
        found.append(u)
    records = []
    for i in _sorted_by_direction(found):
        s = support(triple, found[i], settings)
        fit = _ellipse_from_face(triple, s.basis, s.direction, settings)
        if fit.residual > settings.ellipse_fit_residual:
            log.warning("ellipse fit residual %.2e at direction %s", fit.residual, s.direction)
        records.append(FaceRecord(s.direction, s.support_value, 2, 2, ShapeClass.ELLIPSE, s.basis, ellipse=fit))
    return records


def rank3_face(triple: Triple, t: RankOneTuple, settings: Settings = DEFAULT) -> FaceRecord:
    """Classify the face carried by the kernel of a rank-one tuple."""
    h = -t.u0
    try:
        pair = compress_to_pair(triple, t, settings)
    except DegenerateFaceError as exc:
        dim = exc.span_dim
        shape = ShapeClass.SEGMENT if dim == 1 else ShapeClass.POINT
        segs = [segment_endpoints(triple, t.kernel_basis)] if dim == 1 else []
        return FaceRecord(t.u, h, 3, dim, shape, t.kernel_basis, segments=segs)
    verdict = classify_shape(pair.b1, pair.b2, settings)
    segs = face_segments(triple, t.kernel_basis, t.u, settings)
    if verdict.shape.flat_edges != len(segs):
        log.warning("face at %s classified %s but has %d flat edges", t.u, verdict.shape.value, len(segs))
    return FaceRecord(t.u, h, 3, 2, verdict.shape, t.kernel_basis, pair, segs, verdict=verdict)


@dataclass
class FaceReport:
    tuples: list[RankOneTuple]
    rank3: list[FaceRecord]
    elliptic: list[FaceRecord]
    signature: ClassSignature | None
    counts: tuple[int, int, int, int]

    @property
    def faces(self) -> list[FaceRecord]:
        return self.rank3 + self.elliptic


def face_counts(faces: list[FaceRecord]) -> tuple[int, int, int, int]:
    counts = [0, 0, 0, 0]
    for f in faces:
        if f.dim == 2 and f.shape.type_index is not None:
            counts[f.shape.type_index] += 1
    return tuple(counts)


def analyze(triple: Triple, settings: Settings = DEFAULT, census: bool = True) -> FaceReport:
    """Rank-one tuples, classified rank-3 faces and (optionally) the elliptic census."""
    _require_n4(triple)
    tuples = find_rank1_tuples(triple, settings)
    rank3 = [rank3_face(triple, t, settings) for t in tuples]
    elliptic = elliptic_census(triple, settings, tuples=tuples) if census else []
    counts = face_counts(rank3)
    try:
        signature = ClassSignature.from_counts(counts)
    except ValueError:
        signature = None
    return FaceReport(tuples, rank3, elliptic, signature, counts)


def classify_jnr(triple: Triple, settings: Settings = DEFAULT) -> ClassSignature:
    """Counts of (oval, loaf, droplet, triangle) faces and the matching class."""
    from .geometry import dimension

    _require_n4(triple)
    if dimension(triple) < 3:
        raise DegenerateRangeError("joint numerical range has dimension < 3")
    report = analyze(triple, settings, census=False)
    return ClassSignature.from_counts(report.counts)


class DegenerateRangeError(ValueError):
    pass


@dataclass
class Intersection:
    disjoint: bool
    gap: float
    dim: int = -1
    endpoints: tuple[np.ndarray, np.ndarray] | None = None
    exposed: bool = False

    @property
    def length(self) -> float:
        if self.endpoints is None:
            return 0.0
        return float(np.linalg.norm(self.endpoints[1] - self.endpoints[0]))


def intersect_faces(triple: Triple, f: FaceRecord, g: FaceRecord, settings: Settings = DEFAULT,
                    tol: float | None = None) -> Intersection:
    """Intersection of two exposed faces.

    ``gap = min over F of <x, u_G> - h(u_G)`` is zero iff F meets G and is a
    lower bound for the distance between the faces otherwise.  The
    intersection is the face of F exposed by u_G; it is tested for being an
    exposed face of W via the bisecting direction.
    """
    tol = settings.intersection_tol if tol is None else tol
    comp = triple.compressed(f.basis)
    w, v = np.linalg.eigh(comp.pencil(g.direction))
    gap = float(w[0] - g.support_value)
    if gap > tol * triple.scale:
        return Intersection(True, gap)
    mult = cluster_size(w, max(1.0, float(np.abs(w).max())), settings.replace(cluster_gap=max(settings.cluster_gap, tol)))
    sub = f.basis @ v[:, :mult]
    dim = face_dimension(triple, sub, settings) if mult > 1 else 0
    if dim == 0:
        p = measure_vector(triple, sub[:, 0])
        ends = (p, p)
    else:
        ends = segment_endpoints(triple, sub)
    mid = f.direction + g.direction
    exposed = False
    if np.linalg.norm(mid) > 1e-12:
        s = support(triple, mid, settings)
        if s.face_dim == dim:
            other = (s.point, s.point) if dim == 0 else segment_endpoints(triple, s.basis)
            d = min(
                max(np.linalg.norm(other[0] - ends[0]), np.linalg.norm(other[1] - ends[1])),
                max(np.linalg.norm(other[0] - ends[1]), np.linalg.norm(other[1] - ends[0])),
            )
            exposed = d < tol * triple.scale
    return Intersection(False, gap, dim, ends, exposed)
