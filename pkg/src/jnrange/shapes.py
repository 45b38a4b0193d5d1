"""Shape classes of 3x3 numerical ranges and the fifteen-class signature.

A hermitian pair (B1, B2) of 3x3 matrices is identified with B = B1 + i B2,
whose numerical range W(B) is one of: oval, loaf (one flat edge), droplet
(convex hull of an ellipse and an outside point), triangle, ellipse, segment
or point.  The decision procedure is

1. unitary irreducibility via the positive definiteness of a Gram-type matrix
   built from commutators;
2. reducible pairs: normal B gives a triangle/segment/point, otherwise B
   splits as lambda + B' and W(B) is a droplet iff lambda is outside the
   ellipse W(B');
3. irreducible pairs: an explicit ellipse criterion, then a search for a
   rank-one member of span{1, B1, B2} (loaf), else oval.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field

import numpy as np

from . import pencil
from .linalg import DimensionError, commutator, hermitian, principal_minors
from .settings import DEFAULT, Settings

log = logging.getLogger(__name__)

_PAULI = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]])


class ShapeClass(str, enum.Enum):
    OVAL = "oval"
    LOAF = "loaf"
    DROPLET = "droplet"
    TRIANGLE = "triangle"
    ELLIPSE = "ellipse"
    SEGMENT = "segment"
    POINT = "point"

    @property
    def type_index(self) -> int | None:
        """Index 0..3 for the non-elliptic 2-dimensional shapes, else None."""
        return _TYPE_INDEX.get(self)

    @property
    def flat_edges(self) -> int:
        return {"loaf": 1, "droplet": 2, "triangle": 3}.get(self.value, 0)


_TYPE_INDEX = {ShapeClass.OVAL: 0, ShapeClass.LOAF: 1, ShapeClass.DROPLET: 2, ShapeClass.TRIANGLE: 3}


@dataclass(frozen=True)
class PlaneEllipse:
    """Ellipse in the complex plane given by its foci and full minor axis."""

    focus1: complex
    focus2: complex
    minor_axis: float

    @property
    def major_axis(self) -> float:
        return float(np.hypot(self.minor_axis, abs(self.focus1 - self.focus2)))

    @property
    def center(self) -> complex:
        return (self.focus1 + self.focus2) / 2


@dataclass(frozen=True)
class ShapeVerdict:
    shape: ShapeClass
    reducible: bool
    ellipse: PlaneEllipse | None = None
    notes: tuple[str, ...] = field(default_factory=tuple)


# Columns of the fifteen-class table: counts of (oval, loaf, droplet, triangle).
CLASS_TABLE: tuple[tuple[int, int, int, int], ...] = (
    (0, 0, 0, 0), (1, 0, 0, 0), (0, 1, 0, 0), (0, 2, 0, 0), (0, 1, 1, 0),
    (0, 1, 0, 1), (0, 0, 1, 0), (0, 0, 2, 0), (0, 0, 3, 0), (0, 0, 1, 1),
    (0, 0, 1, 2), (0, 0, 2, 1), (0, 0, 0, 1), (0, 0, 0, 2), (0, 0, 0, 4),
)
CORNER_CLASSES = frozenset({8, 9, 10, 11, 13, 14})


class SignatureError(ValueError):
    """Face counts that match no column of the class table."""


@dataclass(frozen=True)
class ClassSignature:
    a0: int
    a1: int
    a2: int
    a3: int
    class_index: int

    @classmethod
    def from_counts(cls, counts) -> "ClassSignature":
        counts = tuple(int(c) for c in counts)
        try:
            index = CLASS_TABLE.index(counts)
        except ValueError:
            raise SignatureError(f"face counts {counts} match no column of the class table") from None
        return cls(*counts, index)

    @property
    def counts(self) -> tuple[int, int, int, int]:
        return (self.a0, self.a1, self.a2, self.a3)

    @property
    def implies_corner(self) -> bool:
        return self.class_index in CORNER_CLASSES


def _check_pair(b1, b2) -> tuple[np.ndarray, np.ndarray]:
    b1, b2 = hermitian(b1), hermitian(b2)
    if b1.shape != (3, 3) or b2.shape != (3, 3):
        raise DimensionError("shape classification needs a pair of 3x3 matrices")
    return b1, b2


def _scale(b1, b2) -> float:
    return max(1.0, np.linalg.norm(b1, 2), np.linalg.norm(b2, 2))


def irreducibility_gram(b1: np.ndarray, b2: np.ndarray) -> np.ndarray:
    s = np.zeros((3, 3), dtype=complex)
    for x, y in ((b1, b2), (b1 @ b1, b2), (b1, b2 @ b2), (b1 @ b1, b2 @ b2)):
        c = commutator(x, y)
        s += c.conj().T @ c
    return (s + s.conj().T) / 2


def is_unitarily_irreducible(b1, b2, settings: Settings = DEFAULT) -> bool:
    return _irreducibility(*_check_pair(b1, b2), settings)[0]


def _irreducibility(b1, b2, settings: Settings) -> tuple[bool, bool]:
    """(irreducible, borderline) from the Sylvester criterion on the Gram matrix."""
    # the verdict is affine invariant, so work with traceless, unit-norm matrices
    # and keep the threshold from collapsing when S is pure roundoff
    b1, b2 = (b - np.trace(b).real / 3 * np.eye(3) for b in (b1, b2))
    size = max(np.linalg.norm(b1, 2), np.linalg.norm(b2, 2))
    if size == 0:
        return False, False
    s = irreducibility_gram(b1 / size, b2 / size)
    norm = max(np.linalg.norm(s, 2), 1.0)
    ratios = [np.linalg.det(s[:k, :k]).real / (settings.sylvester_tol * norm**k) for k in (1, 2, 3)]
    irreducible = all(r > 1 for r in ratios)
    borderline = any(1e-2 < r < 1e2 for r in ratios)
    return irreducible, borderline


def _bloch_map(c1: np.ndarray, c2: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """W(c1, c2) of a 2x2 pair is {center + M s : |s| <= 1}."""
    center = np.array([np.trace(c1).real, np.trace(c2).real]) / 2
    m = np.array([[np.real(np.trace(c @ p)) / 2 for p in _PAULI] for c in (c1, c2)])
    return center, m


def _two_by_two_ellipse(c: np.ndarray) -> PlaneEllipse:
    mu = np.linalg.eigvals(c)
    delta = np.real(np.trace(c.conj().T @ c)) - np.sum(np.abs(mu) ** 2)
    return PlaneEllipse(complex(mu[0]), complex(mu[1]), float(np.sqrt(max(delta, 0.0))))


def classify_reducible(b1, b2, settings: Settings = DEFAULT) -> ShapeVerdict:
    b1, b2 = _check_pair(b1, b2)
    scale = _scale(b1, b2)
    comm = commutator(b1, b2)
    b = b1 + 1j * b2
    if np.linalg.norm(comm) <= settings.common_eigvec * scale**2:
        lam = np.linalg.eigvals(b)
        diam = max(abs(x - y) for x in lam for y in lam)
        if diam <= settings.common_eigvec * scale:
            return ShapeVerdict(ShapeClass.POINT, True)
        d1, d2 = lam[1] - lam[0], lam[2] - lam[0]
        area = abs((d1.conjugate() * d2).imag) / 2
        if area > settings.triangle_area * diam**2:
            return ShapeVerdict(ShapeClass.TRIANGLE, True)
        return ShapeVerdict(ShapeClass.SEGMENT, True)

    # the common eigenvector spans the kernel of i[B1, B2]
    w, vecs = np.linalg.eigh(1j * comm)
    for j in np.argsort(np.abs(w)):
        v = vecs[:, j]
        l1, l2 = np.vdot(v, b1 @ v).real, np.vdot(v, b2 @ v).real
        res = max(np.linalg.norm(b1 @ v - l1 * v), np.linalg.norm(b2 @ v - l2 * v))
        if res < settings.common_eigvec * scale:
            break
    else:
        raise ArithmeticError("no common eigenvector of a pair judged reducible; tolerance failure")
    q, _ = np.linalg.qr(np.column_stack([v, np.eye(3)]))
    rest = q[:, 1:3]
    c1, c2 = (rest.conj().T @ x @ rest for x in (b1, b2))
    center, m = _bloch_map(c1, c2)
    offset = np.array([l1, l2]) - center
    s = np.linalg.pinv(m) @ offset
    radius = float(np.linalg.norm(s))
    if np.linalg.norm(m @ s - offset) > settings.on_ellipse * scale:
        radius = np.inf
    ellipse = _two_by_two_ellipse(c1 + 1j * c2)
    notes: tuple[str, ...] = ()
    if abs(radius - 1) <= settings.on_ellipse:
        notes = ("isolated eigenvalue lies on the ellipse; counted as ellipse by convention",)
    if radius > 1 + settings.on_ellipse:
        return ShapeVerdict(ShapeClass.DROPLET, True, ellipse, notes)
    return ShapeVerdict(ShapeClass.ELLIPSE, True, ellipse, notes)


def ellipse_test(b1, b2, settings: Settings = DEFAULT) -> PlaneEllipse | None:
    """Ellipse parameters when W(B1 + i B2) is an elliptic disc, else None.

    The point ``lam = tr B + (sum |l_i|^2 l_i - tr(B* B^2)) / delta`` must be
    an eigenvalue of B; the ellipse then has the two other eigenvalues as
    foci and minor axis ``sqrt(delta)``.  Coincidence is tested through
    ``|det(B - lam)|`` which, unlike the eigenvalues themselves, is well
    conditioned when B has a nearly defective multiple eigenvalue.
    """
    b1, b2 = _check_pair(b1, b2)
    b = b1 + 1j * b2
    lam = np.linalg.eigvals(b)
    delta = float(np.real(np.trace(b.conj().T @ b)) - np.sum(np.abs(lam) ** 2))
    norm = max(np.linalg.norm(b, 2), 1e-300)
    if delta <= settings.eig_coincide * norm**2:
        return None
    point = np.trace(b) + (np.sum(np.abs(lam) ** 2 * lam) - np.trace(b.conj().T @ b @ b)) / delta
    diam = max(abs(x - y) for x in lam for y in lam)
    size = max(diam, norm)
    if abs(np.linalg.det(b - point * np.eye(3))) > settings.eig_coincide * size**3:
        return None
    j = int(np.argmin(np.abs(lam - point)))
    f1, f2 = (complex(lam[i]) for i in range(3) if i != j)
    return PlaneEllipse(f1, f2, float(np.sqrt(delta)))


def rank_one_directions(b1, b2, settings: Settings = DEFAULT, grid: int = 360) -> list[np.ndarray]:
    """Unit (u1, u2) for which u0 + u1 B1 + u2 B2 has rank one for some u0."""
    b1, b2 = _check_pair(b1, b2)
    mats = np.stack([b1, b2])
    scale = _scale(b1, b2)
    theta = 2 * np.pi * (np.arange(grid) + 0.5) / grid
    starts = np.column_stack([np.cos(theta), np.sin(theta)])
    found: list[np.ndarray] = []
    for u in pencil.search(mats, starts, 2, settings.nm_maxiter):
        w = np.linalg.eigvalsh(u[0] * b1 + u[1] * b2)
        if w[1] - w[0] > settings.rank1_accept * scale or w[2] - w[0] <= settings.rank1_verify * scale:
            continue
        p = (u[0] * b1 + u[1] * b2) - w[0] * np.eye(3)
        minors2 = np.abs(principal_minors(p, 2)).max()
        if minors2 > settings.rank1_verify * scale**2 or abs(np.linalg.det(p)) > settings.rank1_verify * scale**3:
            continue
        found.append(u)
    keep = pencil.dedup_directions(found, settings.dedup_angle)
    return [found[i] for i in keep]


def loaf_test(b1, b2, settings: Settings = DEFAULT) -> bool:
    return bool(rank_one_directions(b1, b2, settings))


def classify_shape(b1, b2, settings: Settings = DEFAULT) -> ShapeVerdict:
    b1, b2 = _check_pair(b1, b2)
    irreducible, borderline = _irreducibility(b1, b2, settings)
    notes = ("borderline reducibility",) if borderline else ()
    if not irreducible:
        v = classify_reducible(b1, b2, settings)
        return ShapeVerdict(v.shape, True, v.ellipse, notes + v.notes)
    ellipse = ellipse_test(b1, b2, settings)
    if ellipse is not None:
        return ShapeVerdict(ShapeClass.ELLIPSE, False, ellipse, notes)
    if loaf_test(b1, b2, settings):
        return ShapeVerdict(ShapeClass.LOAF, False, None, notes)
    return ShapeVerdict(ShapeClass.OVAL, False, None, notes)
