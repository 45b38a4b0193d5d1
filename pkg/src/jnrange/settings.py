"""Central record of every numerical tolerance, seed and search budget.

All compute modules read their thresholds from a :class:`Settings` instance
(``DEFAULT`` unless one is passed explicitly), and the CLI echoes the record
into each report so that a run can be reproduced exactly.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass


@dataclass(frozen=True)
class Settings:
    # core linear algebra
    hermitian_reject: float = 1e-9
    rank_tol: float = 1e-8
    orthonormal_tol: float = 1e-10

    # eigenvalue clustering of the pencil u.A (relative to max(1, ||pencil||))
    cluster_gap: float = 1e-7
    face_dim_tol: float = 1e-7

    # rank-1 tuple search
    rank1_grid: int = 512
    rank1_accept: float = 1e-8
    rank1_verify: float = 1e-6
    nm_maxiter: int = 200
    dedup_angle: float = 1e-4
    continuum_warn: int = 20

    # elliptic census
    census_grid: int = 512
    census_exclusion: float = 0.05
    ellipse_fit_residual: float = 1e-6
    intersection_tol: float = 1e-5

    # shape classification
    sylvester_tol: float = 1e-10
    eig_coincide: float = 1e-7
    triangle_area: float = 1e-9
    common_eigvec: float = 1e-8
    on_ellipse: float = 1e-8

    # corner points
    corner_probes: int = 2000
    corner_member: float = 1e-6
    corner_rank: float = 1e-4
    corner_exact: float = 1e-9
    in_w_tol: float = 1e-6

    # separable
    seesaw_restarts: int = 32
    seesaw_tol: float = 1e-12
    seesaw_maxiter: int = 5000
    barrier_mu0: float = 1.0
    barrier_mu_min: float = 1e-10
    barrier_shrink: float = 4.0

    seed: int = 2137

    def replace(self, **changes) -> "Settings":
        return dataclasses.replace(self, **changes)

    def scaled(self, factor: float) -> "Settings":
        """Return a copy with every float tolerance multiplied by ``factor``.

        Used by the CLI's ``--tol`` flag to stress the verification harness.
        """
        changes = {
            f.name: getattr(self, f.name) * factor
            for f in dataclasses.fields(self)
            if isinstance(getattr(self, f.name), float)
            and f.name not in {"barrier_mu0", "barrier_shrink", "census_exclusion"}
        }
        return dataclasses.replace(self, **changes)

    def as_dict(self) -> dict:
        return dataclasses.asdict(self)


DEFAULT = Settings()
