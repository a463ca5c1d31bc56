"""Cut improvement by sparse recovery.

Given a rough cut ``omega`` around a cluster ``C``, the indicator difference
``1_W - 1_U`` (``W = omega - C``, ``U = C - omega``) is a sparse solution of
``L x = L 1_omega``.  :func:`cluster_pursuit` recovers it with SubspacePursuit
and flips the vertices whose coefficients clear the threshold ``R``.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .errors import BadParametersError, BadSparsityError, EmptyCutError, FullCutError
from .graph import as_vertex_set, conductance, indicator
from .recovery import LaplacianOperator, subspace_pursuit

__all__ = [
    "PursuitConfig",
    "default_sp_iters",
    "cluster_pursuit",
    "cluster_pursuit_sweep",
    "threshold_signed_support",
]


def default_sp_iters(n):
    return max(1, math.ceil(math.log2(max(n, 2))))


@dataclass(frozen=True)
class PursuitConfig:
    """Parameters of :func:`cluster_pursuit`.

    ``s`` bounds the number of vertices that may change membership, ``R`` is
    the coefficient threshold for a change and ``max_sp_iters`` caps the
    SubspacePursuit passes (``None`` means ``ceil(log2 n)``).
    """

    s: int
    R: float = 0.5
    max_sp_iters: Optional[int] = None
    cg_iters: int = 10

    def __post_init__(self):
        if not (0 <= self.R < 1):
            raise BadParametersError(f"R={self.R} must lie in [0, 1)")
        if self.s < 1:
            raise BadSparsityError(f"s={self.s} must be at least 1")
        if self.max_sp_iters is not None and self.max_sp_iters < 1:
            raise BadParametersError("max_sp_iters must be at least 1")


def threshold_signed_support(x, R=0.5):
    """Return ``(W, U)``: indices with ``x > R`` and with ``x < -R``."""
    x = np.asarray(x)
    return np.flatnonzero(x > R), np.flatnonzero(x < -R)


def cluster_pursuit(g, omega, cfg, return_coefficients=False):
    """Improve the cut ``omega`` of graph ``g``.

    Returns the improved vertex set, or ``(C, x)`` with the recovered sparse
    coefficient vector when ``return_coefficients`` is set.
    """
    n = g.n
    omega = as_vertex_set(omega, n)
    if omega.size == 0:
        raise EmptyCutError("initial cut is empty")
    if omega.size == n:
        raise FullCutError("initial cut is the whole vertex set")
    if cfg.s >= n:
        raise BadSparsityError(f"s={cfg.s} must be smaller than n={n}")

    op = LaplacianOperator(g)
    y = op.matvec(indicator(omega, n))
    iters = cfg.max_sp_iters or default_sp_iters(n)
    x = subspace_pursuit(op, y, cfg.s, iters, cg_iters=cfg.cg_iters)

    W, U = threshold_signed_support(x, cfg.R)
    found = np.union1d(np.setdiff1d(omega, W, assume_unique=True), U)
    if return_coefficients:
        return found, x
    return found


def cluster_pursuit_sweep(g, omega, s_values, R=0.5, max_sp_iters=None):
    """Run :func:`cluster_pursuit` for each ``s`` and keep the lowest-conductance
    output.  Returns ``(cluster, best_s, conductances)``; ties keep the earlier
    ``s``.  Outputs that are empty or the whole graph are skipped.
    """
    best, best_s, best_phi = None, None, math.inf
    scores = {}
    for s in s_values:
        C = cluster_pursuit(g, omega, PursuitConfig(int(s), R, max_sp_iters))
        if C.size == 0 or C.size == g.n:
            scores[int(s)] = math.nan
            continue
        phi = conductance(g, C)
        scores[int(s)] = phi
        if phi < best_phi:
            best, best_s, best_phi = C, int(s), phi
    if best is None:
        raise EmptyCutError("every sweep value produced a degenerate cluster")
    return best, best_s, scores
