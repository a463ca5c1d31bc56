"""Self-tuning k-nearest-neighbour similarity graphs for point clouds.

Each point ``x_i`` gets a local scale ``sigma_i``, its distance to the
``r``-th nearest other point.  The directed kernel

    W[i, j] = exp(-||x_i - x_j||**2 / (sigma_i * sigma_j))   for j in NN(i, K)

is symmetrised as ``A = W^T W`` with the diagonal removed.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
import scipy.sparse as sp

from .errors import BadParametersError, DataError
from .graph import SparseGraph

__all__ = ["PointSet", "nearest_neighbors", "build_knn_graph", "SIGMA_FLOOR"]

SIGMA_FLOOR = 1e-12


@dataclass
class PointSet:
    points: np.ndarray
    labels: Optional[np.ndarray] = None

    def __post_init__(self):
        self.points = np.atleast_2d(np.asarray(self.points, dtype=float))
        if self.points.ndim != 2 or self.points.shape[1] < 1:
            raise BadParametersError("points must form an (n, d) array with d >= 1")
        if not np.all(np.isfinite(self.points)):
            raise DataError("points contain NaN or infinite entries")
        if self.labels is not None:
            self.labels = np.asarray(self.labels, dtype=np.int64)
            if self.labels.shape != (self.points.shape[0],):
                raise DataError("need exactly one label per point")

    @property
    def n(self):
        return self.points.shape[0]


def nearest_neighbors(X, K, chunk=512):
    """Exact ``K`` nearest other points of every row of ``X``.

    Returns ``(indices, sq_dists)``, both ``(n, K)``, ordered by distance with
    ties broken by lower index.
    """
    X = np.asarray(X, dtype=float)
    n = X.shape[0]
    if not (1 <= K < n):
        raise BadParametersError(f"K={K} must lie in [1, {n})")
    sq = np.einsum("ij,ij->i", X, X)
    idx_out = np.empty((n, K), dtype=np.int64)
    d_out = np.empty((n, K))
    for start in range(0, n, chunk):
        stop = min(start + chunk, n)
        D2 = sq[start:stop, None] + sq[None, :] - 2.0 * (X[start:stop] @ X.T)
        np.maximum(D2, 0.0, out=D2)
        rows = np.arange(stop - start)
        D2[rows, rows + start] = np.inf
        kth = np.partition(D2, K - 1, axis=1)[:, K - 1]
        # expansion rounding can reorder near-ties, so widen the cut and
        # re-rank the candidates on exactly computed distances
        slack = 1e-9 * (kth + sq[start:stop] + 1.0)
        for r in rows:
            i = start + r
            cand = np.flatnonzero(D2[r] <= kth[r] + slack[r])
            cand = cand[cand != i]
            diff = X[cand] - X[i]
            exact = np.einsum("ij,ij->i", diff, diff)
            order = np.lexsort((cand, exact))[:K]
            idx_out[i] = cand[order]
            d_out[i] = exact[order]
    return idx_out, d_out


def build_knn_graph(points, K=15, r=10):
    """Similarity graph of a point set; see the module docstring.

    ``sigma_i`` is floored at ``SIGMA_FLOOR`` so duplicate points do not
    produce a zero scale.
    """
    X = points.points if isinstance(points, PointSet) else PointSet(points).points
    n = X.shape[0]
    if not (1 <= r <= K < n):
        raise BadParametersError(f"need 1 <= r <= K < n, got r={r}, K={K}, n={n}")
    nbr, d2 = nearest_neighbors(X, K)
    sigma = np.maximum(np.sqrt(d2[:, r - 1]), SIGMA_FLOOR)
    w = np.exp(-d2 / (sigma[:, None] * sigma[nbr]))
    W = sp.csr_matrix((w.ravel(), (np.repeat(np.arange(n), K), nbr.ravel())), shape=(n, n))
    A = (W.T @ W).tocsr()
    A.setdiag(0.0)
    A = 0.5 * (A + A.T)
    A.eliminate_zeros()
    return SparseGraph(A)
