"""Sparse undirected graphs and the matrix-free operators built on them.

All operators are derived from the symmetric adjacency ``A`` and the degree
vector ``d``::

    L   = I - D^-1 A          (random-walk Laplacian)
    L^T = I - A D^-1
    P   = A D^-1              (column-stochastic transition matrix)
    N   = D^-1/2 A D^-1/2

Degree-zero vertices use ``1/d = 0``, so their row of ``L`` is an identity
row and ``P`` drops any mass placed on them.
"""

import numpy as np
import scipy.sparse as sp
from scipy.sparse.csgraph import connected_components

from .errors import (
    DataError,
    DimensionMismatchError,
    DuplicateEdgeError,
    EmptyCutError,
    FullCutError,
    IndexOutOfRangeError,
    NonPositiveWeightError,
    SelfLoopError,
)

__all__ = [
    "SparseGraph",
    "build_graph",
    "as_vertex_set",
    "indicator",
    "apply_L",
    "apply_L_transpose",
    "apply_P",
    "apply_N",
    "induced_subgraph",
    "cut_and_volume",
    "conductance",
    "Partition",
]


def _safe_inverse(d):
    inv = np.zeros_like(d, dtype=float)
    nz = d > 0
    inv[nz] = 1.0 / d[nz]
    return inv


class SparseGraph:
    """Immutable weighted undirected graph stored as a CSR adjacency matrix.

    Use :func:`build_graph` for edge lists or :meth:`from_adjacency` for an
    existing symmetric matrix.  Column indices are sorted within each row.
    """

    def __init__(self, adjacency):
        A = sp.csr_matrix(adjacency, dtype=float, copy=True)
        A.eliminate_zeros()
        A.sum_duplicates()
        A.sort_indices()
        n = A.shape[0]
        if A.shape != (n, n):
            raise DimensionMismatchError(f"adjacency must be square, got {A.shape}")
        if A.nnz and A.data.min() < 0:
            raise NonPositiveWeightError("negative edge weight in adjacency")
        if A.diagonal().any():
            raise SelfLoopError("adjacency has nonzero diagonal")
        if n and abs(A - A.T).max() > 0:
            raise DataError("adjacency is not symmetric")
        A.data.flags.writeable = False
        A.indices.flags.writeable = False
        A.indptr.flags.writeable = False
        self._A = A
        deg = np.asarray(A.sum(axis=1)).ravel()
        deg.flags.writeable = False
        self._deg = deg
        inv = _safe_inverse(deg)
        inv.flags.writeable = False
        self._inv_deg = inv
        isq = np.sqrt(inv)
        isq.flags.writeable = False
        self._inv_sqrt_deg = isq

    @classmethod
    def from_adjacency(cls, adjacency):
        return cls(adjacency)

    @property
    def n(self):
        return self._A.shape[0]

    @property
    def adjacency(self):
        return self._A

    @property
    def row_offsets(self):
        return self._A.indptr

    @property
    def col_indices(self):
        return self._A.indices

    @property
    def weights(self):
        return self._A.data

    @property
    def degrees(self):
        return self._deg

    @property
    def inv_degrees(self):
        return self._inv_deg

    @property
    def num_edges(self):
        return self._A.nnz // 2

    @property
    def volume(self):
        return float(self._deg.sum())

    def edges(self):
        """Return ``(u, v, w)`` arrays with ``u < v``, one row per edge."""
        coo = sp.triu(self._A, k=1).tocoo()
        order = np.lexsort((coo.col, coo.row))
        return coo.row[order], coo.col[order], coo.data[order]

    def is_connected(self):
        if self.n == 0:
            return True
        ncomp, _ = connected_components(self._A, directed=False)
        return ncomp == 1

    def components(self):
        """Component label for every vertex."""
        _, labels = connected_components(self._A, directed=False)
        return labels

    def to_dense(self):
        return self._A.toarray()

    def laplacian_dense(self):
        """Explicit ``I - D^-1 A``; intended for small graphs and tests."""
        return np.eye(self.n) - self._inv_deg[:, None] * self._A.toarray()

    def __repr__(self):
        return f"SparseGraph(n={self.n}, edges={self.num_edges})"


def build_graph(edges, n):
    """Build a :class:`SparseGraph` from ``(u, v, w)`` or ``(u, v)`` tuples.

    Every undirected edge must appear once; the reversed pair counts as a
    duplicate.
    """
    n = int(n)
    if n < 0:
        raise IndexOutOfRangeError("vertex count must be nonnegative")
    rows, cols, vals = [], [], []
    for e in edges:
        if len(e) == 2:
            u, v = e
            w = 1.0
        else:
            u, v, w = e
        rows.append(int(u))
        cols.append(int(v))
        vals.append(float(w))
    u = np.asarray(rows, dtype=np.int64)
    v = np.asarray(cols, dtype=np.int64)
    w = np.asarray(vals, dtype=float)
    if u.size:
        bad = (u < 0) | (u >= n) | (v < 0) | (v >= n)
        if bad.any():
            i = int(np.flatnonzero(bad)[0])
            raise IndexOutOfRangeError(f"edge ({u[i]}, {v[i]}) outside [0, {n})")
        if (u == v).any():
            i = int(np.flatnonzero(u == v)[0])
            raise SelfLoopError(f"self-loop at vertex {u[i]}")
        if not np.all(w > 0) or not np.all(np.isfinite(w)):
            raise NonPositiveWeightError("edge weights must be positive and finite")
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        key = lo * n + hi
        uniq, counts = np.unique(key, return_counts=True)
        if (counts > 1).any():
            k = int(uniq[np.argmax(counts > 1)])
            raise DuplicateEdgeError(f"duplicate edge ({k // n}, {k % n})")
        u, v = lo, hi
    A = sp.coo_matrix(
        (np.concatenate([w, w]), (np.concatenate([u, v]), np.concatenate([v, u]))),
        shape=(n, n),
    )
    return SparseGraph(A)


def as_vertex_set(members, n=None):
    """Normalize ``members`` to a sorted, duplicate-free int64 index array.

    Accepts index sequences or boolean masks of length ``n``.
    """
    arr = np.asarray(members)
    if arr.dtype == bool:
        arr = np.flatnonzero(arr)
    arr = np.unique(arr.astype(np.int64, copy=False).ravel())
    if n is not None and arr.size and (arr[0] < 0 or arr[-1] >= n):
        raise IndexOutOfRangeError(f"vertex index outside [0, {n})")
    return arr


def indicator(S, n):
    x = np.zeros(n)
    x[as_vertex_set(S, n)] = 1.0
    return x


def _check(g, x):
    x = np.asarray(x, dtype=float)
    if x.shape[0] != g.n:
        raise DimensionMismatchError(f"vector of length {x.shape[0]} for graph with n={g.n}")
    return x


def _rowscale(s, x):
    return s * x if x.ndim == 1 else s[:, None] * x


def apply_L(g, x):
    """``x - D^-1 (A x)``."""
    x = _check(g, x)
    return x - _rowscale(g.inv_degrees, g.adjacency @ x)


def apply_L_transpose(g, x):
    """``x - A (D^-1 x)``."""
    x = _check(g, x)
    return x - g.adjacency @ _rowscale(g.inv_degrees, x)


def apply_P(g, x):
    """One random-walk step ``A D^-1 x``."""
    x = _check(g, x)
    return g.adjacency @ _rowscale(g.inv_degrees, x)


def apply_N(g, x):
    x = _check(g, x)
    s = g._inv_sqrt_deg
    return _rowscale(s, g.adjacency @ _rowscale(s, x))


def induced_subgraph(g, S):
    """Subgraph on ``S`` with degrees recomputed inside it.

    Returns ``(subgraph, index_map)`` where ``index_map[i]`` is the original
    index of subgraph vertex ``i``.
    """
    S = as_vertex_set(S, g.n)
    sub = g.adjacency[S][:, S]
    return SparseGraph(sub), S


def cut_and_volume(g, S):
    """Return ``(cut(S, S^c), vol(S), vol(S^c))``."""
    S = as_vertex_set(S, g.n)
    mask = np.zeros(g.n, dtype=bool)
    mask[S] = True
    vol_s = float(g.degrees[mask].sum())
    vol_c = float(g.degrees[~mask].sum())
    # weight from S to S^c is vol(S) minus the internal weight counted twice
    internal = float(g.adjacency[S][:, S].sum())
    return vol_s - internal, vol_s, vol_c


def conductance(g, S):
    S = as_vertex_set(S, g.n)
    if S.size == 0:
        raise EmptyCutError("conductance of the empty set is undefined")
    if S.size == g.n:
        raise FullCutError("conductance of the full vertex set is undefined")
    cut, vol_s, vol_c = cut_and_volume(g, S)
    denom = min(vol_s, vol_c)
    if denom == 0:
        return 0.0 if cut == 0 else float("inf")
    return cut / denom


UNASSIGNED = -1


class Partition:
    """Vertex labelling with values in ``0..k-1`` or ``UNASSIGNED`` (-1)."""

    def __init__(self, labels, k=None):
        labels = np.asarray(labels, dtype=np.int64).copy()
        if labels.size and labels.min() < UNASSIGNED:
            raise DataError("labels must be >= -1")
        self.labels = labels
        self.k = int(k) if k is not None else int(labels.max(initial=-1)) + 1

    @classmethod
    def from_clusters(cls, clusters, n):
        labels = np.full(n, UNASSIGNED, dtype=np.int64)
        for a, C in enumerate(clusters):
            C = as_vertex_set(C, n)
            if (labels[C] != UNASSIGNED).any():
                raise DataError("clusters overlap")
            labels[C] = a
        return cls(labels, len(clusters))

    @property
    def n(self):
        return self.labels.size

    def cluster(self, a):
        return np.flatnonzero(self.labels == a)

    def clusters(self):
        return [self.cluster(a) for a in range(self.k)]

    def unassigned(self):
        return np.flatnonzero(self.labels == UNASSIGNED)

    def __eq__(self, other):
        return isinstance(other, Partition) and np.array_equal(self.labels, other.labels)

    def __repr__(self):
        return f"Partition(n={self.n}, k={self.k}, unassigned={self.unassigned().size})"
