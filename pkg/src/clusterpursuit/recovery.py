"""Greedy sparse recovery: thresholding operators, CG least squares and
SubspacePursuit over a small linear-operator interface.

Any object with ``shape``, ``matvec``, ``rmatvec``, ``matvec_cols`` and
``rmatvec_cols`` can be used as a sensing operator.  An optional
``restrict(cols)`` returning the column block as an explicit matrix (or
``None``) lets the least-squares solver work on that block directly.  Two implementations are
provided: :class:`MatrixOperator` wraps a dense or scipy sparse matrix and
:class:`LaplacianOperator` applies the random-walk Laplacian of a graph
without forming it.
"""

import math

import numpy as np
import scipy.sparse as sp

from . import graph as _graph
from .errors import BadSparsityError, DimensionMismatchError, EmptySupportError

__all__ = [
    "MatrixOperator",
    "LaplacianOperator",
    "top_s_magnitude",
    "top_s_values",
    "hard_threshold",
    "restricted_least_squares",
    "subspace_pursuit",
    "SpResult",
]


class MatrixOperator:
    """Sensing operator backed by an explicit matrix (dense or sparse)."""

    def __init__(self, matrix):
        self.matrix = matrix if hasattr(matrix, "tocsc") else np.asarray(matrix, dtype=float)
        self.shape = self.matrix.shape

    def matvec(self, x):
        return np.asarray(self.matrix @ x).ravel()

    def rmatvec(self, y):
        return np.asarray(self.matrix.T @ y).ravel()

    def matvec_cols(self, cols, z):
        return np.asarray(self.matrix[:, cols] @ z).ravel()

    def rmatvec_cols(self, cols, y):
        return np.asarray(self.matrix[:, cols].T @ y).ravel()

    def restrict(self, cols):
        return self.matrix[:, cols]


class LaplacianOperator:
    """``L = I - D^-1 A`` of a :class:`~clusterpursuit.graph.SparseGraph`.

    Column-restricted products scatter into a full-length vector and gather
    back, so each costs one sparse matvec.
    """

    def __init__(self, g):
        self.graph = g
        self.shape = (g.n, g.n)

    def matvec(self, x):
        return _graph.apply_L(self.graph, x)

    def rmatvec(self, y):
        return _graph.apply_L_transpose(self.graph, y)

    def matvec_cols(self, cols, z):
        x = np.zeros(self.graph.n)
        x[cols] = z
        return _graph.apply_L(self.graph, x)

    def rmatvec_cols(self, cols, y):
        return _graph.apply_L_transpose(self.graph, y)[cols]

    # below this size scipy's per-call overhead outweighs the saved matvecs
    RESTRICT_MIN_N = 1000

    def restrict(self, cols):
        """Sparse ``L[:, cols]``, built in time proportional to the degrees
        of ``cols``, or ``None`` on small graphs where full products are
        cheaper."""
        g = self.graph
        if g.n < self.RESTRICT_MIN_N:
            return None
        cols = np.asarray(cols, dtype=np.int64)
        k = cols.size
        # A is symmetric, so its columns are the transposed rows
        block = (g.adjacency[cols].T).tocsr()
        block = sp.diags(g.inv_degrees) @ block
        eye = sp.csr_matrix((np.ones(k), (cols, np.arange(k))), shape=(g.n, k))
        return (eye - block).tocsr()


def _check_sparsity(s, n):
    if not (1 <= s <= n):
        raise BadSparsityError(f"sparsity s={s} must lie in [1, {n}]")


def top_s_magnitude(v, s):
    """Indices of the ``s`` largest-magnitude entries of ``v``, sorted.

    Ties go to the lower index.
    """
    v = np.asarray(v, dtype=float)
    s = int(s)
    _check_sparsity(s, v.size)
    order = np.argsort(-np.abs(v), kind="stable")
    return np.sort(order[:s])


def top_s_values(v, s):
    """Indices of the ``s`` largest (signed) entries of ``v``; lower index wins ties."""
    v = np.asarray(v, dtype=float)
    s = int(s)
    _check_sparsity(s, v.size)
    order = np.argsort(-v, kind="stable")
    return np.sort(order[:s])


def hard_threshold(v, s):
    v = np.asarray(v, dtype=float)
    out = np.zeros_like(v)
    idx = top_s_magnitude(v, s)
    out[idx] = v[idx]
    return out


def restricted_least_squares(op, y, support, cg_iters=10, tol=1e-12):
    """Approximate ``argmin ||op z - y||`` over ``z`` supported on ``support``.

    Runs conjugate gradient on the normal equations ``Op_S^T Op_S z = Op_S^T y``
    from ``z = 0`` for ``cg_iters`` iterations, stopping early once the
    normal-equation residual norm drops to ``tol``.  Returns a full-length
    vector.
    """
    n_rows, n_cols = op.shape
    y = np.asarray(y, dtype=float)
    if y.shape[0] != n_rows:
        raise DimensionMismatchError(f"y has length {y.shape[0]}, operator has {n_rows} rows")
    support = np.asarray(support, dtype=np.int64)
    if support.size == 0:
        raise EmptySupportError("restricted least squares needs a nonempty support")
    if cg_iters < 1:
        raise ValueError("cg_iters must be at least 1")

    M = op.restrict(support) if hasattr(op, "restrict") else None
    if M is not None:
        MT = M.T

        def normal(v):
            return MT @ (M @ v)

        r = np.asarray(MT @ y).ravel()
    else:

        def normal(v):
            return op.rmatvec_cols(support, op.matvec_cols(support, v))

        r = op.rmatvec_cols(support, y)

    z = np.zeros(support.size)
    p = r.copy()
    rr = r @ r
    for _ in range(cg_iters):
        if math.sqrt(rr) <= tol:
            break
        Ap = normal(p)
        pAp = p @ Ap
        if pAp <= 0:
            break
        alpha = rr / pAp
        z += alpha * p
        r -= alpha * Ap
        rr_new = r @ r
        p = r + (rr_new / rr) * p
        rr = rr_new

    x = np.zeros(n_cols)
    x[support] = z
    return x


class SpResult:
    """Outcome of :func:`subspace_pursuit`.

    ``x`` is the returned iterate, ``support`` its index set, ``residual_norms``
    the residual norm of every iterate computed (index 0 is the
    initialization) and ``iterations`` the number of loop passes executed.
    """

    def __init__(self, x, support, residual_norms, iterations, stagnated):
        self.x = x
        self.support = support
        self.residual_norms = residual_norms
        self.iterations = iterations
        self.stagnated = stagnated

    def __repr__(self):
        return (
            f"SpResult(iterations={self.iterations}, stagnated={self.stagnated}, "
            f"residual={self.residual_norms[-1]:.3g})"
        )


def subspace_pursuit(op, y, s, max_iters, cg_iters=10, full_output=False):
    """SubspacePursuit for ``argmin ||op x - y||`` subject to ``||x||_0 <= s``.

    Each pass merges the current support with the ``s`` strongest correlations
    of the residual, solves least squares on the merged set, and prunes back to
    ``s`` entries.  The loop runs at most ``max_iters`` passes and stops as soon
    as the residual fails to decrease, returning the previous iterate.
    """
    n_rows, n_cols = op.shape
    y = np.asarray(y, dtype=float)
    if y.shape[0] != n_rows:
        raise DimensionMismatchError(f"y has length {y.shape[0]}, operator has {n_rows} rows")
    s = int(s)
    _check_sparsity(s, n_cols)
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")

    support = top_s_magnitude(op.rmatvec(y), s)
    x = restricted_least_squares(op, y, support, cg_iters)
    r = y - op.matvec(x)
    norms = [float(np.linalg.norm(r))]
    stagnated = False
    it = 0
    for it in range(1, int(max_iters) + 1):
        merged = np.union1d(support, top_s_magnitude(op.rmatvec(r), s))
        u = restricted_least_squares(op, y, merged, cg_iters)
        new_support = top_s_magnitude(u, s)
        x_new = np.zeros(n_cols)
        x_new[new_support] = u[new_support]
        r_new = y - op.matvec(x_new)
        norm_new = float(np.linalg.norm(r_new))
        norms.append(norm_new)
        if norm_new >= norms[-2]:
            stagnated = True
            break
        support, x, r = new_support, x_new, r_new

    if full_output:
        return SpResult(x, support, norms, it, stagnated)
    return x
