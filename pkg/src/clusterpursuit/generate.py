"""Seeded Erdos-Renyi and stochastic block model generators.

Edges of each block pair are drawn by sampling a binomial edge count and
then that many distinct vertex pairs, so the cost scales with the number of
edges rather than ``n**2``.
"""

import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

from .errors import BadParametersError
from .graph import Partition, SparseGraph

__all__ = ["SbmParams", "gen_er", "gen_sbm", "family_params", "triu_pair"]


@dataclass
class SbmParams:
    sizes: tuple
    probs: np.ndarray
    seed: int = 0

    def __post_init__(self):
        self.sizes = tuple(int(s) for s in self.sizes)
        self.probs = np.atleast_2d(np.asarray(self.probs, dtype=float))
        k = len(self.sizes)
        if k == 0 or any(s <= 0 for s in self.sizes):
            raise BadParametersError("block sizes must be positive")
        if any(a > b for a, b in zip(self.sizes, self.sizes[1:])):
            raise BadParametersError("block sizes must be in ascending order")
        if self.probs.shape != (k, k):
            raise BadParametersError(f"probability matrix must be {k}x{k}")
        if not np.allclose(self.probs, self.probs.T, rtol=0, atol=0):
            raise BadParametersError("probability matrix must be symmetric")
        if (self.probs < 0).any() or (self.probs > 1).any():
            raise BadParametersError("probabilities must lie in [0, 1]")

    @property
    def n(self):
        return sum(self.sizes)

    @property
    def k(self):
        return len(self.sizes)


def triu_pair(k, m):
    """Map linear indices ``k`` in ``[0, m(m-1)/2)`` to strictly-upper pairs ``(i, j)``
    of an ``m x m`` matrix, enumerated row by row."""
    k = np.asarray(k, dtype=np.int64)

    def row_start(i):
        return i * (2 * m - i - 1) // 2

    i = (m - 2 - np.floor(np.sqrt(np.maximum(-8.0 * k + 4.0 * m * (m - 1) - 7, 0.0)) / 2.0 - 0.5)).astype(np.int64)
    i = np.clip(i, 0, max(m - 2, 0))
    for _ in range(2):
        i = np.where(row_start(i) > k, i - 1, i)
        i = np.where(row_start(i + 1) <= k, i + 1, i)
    j = k - row_start(i) + i + 1
    return i, j


def _sample_pairs(rng, total, p):
    if p <= 0 or total == 0:
        return np.empty(0, dtype=np.int64)
    if p >= 1:
        return np.arange(total, dtype=np.int64)
    m = rng.binomial(total, p)
    return np.sort(rng.choice(total, size=m, replace=False, shuffle=False))


def gen_sbm(params):
    """Sample ``SBM(sizes, probs)``; returns ``(graph, ground_truth)``.

    Block ``a`` occupies a contiguous index range, in the order of
    ``params.sizes``.
    """
    rng = np.random.default_rng(params.seed)
    offsets = np.concatenate([[0], np.cumsum(params.sizes)])
    rows, cols = [], []
    for a in range(params.k):
        na = params.sizes[a]
        for b in range(a, params.k):
            p = params.probs[a, b]
            if a == b:
                idx = _sample_pairs(rng, na * (na - 1) // 2, p)
                i, j = triu_pair(idx, na)
                i, j = i + offsets[a], j + offsets[a]
            else:
                nb = params.sizes[b]
                idx = _sample_pairs(rng, na * nb, p)
                i = idx // nb + offsets[a]
                j = idx % nb + offsets[b]
            rows.append(i)
            cols.append(j)
    u = np.concatenate(rows) if rows else np.empty(0, dtype=np.int64)
    v = np.concatenate(cols) if cols else np.empty(0, dtype=np.int64)
    n = params.n
    A = sp.coo_matrix(
        (np.ones(2 * u.size), (np.concatenate([u, v]), np.concatenate([v, u]))), shape=(n, n)
    )
    labels = np.repeat(np.arange(params.k), params.sizes)
    return SparseGraph(A), Partition(labels, params.k)


def gen_er(n, p, seed=0):
    if not (0 <= p <= 1):
        raise BadParametersError(f"p={p} must lie in [0, 1]")
    g, _ = gen_sbm(SbmParams((n,), [[p]], seed))
    return g


def family_params(family, n1, seed=0, p_in=None, p_in_scale="block"):
    """Block sizes and probabilities of the two synthetic benchmark families.

    Family 1: sizes ``(n1, 1.5 n1, 2.5 n1, 5 n1)``, between-block probability
    ``5 log(n) / n`` and within-block probability ``log(n)**2 / n_a`` for block
    ``a``.  Passing ``p_in_scale="total"`` divides by the total ``n`` instead,
    which leaves the smallest block with more outside than inside neighbours;
    ``p_in`` sets a fixed within-block probability.

    Family 2: sizes ``(n1, 10 n1)`` with the planted-cluster matrix
    ``[[2 log(n)**2 / n, log(n) / n], [log(n) / n, log(n) / n]]``.

    Every entry is clipped to ``[0, 1]``.
    """
    n1 = int(n1)
    if n1 < 1:
        raise BadParametersError("n1 must be positive")
    if family == 1:
        sizes = tuple(int(round(f * n1)) for f in (1, 1.5, 2.5, 5))
        n = sum(sizes)
        ln = math.log(n)
        if p_in is not None:
            diag = np.full(4, float(p_in))
        elif p_in_scale == "block":
            diag = ln**2 / np.asarray(sizes, dtype=float)
        elif p_in_scale == "total":
            diag = np.full(4, ln**2 / n)
        else:
            raise BadParametersError(f"p_in_scale must be 'block' or 'total', got {p_in_scale!r}")
        P = np.full((4, 4), 5 * ln / n)
        np.fill_diagonal(P, diag)
    elif family == 2:
        sizes = (n1, 10 * n1)
        n = sum(sizes)
        ln = math.log(n)
        P = np.array([[2 * ln**2 / n, ln / n], [ln / n, ln / n]])
    else:
        raise BadParametersError(f"unknown family {family!r}; expected 1 or 2")
    return SbmParams(sizes, np.clip(P, 0.0, 1.0), seed)
