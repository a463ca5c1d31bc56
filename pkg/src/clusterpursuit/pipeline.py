"""Local clustering (CP+RWT) and semi-supervised partitioning (ICP+RWT)."""

import math
import warnings
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import scipy.sparse as sp

from .diffusion import DiffusionConfig, oversampled_size, rw_thresh
from .errors import BadParametersError, EmptySeedError, SeedOutsideResidualGraphError
from .graph import UNASSIGNED, Partition, as_vertex_set, induced_subgraph
from .pursuit import PursuitConfig, cluster_pursuit

__all__ = ["cp_rwt", "icp_rwt", "SemiSupervisedInput", "majority_vote_fill", "default_sparsity"]


def default_sparsity(n_hat, fraction):
    return max(1, math.ceil(round(fraction * n_hat, 9)))


def cp_rwt(g, gamma, dcfg, pcfg, return_omega=False):
    """Grow the seeds ``gamma`` into a cut with :func:`rw_thresh`, then refine it
    with :func:`cluster_pursuit`."""
    gamma = as_vertex_set(gamma, g.n)
    if gamma.size == 0:
        raise EmptySeedError("seed set is empty")
    omega = rw_thresh(g, gamma, dcfg)
    found = cluster_pursuit(g, omega, pcfg)
    if return_omega:
        return found, omega
    return found


@dataclass
class SemiSupervisedInput:
    """Labelled seeds ``seeds[a]`` and size estimates for each of the ``k`` classes.

    The sparsity of round ``a`` is ``sparsities[a]`` when given, otherwise
    ``ceil(s_fraction * size_estimates[a])``.
    """

    seeds: Sequence
    size_estimates: Sequence[int]
    epsilon: float = 0.13
    t: int = 3
    R: float = 0.5
    s_fraction: float = 0.26
    sparsities: Optional[Sequence[int]] = None
    max_sp_iters: Optional[int] = None

    def __post_init__(self):
        self.seeds = [np.unique(np.asarray(s, dtype=np.int64)) for s in self.seeds]
        self.size_estimates = [int(v) for v in self.size_estimates]
        k = len(self.seeds)
        if k < 1:
            raise BadParametersError("need at least one class")
        if len(self.size_estimates) != k:
            raise BadParametersError("one size estimate per seed set is required")
        if self.sparsities is not None and len(self.sparsities) != k:
            raise BadParametersError("one sparsity per seed set is required")
        allseeds = np.concatenate(self.seeds)
        if np.unique(allseeds).size != allseeds.size:
            raise BadParametersError("seed sets must be pairwise disjoint")

    @property
    def k(self):
        return len(self.seeds)


def majority_vote_fill(g, labels, k):
    """Label every unassigned vertex with the class carrying the most edge weight
    into it, lower class index on ties.

    Votes only count already-labelled neighbours.  Vertices with no labelled
    neighbour are retried after the others are filled; any still isolated from
    every class at the end get class 0.
    """
    labels = np.asarray(labels, dtype=np.int64).copy()
    A = g.adjacency
    while True:
        pending = np.flatnonzero(labels == UNASSIGNED)
        if pending.size == 0:
            return labels
        known = np.flatnonzero(labels != UNASSIGNED)
        onehot = sp.csr_matrix(
            (np.ones(known.size), (known, labels[known])), shape=(g.n, k)
        )
        votes = (A[pending] @ onehot).toarray()
        has_vote = votes.max(axis=1) > 0
        if not has_vote.any():
            labels[pending] = 0
            return labels
        labels[pending[has_vote]] = np.argmax(votes[has_vote], axis=1)


def icp_rwt(g, data, strict=False):
    """Extract one cluster per seed set, smallest size estimate first, removing
    each from the graph before the next round; leftovers are filled by
    :func:`majority_vote_fill`.

    A seed vertex absorbed by an earlier cluster is dropped with a warning (or
    raises when ``strict``).  A round whose seeds were all absorbed raises
    :class:`SeedOutsideResidualGraphError`.  When the oversampled size estimate
    covers the whole residual graph, the round takes every remaining vertex.
    """
    n = g.n
    for s in data.seeds:
        as_vertex_set(s, n)
    labels = np.full(n, UNASSIGNED, dtype=np.int64)
    order = sorted(range(data.k), key=lambda a: (data.size_estimates[a], a))
    alive = np.arange(n)
    sub, index_map = g, alive

    for a in order:
        if alive.size == 0:
            break
        gamma = data.seeds[a]
        lost = gamma[labels[gamma] != UNASSIGNED]
        if lost.size:
            msg = f"{lost.size} seed(s) of class {a} already absorbed by earlier clusters"
            if strict or lost.size == gamma.size:
                raise SeedOutsideResidualGraphError(msg)
            warnings.warn(msg, RuntimeWarning, stacklevel=2)
            gamma = gamma[labels[gamma] == UNASSIGNED]
        local_gamma = np.searchsorted(index_map, gamma)

        n_hat = data.size_estimates[a]
        if oversampled_size(data.epsilon, n_hat) >= sub.n:
            found = index_map
        else:
            if data.sparsities is not None:
                s = int(data.sparsities[a])
            else:
                s = default_sparsity(n_hat, data.s_fraction)
            s = min(s, sub.n - 1)
            dcfg = DiffusionConfig(n_hat, data.epsilon, data.t)
            pcfg = PursuitConfig(s, data.R, data.max_sp_iters)
            found = index_map[cp_rwt(sub, local_gamma, dcfg, pcfg)]

        labels[found] = a
        alive = np.flatnonzero(labels == UNASSIGNED)
        if alive.size:
            sub, index_map = induced_subgraph(g, alive)

    return Partition(majority_vote_fill(g, labels, data.k), data.k)
