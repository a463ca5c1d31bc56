"""Seeded random-walk thresholding (RWThresh)."""

import math
from dataclasses import dataclass

import numpy as np

from .errors import BadParametersError, EmptySeedError, ThresholdTooLargeError
from .graph import apply_P, as_vertex_set
from .recovery import top_s_values

__all__ = ["DiffusionConfig", "oversampled_size", "random_walk", "rw_thresh"]


@dataclass(frozen=True)
class DiffusionConfig:
    """``epsilon`` oversampling fraction, ``t`` walk length, ``n_hat`` size estimate."""

    n_hat: int
    epsilon: float = 0.13
    t: int = 3

    def __post_init__(self):
        if not (0 < self.epsilon < 1):
            raise BadParametersError(f"epsilon={self.epsilon} must lie in (0, 1)")
        if self.t < 1:
            raise BadParametersError(f"t={self.t} must be at least 1")
        if self.n_hat < 1:
            raise BadParametersError(f"n_hat={self.n_hat} must be at least 1")


def oversampled_size(epsilon, n_hat):
    """``ceil((1 + epsilon) * n_hat)``, immune to float noise such as 1.1*10."""
    return math.ceil(round((1.0 + epsilon) * n_hat, 9))


def random_walk(g, gamma, t):
    """``P^t D 1_gamma``: ``t`` walk steps started from degree-weighted seeds."""
    v = np.zeros(g.n)
    v[gamma] = g.degrees[gamma]
    for _ in range(t):
        v = apply_P(g, v)
    return v


def rw_thresh(g, gamma, cfg):
    """Return the seeds together with the ``ceil((1+eps) n_hat)`` vertices
    carrying the most walk mass after ``cfg.t`` steps."""
    gamma = as_vertex_set(gamma, g.n)
    if gamma.size == 0:
        raise EmptySeedError("seed set is empty")
    size = oversampled_size(cfg.epsilon, cfg.n_hat)
    if size > g.n:
        raise ThresholdTooLargeError(
            f"threshold size {size} exceeds the {g.n} vertices in the graph"
        )
    v = random_walk(g, gamma, cfg.t)
    return np.union1d(top_s_values(v, size), gamma)
