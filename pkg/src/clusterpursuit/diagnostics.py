"""Spectral estimates, restricted isometry constants and cluster-regularity
statistics for a graph with known clusters."""

import itertools
import math
from dataclasses import dataclass, field
from typing import List

import numpy as np

from .errors import BadSparsityError, DisconnectedError, TooLargeError
from .graph import UNASSIGNED, apply_N, induced_subgraph

__all__ = [
    "SpectralSummary",
    "AssumptionReport",
    "spectral_extremes",
    "ric_bound",
    "spectral_norm_L",
    "ric_bruteforce",
    "sp_constants",
    "in_out_degrees",
    "assumption_report",
]


@dataclass
class SpectralSummary:
    lambda2: float
    lambda_max: float
    tol: float
    converged: bool = True


def _power_iteration(apply, x0, project, tol, max_iter):
    """Dominant eigenpair of a symmetric PSD operator.

    Stops when ``||M x - theta x|| <= tol * max(theta, 1)``; for a symmetric
    operator that residual also bounds the eigenvalue error.
    """
    x = project(x0)
    nrm = np.linalg.norm(x)
    if nrm == 0:
        return 0.0, True
    x /= nrm
    theta = 0.0
    for _ in range(max_iter):
        y = project(apply(x))
        theta = float(x @ y)
        res = np.linalg.norm(y - theta * x)
        if res <= tol * max(abs(theta), 1.0):
            return theta, True
        nrm = np.linalg.norm(y)
        if nrm == 0:
            return 0.0, True
        x = y / nrm
    return theta, False


def spectral_extremes(g, tol=1e-9, max_iter=200_000, seed=0):
    """Second-smallest and largest eigenvalues of ``L^sym = I - N``.

    ``lambda_max`` comes from power iteration on ``L^sym``; ``lambda2`` from
    power iteration on ``2I - L^sym`` with ``D^1/2 1`` projected out.
    """
    n = g.n
    if n < 2:
        return SpectralSummary(0.0, 0.0, tol)
    rng = np.random.default_rng(seed)
    x0 = rng.standard_normal(n)

    def lsym(x):
        return x - apply_N(g, x)

    lam_max, ok1 = _power_iteration(lsym, x0.copy(), lambda v: v, tol, max_iter)

    w = np.sqrt(g.degrees)
    w_norm = np.linalg.norm(w)
    if w_norm > 0:
        w = w / w_norm

        def project(v):
            return v - (w @ v) * w

    else:

        def project(v):
            return v

    mu, ok2 = _power_iteration(lambda x: 2.0 * x - lsym(x), x0.copy(), project, tol, max_iter)
    lam2 = max(0.0, 2.0 - mu)
    lam_max = max(lam_max, lam2)
    return SpectralSummary(lam2, lam_max, tol, ok1 and ok2)


def spectral_norm_L(g, tol=1e-10, max_iter=200_000, seed=0):
    """Largest singular value of the (non-symmetric) random-walk Laplacian."""
    from .graph import apply_L, apply_L_transpose

    x0 = np.random.default_rng(seed).standard_normal(g.n)
    mu, _ = _power_iteration(
        lambda x: apply_L_transpose(g, apply_L(g, x)), x0, lambda v: v, tol, max_iter
    )
    return math.sqrt(max(mu, 0.0))


def ric_bound(g, s, summary=None, upper="eigenvalue"):
    """Upper bound on the ``s``-restricted isometry constant of ``L`` for a
    connected graph::

        max(1 - lambda2**2 * (dmin/dmax - (dmax/dmin) * s/n), lambda_max**2 - 1)

    The second term treats ``||L||_2`` as ``lambda_max``, which only holds when
    all degrees are equal; on irregular graphs it can undershoot the true
    constant.  ``upper="spectral_norm"`` replaces it by ``||L||_2**2 - 1``,
    which makes the bound valid for every connected graph.
    """
    n = g.n
    if not (1 <= s < n):
        raise BadSparsityError(f"s={s} must lie in [1, {n})")
    if not g.is_connected():
        raise DisconnectedError("the restricted isometry bound needs a connected graph")
    if summary is None:
        summary = spectral_extremes(g)
    dmin, dmax = float(g.degrees.min()), float(g.degrees.max())
    lower = 1.0 - summary.lambda2**2 * (dmin / dmax - (dmax / dmin) * (s / n))
    if upper == "eigenvalue":
        top = summary.lambda_max**2 - 1.0
    elif upper == "spectral_norm":
        top = spectral_norm_L(g) ** 2 - 1.0
    else:
        raise ValueError(f"upper must be 'eigenvalue' or 'spectral_norm', got {upper!r}")
    return max(lower, top)


def ric_bruteforce(matrix, s):
    """Exact ``delta_s`` by enumerating every column subset of size ``<= s``.

    Limited to at most 16 columns and ``s <= 4``.
    """
    M = np.asarray(matrix, dtype=float)
    m, n = M.shape
    if n > 16 or s > 4:
        raise TooLargeError(f"brute force limited to 16 columns and s <= 4 (got {n}, {s})")
    if not (1 <= s <= n):
        raise BadSparsityError(f"s={s} must lie in [1, {n}]")
    delta = 0.0
    for k in range(1, s + 1):
        supports = np.array(list(itertools.combinations(range(n), k)))
        blocks = M[:, supports].transpose(1, 0, 2)  # (n_supports, m, k)
        sv = np.linalg.svd(blocks, compute_uv=False)
        smax = sv[:, 0]
        smin = sv[:, -1] if k <= m else np.zeros(len(supports))
        delta = max(delta, float(np.max(np.abs(smax**2 - 1))), float(np.max(np.abs(smin**2 - 1))))
    return delta


def sp_constants(delta):
    """Contraction factor ``rho`` and noise gain ``tau`` of SubspacePursuit as a
    function of ``delta = delta_3s``::

        rho = sqrt(2 d^2 (1 + d^2)) / (1 - d^2)
        tau = (sqrt(2) + 2) d / sqrt(1 - d^2) * (1 - d)(1 - rho)
              + (2 sqrt(2) + 1) / ((1 - d)(1 - rho))
    """
    d2 = delta * delta
    rho = math.sqrt(2 * d2 * (1 + d2)) / (1 - d2)
    tau = (math.sqrt(2) + 2) * delta / math.sqrt(1 - d2) * (1 - delta) * (1 - rho) + (
        2 * math.sqrt(2) + 1
    ) / ((1 - delta) * (1 - rho))
    return rho, tau


def in_out_degrees(g, labels):
    """Weighted degree inside the own cluster and towards other clusters.

    Unassigned vertices and edges touching them contribute to neither.
    """
    labels = np.asarray(labels)
    A = g.adjacency.tocoo()
    ok = (labels[A.row] != UNASSIGNED) & (labels[A.col] != UNASSIGNED)
    same = ok & (labels[A.row] == labels[A.col])
    d_in = np.bincount(A.row[same], weights=A.data[same], minlength=g.n)
    d_out = np.bincount(A.row[ok & ~same], weights=A.data[ok & ~same], minlength=g.n)
    return d_in, d_out


@dataclass
class AssumptionReport:
    max_ratio_r: float
    mean_ratio_r: float
    n_without_in_edges: int
    degree_spread: float
    cluster_sizes: List[int] = field(default_factory=list)
    cluster_min_over_max_in: List[float] = field(default_factory=list)
    cluster_lambda2: List[float] = field(default_factory=list)
    cluster_lambda_max: List[float] = field(default_factory=list)

    def as_dict(self):
        out = {
            "max_ratio_r": self.max_ratio_r,
            "mean_ratio_r": self.mean_ratio_r,
            "n_without_in_edges": self.n_without_in_edges,
            "degree_spread": self.degree_spread,
        }
        for a, size in enumerate(self.cluster_sizes):
            out[f"cluster{a}_size"] = size
            out[f"cluster{a}_min_over_max_in"] = self.cluster_min_over_max_in[a]
            out[f"cluster{a}_lambda2"] = self.cluster_lambda2[a]
            out[f"cluster{a}_lambda_max"] = self.cluster_lambda_max[a]
        return out


def assumption_report(g, truth, spectral_tol=1e-6, max_iter=20_000):
    """Empirical regularity statistics of ``g`` against the partition ``truth``.

    ``r_i = d_out_i / d_in_i`` is taken over vertices with ``d_in_i > 0``; the
    rest are counted in ``n_without_in_edges``.  ``degree_spread`` is the
    largest per-cluster ratio ``d_in_max / d_in_min`` over vertices with
    ``d_in > 0``.
    """
    labels = truth.labels
    d_in, d_out = in_out_degrees(g, labels)
    assigned = labels != UNASSIGNED
    has_in = assigned & (d_in > 0)
    r = d_out[has_in] / d_in[has_in]
    max_r = float(r.max()) if r.size else 0.0
    mean_r = float(r.mean()) if r.size else 0.0
    no_in = int(np.count_nonzero(assigned & (d_in == 0) & (d_out > 0)))

    sizes, spreads, lam2s, lammaxs = [], [], [], []
    worst = 1.0
    for a in range(truth.k):
        C = truth.cluster(a)
        sizes.append(int(C.size))
        if C.size == 0:
            spreads.append(0.0)
            lam2s.append(0.0)
            lammaxs.append(0.0)
            continue
        din_c = d_in[C][d_in[C] > 0]
        if din_c.size:
            spreads.append(float(din_c.min() / din_c.max()))
            worst = max(worst, float(din_c.max() / din_c.min()))
        else:
            spreads.append(0.0)
        sub, _ = induced_subgraph(g, C)
        summ = spectral_extremes(sub, tol=spectral_tol, max_iter=max_iter)
        lam2s.append(summ.lambda2)
        lammaxs.append(summ.lambda_max)
    return AssumptionReport(max_r, mean_r, no_in, worst, sizes, spreads, lam2s, lammaxs)
