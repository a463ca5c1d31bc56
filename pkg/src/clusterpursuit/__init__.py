"""Sparse-recovery cluster extraction on graphs.

ClusterPursuit refines a rough cut by recovering the sparse vector of
misclassified vertices from the random-walk Laplacian image of the cut's
indicator.  Combined with a short random-walk diffusion it gives local
clustering from a few seeds (:func:`cp_rwt`) and, applied repeatedly,
semi-supervised partitioning (:func:`icp_rwt`).
"""

from .diagnostics import (
    AssumptionReport,
    SpectralSummary,
    assumption_report,
    ric_bound,
    ric_bruteforce,
    sp_constants,
    spectral_extremes,
)
from .diffusion import DiffusionConfig, random_walk, rw_thresh
from .errors import AlgorithmError, ClusterPursuitError, DataError
from .generate import SbmParams, gen_er, gen_sbm, family_params
from .graph import (
    UNASSIGNED,
    Partition,
    SparseGraph,
    apply_L,
    apply_L_transpose,
    apply_N,
    apply_P,
    build_graph,
    conductance,
    induced_subgraph,
)
from .knn import PointSet, build_knn_graph
from .metrics import accuracy, jaccard, metrics
from .pipeline import SemiSupervisedInput, cp_rwt, icp_rwt
from .pursuit import PursuitConfig, cluster_pursuit, cluster_pursuit_sweep
from .recovery import LaplacianOperator, MatrixOperator, SpResult, subspace_pursuit

__version__ = "0.1.0"
