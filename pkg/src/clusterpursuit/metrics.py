"""Cluster-recovery scores."""

from collections import namedtuple

import numpy as np

from .errors import DimensionMismatchError
from .graph import UNASSIGNED, as_vertex_set

__all__ = ["Scores", "metrics", "jaccard", "accuracy"]

Scores = namedtuple("Scores", ["jaccard", "precision", "recall", "empty_found"])


def metrics(found, truth):
    """Jaccard index, precision ``|F & T| / |F|`` and recall ``|F & T| / |T|``.

    An empty ``found`` set has undefined precision; it is reported as 0 and
    flagged through ``empty_found``.  An empty ``truth`` gives recall 0.
    """
    F = as_vertex_set(found)
    T = as_vertex_set(truth)
    inter = np.intersect1d(F, T, assume_unique=True).size
    union = F.size + T.size - inter
    jac = inter / union if union else 1.0
    precision = inter / F.size if F.size else 0.0
    recall = inter / T.size if T.size else 0.0
    return Scores(jac, precision, recall, F.size == 0)


def jaccard(found, truth):
    return metrics(found, truth).jaccard


def accuracy(partition, truth):
    """Fraction of vertices whose predicted label equals the true one.

    Labels are compared directly, since seeded classes share their numbering
    with the ground truth.  Unassigned predictions count as wrong.
    """
    pred = getattr(partition, "labels", partition)
    ref = getattr(truth, "labels", truth)
    pred, ref = np.asarray(pred), np.asarray(ref)
    if pred.shape != ref.shape:
        raise DimensionMismatchError("partitions cover different vertex counts")
    if pred.size == 0:
        return 1.0
    return float(np.mean((pred == ref) & (pred != UNASSIGNED)))
