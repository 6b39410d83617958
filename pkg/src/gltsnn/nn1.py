"""Exact 1-nearest-neighbor regression over stored training points."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .validation import as_float_matrix, as_float_vector, check_paired, check_width


@dataclass
class NN1Model:
    """Verbatim training data; immutable after fit."""

    points: np.ndarray
    targets: np.ndarray

    @property
    def n_features(self) -> int:
        return int(self.points.shape[1])


def fit_nn1(points, targets) -> NN1Model:
    """Store the training set for brute-force lookup."""
    points = as_float_matrix(points, "points")
    targets = as_float_vector(targets, "targets")
    check_paired(points, targets, "points", "targets")
    points = np.array(points, order="C")
    targets = np.array(targets)
    points.setflags(write=False)
    targets.setflags(write=False)
    return NN1Model(points, targets)


def predict_nn1(model: NN1Model, queries) -> np.ndarray:
    """Return the stored target of each query's nearest training point.

    Squared Euclidean distance, exhaustive search; ties go to the lowest
    training row index.
    """
    queries = as_float_matrix(queries, "queries", allow_empty_rows=True)
    check_width(queries, model.n_features, "queries")
    return _kernels.nn1_predict(model.points, model.targets, queries)
