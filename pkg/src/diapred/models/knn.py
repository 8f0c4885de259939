"""k-nearest-neighbors classifier (exact, Euclidean distance, equal votes)."""

from __future__ import annotations

import numpy as np

from ..data import Dataset
from ..errors import DataError
from .base import Model


class KNearestNeighbors(Model):
    """Stores the training set; proba = positive fraction among the k nearest.

    Distance ties are broken by the lowest training-row index, so
    predictions are exactly reproducible and match a brute-force sort.
    """

    kind = "knn"

    def __init__(self, k: int = 41):
        if k < 1:
            raise DataError("k must be >= 1")
        self.k = k

    def fit(self, X, y) -> "KNearestNeighbors":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        if X.ndim != 2 or X.shape[0] < 1:
            raise DataError("kNN needs a non-empty 2-D training matrix")
        if self.k > X.shape[0]:
            raise DataError(f"k={self.k} exceeds {X.shape[0]} training rows")
        self.feature_count = X.shape[1]
        self._X = X
        self._y = y
        return self

    def _proba_matrix(self, X):
        # Squared distances preserve the Euclidean ordering.
        d2 = ((X[:, None, :] - self._X[None, :, :]) ** 2).sum(axis=2)
        # Stable argsort keeps the lowest-index neighbor first among ties.
        nearest = np.argsort(d2, axis=1, kind="stable")[:, : self.k]
        return self._y[nearest].mean(axis=1)

    def params_dict(self) -> dict:
        return {
            "k": self.k,
            "feature_count": self.feature_count,
            "train_features": [[float(v) for v in row] for row in self._X],
            "train_labels": [int(v) for v in self._y],
        }

    @classmethod
    def from_params(cls, d: dict) -> "KNearestNeighbors":
        model = cls(k=d["k"])
        model._X = np.asarray(d["train_features"], dtype=np.float64)
        model._y = np.asarray(d["train_labels"], dtype=np.int64)
        model.feature_count = d["feature_count"]
        return model


def train_knn(train: Dataset, k: int = 41) -> KNearestNeighbors:
    return KNearestNeighbors(k).fit(train.features, train.labels)
