"""Binary CART trees: greedy impurity-minimizing splits on (feature, threshold).

Thresholds sit at midpoints between consecutive distinct sorted values; the
first best split wins ties (lowest feature index, then lowest threshold);
rows with ``x <= threshold`` go left.  Splitting stops at ``max_depth``, on a
pure node, on fewer than 2 samples, or when no candidate strictly reduces
impurity.
"""

from __future__ import annotations

import numpy as np

from ..data import Dataset
from ..errors import DataError
from . import splits
from .base import Model


class _TreeArrays:
    """Flat node storage: feature[i] == -1 marks a leaf."""

    __slots__ = ("feature", "threshold", "left", "right", "value", "n_samples")

    def __init__(self):
        self.feature: list[int] = []
        self.threshold: list[float] = []
        self.left: list[int] = []
        self.right: list[int] = []
        self.value: list[float] = []
        self.n_samples: list[int] = []

    def add_node(self, value: float, n: int) -> int:
        self.feature.append(-1)
        self.threshold.append(0.0)
        self.left.append(-1)
        self.right.append(-1)
        self.value.append(float(value))
        self.n_samples.append(int(n))
        return len(self.feature) - 1

    def finalize(self):
        self.feature = np.asarray(self.feature, dtype=np.intp)
        self.threshold = np.asarray(self.threshold, dtype=np.float64)
        self.left = np.asarray(self.left, dtype=np.intp)
        self.right = np.asarray(self.right, dtype=np.intp)
        self.value = np.asarray(self.value, dtype=np.float64)
        self.n_samples = np.asarray(self.n_samples, dtype=np.int64)


def _grow_tree(X, targets, *, criterion, max_depth, max_features=None,
               rng=None, backend=None, min_samples_split=2):
    """Build a CART tree; returns (_TreeArrays, raw per-feature gain sums).

    ``criterion`` is "gini" (binary int targets, leaf = positive fraction) or
    "sse" (float targets, leaf = mean).  ``max_features``, when smaller than
    d, samples that many features without replacement at every node (requires
    ``rng``).  Children are expanded depth-first, left first, so the rng
    stream (and hence the tree) is reproducible.
    """
    kernel = splits.get_backend(backend)
    n, d = X.shape
    if criterion == "gini":
        find = kernel.best_split_gini
        targets = np.ascontiguousarray(targets, dtype=np.int64)
        leaf_value = lambda t: float(t.sum()) / t.size
        is_pure = lambda t: t[0] == t[-1] and (t == t[0]).all()
    elif criterion == "sse":
        find = kernel.best_split_sse
        targets = np.ascontiguousarray(targets, dtype=np.float64)
        leaf_value = lambda t: float(t.mean())
        is_pure = lambda t: (t == t[0]).all()
    else:
        raise ValueError(f"unknown criterion {criterion!r}")

    subsample = max_features is not None and max_features < d
    if subsample and rng is None:
        raise ValueError("feature subsampling requires an rng")
    tree = _TreeArrays()
    gains = np.zeros(d, dtype=np.float64)
    root = tree.add_node(leaf_value(targets), n)
    # stack entries: (node_id, row indices, depth); right pushed first so the
    # left child is expanded next.
    stack = [(root, np.arange(n, dtype=np.intp), 0)]
    while stack:
        node, idx, depth = stack.pop()
        t = targets[idx]
        if depth >= max_depth or idx.size < min_samples_split or is_pure(t):
            continue
        if subsample:
            feats = np.sort(rng.choice(d, size=max_features, replace=False))
        else:
            feats = np.arange(d, dtype=np.intp)
        xblock = np.ascontiguousarray(X[np.ix_(idx, feats)])
        col, thr, gain = find(xblock, t)
        if col < 0:
            continue
        feat = int(feats[col])
        go_left = X[idx, feat] <= thr
        left_idx = idx[go_left]
        right_idx = idx[~go_left]
        gains[feat] += gain
        left = tree.add_node(leaf_value(targets[left_idx]), left_idx.size)
        right = tree.add_node(leaf_value(targets[right_idx]), right_idx.size)
        tree.feature[node] = feat
        tree.threshold[node] = thr
        tree.left[node] = left
        tree.right[node] = right
        stack.append((right, right_idx, depth + 1))
        stack.append((left, left_idx, depth + 1))
    tree.finalize()
    return tree, gains


def _apply_tree(tree: _TreeArrays, X: np.ndarray) -> np.ndarray:
    """Leaf index for every row (level-synchronous vectorized descent)."""
    node = np.zeros(X.shape[0], dtype=np.intp)
    while True:
        active = np.where(tree.feature[node] >= 0)[0]
        if active.size == 0:
            return node
        cur = node[active]
        feat = tree.feature[cur]
        go_left = X[active, feat] <= tree.threshold[cur]
        node[active] = np.where(go_left, tree.left[cur], tree.right[cur])


def _tree_to_dict(tree: _TreeArrays) -> dict:
    return {
        "feature": [int(v) for v in tree.feature],
        "threshold": [float(v) for v in tree.threshold],
        "left": [int(v) for v in tree.left],
        "right": [int(v) for v in tree.right],
        "value": [float(v) for v in tree.value],
        "n_samples": [int(v) for v in tree.n_samples],
    }


def _tree_from_dict(d: dict) -> _TreeArrays:
    tree = _TreeArrays()
    tree.feature = d["feature"]
    tree.threshold = d["threshold"]
    tree.left = d["left"]
    tree.right = d["right"]
    tree.value = d["value"]
    tree.n_samples = d["n_samples"]
    tree.finalize()
    return tree


class DecisionTree(Model):
    """CART classifier; leaves predict their training positive-class fraction."""

    kind = "decision_tree"

    def __init__(self, max_depth: int = 7, *, split_backend: str | None = None):
        if max_depth < 1:
            raise DataError("max_depth must be >= 1")
        self.max_depth = max_depth
        self.split_backend = split_backend
        self._tree = None
        self._gains = None

    def fit(self, X, y) -> "DecisionTree":
        X = np.asarray(X, dtype=np.float64)
        y = np.asarray(y, dtype=np.int64)
        if X.ndim != 2 or X.shape[0] < 1:
            raise DataError("decision tree needs a non-empty 2-D matrix")
        self.feature_count = X.shape[1]
        self._tree, self._gains = _grow_tree(
            X, y, criterion="gini", max_depth=self.max_depth,
            backend=self.split_backend,
        )
        return self

    def _proba_matrix(self, X):
        return self._tree.value[_apply_tree(self._tree, X)]

    def apply(self, X) -> np.ndarray:
        X, _ = self._check_matrix(X)
        return _apply_tree(self._tree, X)

    def feature_importances(self) -> np.ndarray:
        total = self._gains.sum()
        return self._gains / total if total > 0 else np.zeros_like(self._gains)

    @property
    def n_nodes(self) -> int:
        return len(self._tree.value)

    def params_dict(self) -> dict:
        return {
            "max_depth": self.max_depth,
            "feature_count": self.feature_count,
            "tree": _tree_to_dict(self._tree),
            "gains": [float(g) for g in self._gains],
        }

    @classmethod
    def from_params(cls, d: dict) -> "DecisionTree":
        model = cls(max_depth=d["max_depth"])
        model.feature_count = d["feature_count"]
        model._tree = _tree_from_dict(d["tree"])
        model._gains = np.asarray(d["gains"], dtype=np.float64)
        return model


def train_decision_tree(train: Dataset, max_depth: int = 7, *,
                        split_backend: str | None = None) -> DecisionTree:
    return DecisionTree(max_depth, split_backend=split_backend).fit(
        train.features, train.labels)
