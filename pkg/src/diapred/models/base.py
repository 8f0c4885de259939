"""Shared classifier contract: probability + label prediction, persistence.

Every trained model is immutable after fit, predicts a positive-class
probability in [0, 1], and turns it into a label with ``proba >= threshold``
(ties go to the positive class).
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field, fields

import numpy as np

from ..data import StandardizerParams
from ..errors import DataError

MODEL_FORMAT = "diapred-model"
SCHEMA_VERSION = 1


@dataclass
class HyperParams:
    """Hyperparameters for all seven classifiers, with the tuned defaults."""

    knn_k: int = 41
    svm_c: float = 1.0
    svm_epochs: int = 20
    tree_max_depth: int = 7
    forest_max_depth: int = 9
    forest_n_trees: int = 250
    gb_max_depth: int = 3
    gb_n_stages: int = 100
    gb_learning_rate: float = 0.1
    mlp_hidden_sizes: list[int] = field(default_factory=lambda: [32])
    mlp_learning_rate: float = 0.01
    mlp_momentum: float = 0.9
    mlp_epochs: int = 200
    mlp_batch_size: int = 32
    nb_var_floor: float = 1e-9
    seed: int = 0

    def __post_init__(self):
        for name in ("knn_k", "svm_epochs", "tree_max_depth", "forest_max_depth",
                     "forest_n_trees", "gb_max_depth", "mlp_epochs", "mlp_batch_size"):
            if getattr(self, name) < 1:
                raise DataError(f"{name} must be >= 1, got {getattr(self, name)}")
        if self.gb_n_stages < 0:
            raise DataError("gb_n_stages must be >= 0")
        for name in ("svm_c", "gb_learning_rate", "mlp_learning_rate", "nb_var_floor"):
            if getattr(self, name) <= 0:
                raise DataError(f"{name} must be > 0, got {getattr(self, name)}")
        if any(h < 1 for h in self.mlp_hidden_sizes):
            raise DataError("mlp_hidden_sizes entries must be >= 1")

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, d: dict) -> "HyperParams":
        known = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in known})

    def replace(self, **kw) -> "HyperParams":
        d = self.to_dict()
        d.update(kw)
        return HyperParams.from_dict(d)


class Model:
    """Base for the seven classifiers (see subclasses for the learning rules)."""

    kind: str = "abstract"
    feature_count: int
    threshold: float = 0.5

    def _check_matrix(self, X) -> tuple[np.ndarray, bool]:
        X = np.asarray(X, dtype=np.float64)
        single = X.ndim == 1
        X = np.atleast_2d(X)
        if X.ndim != 2 or X.shape[1] != self.feature_count:
            raise DataError(
                f"{self.kind}: expected {self.feature_count} features, "
                f"got input of shape {X.shape}"
            )
        return X, single

    def _proba_matrix(self, X: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def predict_proba(self, X):
        """Positive-class probability; scalar for a single feature vector."""
        X, single = self._check_matrix(X)
        p = self._proba_matrix(X)
        return float(p[0]) if single else p

    def predict(self, X):
        """Hard labels; proba >= threshold maps to the positive class."""
        X, single = self._check_matrix(X)
        labels = (self._proba_matrix(X) >= self.threshold).astype(np.int64)
        return int(labels[0]) if single else labels

    def feature_importances(self) -> np.ndarray:
        raise DataError(f"feature importance is not defined for {self.kind}")

    # persistence ---------------------------------------------------------

    def params_dict(self) -> dict:
        raise NotImplementedError

    @classmethod
    def from_params(cls, d: dict) -> "Model":
        raise NotImplementedError

    def to_dict(self) -> dict:
        return {
            "format": MODEL_FORMAT,
            "schema_version": SCHEMA_VERSION,
            "kind": self.kind,
            "feature_count": int(self.feature_count),
            "threshold": float(self.threshold),
            "params": self.params_dict(),
        }


def _registry() -> dict:
    from . import MODEL_CLASSES

    return MODEL_CLASSES


def model_from_dict(d: dict) -> Model:
    if d.get("format") != MODEL_FORMAT:
        raise DataError(f"not a model file (format={d.get('format')!r})")
    if d.get("schema_version") != SCHEMA_VERSION:
        raise DataError(f"unsupported model schema version {d.get('schema_version')!r}")
    try:
        cls = _registry()[d["kind"]]
    except KeyError:
        raise DataError(f"unknown model kind {d.get('kind')!r}") from None
    model = cls.from_params(d["params"])
    model.threshold = float(d.get("threshold", 0.5))
    return model


def save_model(model: Model, path, *, feature_names=None,
               standardizer: StandardizerParams | None = None,
               hyperparams: HyperParams | None = None) -> None:
    """Persist a trained model as self-describing JSON (round-trip exact)."""
    doc = model.to_dict()
    doc["feature_names"] = list(feature_names) if feature_names else None
    doc["standardizer"] = standardizer.to_dict() if standardizer else None
    doc["hyperparams"] = hyperparams.to_dict() if hyperparams else None
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, sort_keys=True)
        fh.write("\n")


def load_model(path) -> tuple[Model, dict]:
    """Load a model plus its metadata (feature_names, standardizer, hyperparams)."""
    with open(path, encoding="utf-8") as fh:
        doc = json.load(fh)
    model = model_from_dict(doc)
    meta = {
        "feature_names": doc.get("feature_names"),
        "standardizer": (StandardizerParams.from_dict(doc["standardizer"])
                         if doc.get("standardizer") else None),
        "hyperparams": (HyperParams.from_dict(doc["hyperparams"])
                        if doc.get("hyperparams") else None),
    }
    return model, meta
