"""Confusion matrix and the six evaluation metrics, plus binary log loss.

Degenerate 0/0 ratios yield ``None`` (rendered as "n/a" in reports) rather
than raising: degenerate predictors are a legitimate evaluation outcome.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DataError

# Canonical report column order.
METRIC_COLUMNS = (
    "Accuracy",
    "Precision",
    "Negative Prediction",
    "Sensitivity",
    "Specificity",
    "F1-Score",
)

_FIELD_OF_COLUMN = {
    "Accuracy": "accuracy",
    "Precision": "precision",
    "Negative Prediction": "negative_predictive_value",
    "Sensitivity": "sensitivity",
    "Specificity": "specificity",
    "F1-Score": "f1",
}


@dataclass(frozen=True)
class ConfusionMatrix:
    tp: int
    fp: int
    tn: int
    fn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn


def confusion_matrix(predicted, actual) -> ConfusionMatrix:
    """Count tp/fp/tn/fn for binary label vectors (positive class = 1)."""
    pred = np.asarray(predicted)
    act = np.asarray(actual)
    if pred.shape != act.shape or pred.ndim != 1:
        raise DataError(f"prediction/actual shape mismatch: {pred.shape} vs {act.shape}")
    if pred.size < 1:
        raise DataError("need at least one sample")
    for name, v in (("predicted", pred), ("actual", act)):
        if not np.isin(v, (0, 1)).all():
            raise DataError(f"{name} vector contains non-binary values")
    pred = pred.astype(bool)
    act = act.astype(bool)
    return ConfusionMatrix(
        tp=int(np.sum(pred & act)),
        fp=int(np.sum(pred & ~act)),
        tn=int(np.sum(~pred & ~act)),
        fn=int(np.sum(~pred & act)),
    )


@dataclass
class MetricReport:
    """Six ratios in [0, 1]; ``None`` marks an undefined (0/0) value."""

    accuracy: float | None
    precision: float | None
    negative_predictive_value: float | None
    sensitivity: float | None
    specificity: float | None
    f1: float | None

    def value(self, column: str) -> float | None:
        try:
            return getattr(self, _FIELD_OF_COLUMN[column])
        except KeyError:
            raise DataError(f"unknown metric {column!r}") from None

    def as_row(self) -> list[str]:
        """Values in METRIC_COLUMNS order, 4 decimal places, 'n/a' when undefined."""
        return [
            "n/a" if self.value(c) is None else f"{self.value(c):.4f}"
            for c in METRIC_COLUMNS
        ]

    def to_dict(self) -> dict:
        return {c: self.value(c) for c in METRIC_COLUMNS}


def _ratio(num: int, den: int) -> float | None:
    return None if den == 0 else num / den


def metric_suite(cm: ConfusionMatrix) -> MetricReport:
    """Derive all six metrics from one confusion matrix."""
    if cm.total < 1:
        raise DataError("empty confusion matrix")
    precision = _ratio(cm.tp, cm.tp + cm.fp)
    sensitivity = _ratio(cm.tp, cm.tp + cm.fn)
    if precision is None or sensitivity is None or precision + sensitivity == 0.0:
        f1 = None
    else:
        f1 = 2.0 * precision * sensitivity / (precision + sensitivity)
    return MetricReport(
        accuracy=_ratio(cm.tp + cm.tn, cm.total),
        precision=precision,
        negative_predictive_value=_ratio(cm.tn, cm.tn + cm.fn),
        sensitivity=sensitivity,
        specificity=_ratio(cm.tn, cm.tn + cm.fp),
        f1=f1,
    )


def f1_from_precision_sensitivity(precision: float, sensitivity: float) -> float | None:
    """Harmonic mean of precision and sensitivity (None when both are 0)."""
    if precision + sensitivity == 0.0:
        return None
    return 2.0 * precision * sensitivity / (precision + sensitivity)


def log_loss(probabilities, actual, clip_epsilon: float = 1e-15) -> float:
    """Mean binary cross-entropy; probabilities clipped to [eps, 1-eps]."""
    p = np.asarray(probabilities, dtype=np.float64)
    y = np.asarray(actual, dtype=np.float64)
    if p.shape != y.shape or p.ndim != 1:
        raise DataError(f"probability/actual shape mismatch: {p.shape} vs {y.shape}")
    if p.size < 1:
        raise DataError("need at least one sample")
    p = np.clip(p, clip_epsilon, 1.0 - clip_epsilon)
    return float(-np.mean(y * np.log(p) + (1.0 - y) * np.log1p(-p)))


def evaluate_predictions(predicted, actual) -> MetricReport:
    return metric_suite(confusion_matrix(predicted, actual))
