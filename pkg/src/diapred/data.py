"""Tabular dataset container, CSV IO, imputation, scaling and splitting.

Missing values are represented internally as NaN; they are produced by
``zeros_to_missing`` and removed by ``impute_mean``.  Serialized CSVs never
contain the missing marker.
"""

from __future__ import annotations

import csv
import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import DataError, DataWarning


@dataclass
class Dataset:
    """Feature matrix + binary labels + column names.

    ``features`` is an (n, d) float64 array, ``labels`` an (n,) int64 array
    of {0, 1}.  A Dataset may temporarily hold NaN cells between
    ``zeros_to_missing`` and ``impute_mean``.
    """

    features: np.ndarray
    labels: np.ndarray
    feature_names: list[str] = field(default_factory=list)

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=np.float64)
        self.labels = np.asarray(self.labels, dtype=np.int64)
        if self.features.ndim != 2:
            raise DataError("features must be a 2-D matrix")
        if self.labels.shape != (self.features.shape[0],):
            raise DataError(
                f"labels length {self.labels.shape} does not match "
                f"{self.features.shape[0]} rows"
            )
        if not self.feature_names:
            self.feature_names = [f"x{i}" for i in range(self.features.shape[1])]
        if len(self.feature_names) != self.features.shape[1]:
            raise DataError("feature_names length does not match column count")
        bad = ~np.isin(self.labels, (0, 1))
        if bad.any():
            raise DataError(f"labels must be 0/1; offending rows {np.where(bad)[0][:5]}")

    @property
    def n_rows(self) -> int:
        return self.features.shape[0]

    @property
    def n_features(self) -> int:
        return self.features.shape[1]

    def column(self, name: str) -> np.ndarray:
        return self.features[:, self._col_index(name)]

    def _col_index(self, name: str) -> int:
        try:
            return self.feature_names.index(name)
        except ValueError:
            raise DataError(f"unknown column {name!r}") from None

    def copy(self) -> "Dataset":
        return Dataset(self.features.copy(), self.labels.copy(), list(self.feature_names))

    def subset(self, indices) -> "Dataset":
        idx = np.asarray(indices, dtype=np.intp)
        return Dataset(self.features[idx], self.labels[idx], list(self.feature_names))


@dataclass
class CsvSchema:
    """Column mapping for a single-table CSV: label column + feature columns.

    ``feature_columns=None`` means "every column except the label", in file
    order.  Loaded datasets always come out in schema order, so two files
    with shuffled columns load identically.
    """

    label_column: str
    feature_columns: list[str] | None = None


def load_csv_dataset(path, schema: CsvSchema) -> Dataset:
    """Read a header-ed CSV into a Dataset; any non-numeric cell is an error."""
    try:
        fh = open(path, newline="", encoding="utf-8")
    except FileNotFoundError:
        raise DataError(f"input file not found: {path}") from None
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise DataError(f"{path}: no data rows (empty file)") from None
        header = [h.strip() for h in header]
        if schema.label_column not in header:
            raise DataError(f"{path}: missing label column {schema.label_column!r}")
        feat_names = schema.feature_columns
        if feat_names is None:
            feat_names = [h for h in header if h != schema.label_column]
        if not feat_names:
            raise DataError(f"{path}: schema names no feature columns")
        for name in feat_names:
            if name not in header:
                raise DataError(f"{path}: missing column {name!r}")
        col_of = {name: header.index(name) for name in feat_names}
        label_col = header.index(schema.label_column)

        rows, labels = [], []
        for lineno, row in enumerate(reader, start=2):
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise DataError(f"{path}:{lineno}: expected {len(header)} cells, got {len(row)}")
            try:
                rows.append([float(row[col_of[n]]) for n in feat_names])
            except ValueError:
                bad = next(n for n in feat_names if not _is_number(row[col_of[n]]))
                raise DataError(
                    f"{path}:{lineno}: unparseable cell in column {bad!r}: "
                    f"{row[col_of[bad]]!r}"
                ) from None
            cell = row[label_col].strip()
            try:
                lab = int(float(cell))
            except ValueError:
                raise DataError(f"{path}:{lineno}: unparseable label {cell!r}") from None
            labels.append(lab)

    if not rows:
        raise DataError(f"{path}: no data rows")
    return Dataset(np.array(rows, dtype=np.float64), np.array(labels), list(feat_names))


def _is_number(cell: str) -> bool:
    try:
        float(cell)
        return True
    except ValueError:
        return False


def write_csv_dataset(data: Dataset, path, label_column: str = "label") -> None:
    """Write features + label as UTF-8 CSV with a header row (full precision)."""
    if np.isnan(data.features).any():
        raise DataError("refusing to serialize a dataset with missing cells")
    with open(path, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(data.feature_names + [label_column])
        for x, y in zip(data.features, data.labels):
            writer.writerow([repr(float(v)) for v in x] + [int(y)])


def zeros_to_missing(data: Dataset, columns) -> Dataset:
    """Replace exact-0 cells in the named columns with the NaN marker.

    Columns that end up entirely missing are reported via DataWarning so the
    caller can decide whether downstream imputation makes sense.
    """
    out = data.copy()
    for name in columns:
        col = out.features[:, out._col_index(name)]
        col[col == 0.0] = np.nan
        if np.isnan(col).all():
            warnings.warn(f"column {name!r} is entirely missing after zero removal", DataWarning)
    return out


def impute_mean(train: Dataset, apply_to: Dataset | None = None) -> Dataset:
    """Fill NaN cells with per-column means computed on the training data only."""
    means = fit_impute_means(train)
    return apply_impute_means(means, train if apply_to is None else apply_to)


def fit_impute_means(train: Dataset) -> np.ndarray:
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)  # all-NaN slice handled below
        means = np.nanmean(train.features, axis=0)
    if np.isnan(means).any():
        bad = [train.feature_names[i] for i in np.where(np.isnan(means))[0]]
        raise DataError(f"cannot impute: column(s) entirely missing in training data: {bad}")
    return means


def apply_impute_means(means: np.ndarray, data: Dataset) -> Dataset:
    out = data.copy()
    gaps = np.isnan(out.features)
    if gaps.any():
        out.features[gaps] = np.broadcast_to(means, out.features.shape)[gaps]
    return out


@dataclass
class StandardizerParams:
    """Per-feature mean/stddev fitted on training data (population convention).

    Zero-spread features keep stddev 1 and are flagged; ``apply_standardizer``
    maps them to exactly 0 instead of dividing by zero.
    """

    mean: np.ndarray
    std: np.ndarray
    zero_variance: np.ndarray  # bool mask

    def to_dict(self) -> dict:
        return {
            "mean": [float(v) for v in self.mean],
            "std": [float(v) for v in self.std],
            "zero_variance": [bool(v) for v in self.zero_variance],
        }

    @classmethod
    def from_dict(cls, d: dict) -> "StandardizerParams":
        return cls(
            np.array(d["mean"], dtype=np.float64),
            np.array(d["std"], dtype=np.float64),
            np.array(d["zero_variance"], dtype=bool),
        )


def fit_standardizer(train: Dataset) -> StandardizerParams:
    if train.n_rows < 2:
        raise DataError("standardizer needs at least 2 training rows")
    mean = train.features.mean(axis=0)
    std = train.features.std(axis=0)  # ddof=0: population convention
    zero = std == 0.0
    if zero.any():
        names = [train.feature_names[i] for i in np.where(zero)[0]]
        warnings.warn(f"constant feature(s) mapped to 0: {names}", DataWarning)
    std = np.where(zero, 1.0, std)
    return StandardizerParams(mean, std, zero)


def apply_standardizer(params: StandardizerParams, data: Dataset) -> Dataset:
    out = data.copy()
    out.features = (out.features - params.mean) / params.std
    if params.zero_variance.any():
        out.features[:, params.zero_variance] = 0.0
    return out


@dataclass
class Preprocessor:
    """Imputation means + standardizer fitted together on one training set."""

    impute_means: np.ndarray
    standardizer: StandardizerParams

    @classmethod
    def fit(cls, train: Dataset) -> "Preprocessor":
        means = fit_impute_means(train)
        filled = apply_impute_means(means, train)
        return cls(means, fit_standardizer(filled))

    def transform(self, data: Dataset) -> Dataset:
        return apply_standardizer(self.standardizer, apply_impute_means(self.impute_means, data))

    def to_dict(self) -> dict:
        return {
            "impute_means": [float(v) for v in self.impute_means],
            "standardizer": self.standardizer.to_dict(),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "Preprocessor":
        return cls(
            np.array(d["impute_means"], dtype=np.float64),
            StandardizerParams.from_dict(d["standardizer"]),
        )


def _apportion(counts: np.ndarray, fraction: float) -> np.ndarray:
    """Largest-remainder allocation of round(total*fraction) across classes.

    Keeps every class within one row of its exact share while the grand total
    matches the requested fraction exactly.
    """
    exact = counts * fraction
    base = np.floor(exact).astype(np.int64)
    total = int(round(counts.sum() * fraction))
    short = total - int(base.sum())
    if short > 0:
        order = np.argsort(-(exact - base), kind="stable")  # biggest remainder first
        base[order[:short]] += 1
    return np.minimum(base, counts)


def train_test_split(data: Dataset, test_fraction: float, seed: int) -> tuple[Dataset, Dataset]:
    """Deterministic stratified split into (train, test)."""
    if not 0.0 < test_fraction < 1.0:
        raise DataError(f"test_fraction must be in (0, 1), got {test_fraction}")
    if data.n_rows < 2:
        raise DataError("need at least 2 rows to split")
    classes, counts = np.unique(data.labels, return_counts=True)
    if (counts == 0).any() or len(classes) < 2:
        raise DataError("both classes must be present to stratify")
    rng = np.random.default_rng(seed)
    n_test_per_class = _apportion(counts, test_fraction)
    test_idx = []
    for cls, n_test in zip(classes, n_test_per_class):
        members = np.where(data.labels == cls)[0]
        rng.shuffle(members)
        test_idx.append(members[:n_test])
    test_idx = np.sort(np.concatenate(test_idx))
    mask = np.zeros(data.n_rows, dtype=bool)
    mask[test_idx] = True
    return data.subset(np.where(~mask)[0]), data.subset(test_idx)
