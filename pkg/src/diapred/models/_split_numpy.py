"""Pure-numpy split-search kernels (fallback for the compiled extension).

Both backends must pick bit-identical splits, so the arithmetic here is
mirrored exactly in ``_split_kernels.pyx``:

* candidates sit at midpoints between consecutive distinct sorted values,
  computed as ``a + 0.5 * (b - a)``;
* a split's quality is ``q = score_left/n_left + score_right/n_right`` where
  ``score`` is ``pos^2 + neg^2`` (Gini, integer counts) or ``sum^2`` of the
  targets (variance reduction, sequential left-to-right prefix sums);
* the first strictly-better candidate wins: lowest column, then lowest
  threshold.

Higher ``q`` means purer children; ``q`` minus the parent's own score is the
impurity decrease in "sample count" units (divide by the root size to get
the usual normalized gain).
"""

from __future__ import annotations

import numpy as np


def _midpoint(a: float, b: float) -> float:
    mid = a + 0.5 * (b - a)
    # Adjacent doubles can round the midpoint onto b; fall back to a so the
    # rule "x <= threshold goes left" still separates the two values.
    if not mid < b:
        mid = a
    return mid


def best_split_gini(xblock: np.ndarray, y: np.ndarray):
    """Best (column, threshold, gain) for binary labels, Gini criterion.

    ``xblock`` is (n, m) float64 with columns in scan order; ``y`` is (n,)
    int64 of {0, 1}.  Returns column -1 when no candidate strictly beats the
    parent node's purity.
    """
    n, m = xblock.shape
    total_pos = int(y.sum())
    total_neg = n - total_pos
    parent_q = float(total_pos * total_pos + total_neg * total_neg) / n
    best_col, best_thr, best_q = -1, 0.0, parent_q
    for j in range(m):
        x = xblock[:, j]
        order = np.argsort(x, kind="stable")
        xs = x[order]
        boundaries = np.nonzero(xs[:-1] < xs[1:])[0]
        if boundaries.size == 0:
            continue
        pos_prefix = np.cumsum(y[order])
        nl = boundaries + 1
        nr = n - nl
        pl = pos_prefix[boundaries]
        pr = total_pos - pl
        ql = (pl * pl + (nl - pl) * (nl - pl)) / nl
        qr = (pr * pr + (nr - pr) * (nr - pr)) / nr
        q = ql + qr
        k = int(np.argmax(q))  # first max: lowest threshold wins ties
        if q[k] > best_q:
            i = int(boundaries[k])
            best_col = j
            best_thr = _midpoint(float(xs[i]), float(xs[i + 1]))
            best_q = float(q[k])
    return best_col, best_thr, best_q - parent_q


def best_split_sse(xblock: np.ndarray, t: np.ndarray):
    """Best (column, threshold, gain) for real targets, variance criterion.

    Same contract as ``best_split_gini``; ``t`` is (n,) float64.
    """
    n, m = xblock.shape
    # Sequential (not pairwise) sum, mirrored by a plain loop in the
    # compiled kernel.
    total = float(np.cumsum(t)[-1])
    parent_q = total * total / n
    best_col, best_thr, best_q = -1, 0.0, parent_q
    for j in range(m):
        x = xblock[:, j]
        order = np.argsort(x, kind="stable")
        xs = x[order]
        boundaries = np.nonzero(xs[:-1] < xs[1:])[0]
        if boundaries.size == 0:
            continue
        prefix = np.cumsum(t[order])
        nl = boundaries + 1
        nr = n - nl
        sl = prefix[boundaries]
        sr = total - sl
        q = sl * sl / nl + sr * sr / nr
        k = int(np.argmax(q))
        if q[k] > best_q:
            i = int(boundaries[k])
            best_col = j
            best_thr = _midpoint(float(xs[i]), float(xs[i + 1]))
            best_q = float(q[k])
    return best_col, best_thr, best_q - parent_q
