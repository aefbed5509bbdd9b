"""Split-search kernel with compiled and pure implementations.

Growing the forest spends nearly all of its time scanning sorted feature
columns for the best Gini split, so that scan ships as a Cython extension
with a numpy fallback chosen at import time. Both implementations perform
the identical float64 operations in the identical candidate order, so the
selected split (and therefore every tree) is bit-for-bit the same.

Set NEXTDAY_PURE_SPLIT=1 to force the pure path even when the extension
is available (used by tests and the benchmark).
"""

from __future__ import annotations

import os

import numpy as np

try:
    from nextday.learn import _gini_fast
except ImportError:  # extension not built; the fallback covers everything
    _gini_fast = None

_FORCE_PURE_ENV = "NEXTDAY_PURE_SPLIT"


def compiled_available() -> bool:
    return _gini_fast is not None


def active_backend() -> str:
    if compiled_available() and not os.environ.get(_FORCE_PURE_ENV):
        return "compiled"
    return "pure"


def best_split(
    x: np.ndarray, y: np.ndarray, min_leaf: int
) -> tuple[int, float, float] | None:
    """Best (column, threshold, score) over all columns of `x`, or None.

    Candidate thresholds are midpoints between consecutive distinct
    sorted values leaving at least `min_leaf` samples on each side. The
    score is the split quality sum((l0^2+l1^2)/l, (r0^2+r1^2)/r), which
    orders splits exactly like Gini impurity decrease; exact ties keep
    the earliest candidate (lower column, then lower threshold).
    """
    if active_backend() == "compiled":
        return _gini_fast.best_split(x, y, min_leaf)
    return best_split_py(x, y, min_leaf)


def best_split_py(
    x: np.ndarray, y: np.ndarray, min_leaf: int
) -> tuple[int, float, float] | None:
    """Numpy implementation of `best_split` (sort + cumulative counts)."""
    n = x.shape[0]
    if n < 2 * min_leaf:
        return None
    y64 = y.astype(np.int64)
    n1 = int(y64.sum())
    best: tuple[float, int, float] | None = None
    positions = np.arange(1, n, dtype=np.int64)
    for col in range(x.shape[1]):
        values = x[:, col]
        order = np.argsort(values)
        sorted_values = values[order]
        cum_ones = np.cumsum(y64[order])
        valid = (
            (sorted_values[1:] > sorted_values[:-1])
            & (positions >= min_leaf)
            & (n - positions >= min_leaf)
        )
        candidates = np.nonzero(valid)[0]
        if candidates.size == 0:
            continue
        left = candidates + 1
        left_ones = cum_ones[candidates]
        left_zeros = left - left_ones
        right = n - left
        right_ones = n1 - left_ones
        right_zeros = right - right_ones
        quality = (left_zeros * left_zeros + left_ones * left_ones) / left + (
            right_zeros * right_zeros + right_ones * right_ones
        ) / right
        pos = int(np.argmax(quality))
        score = float(quality[pos])
        if best is None or score > best[0]:
            split_at = int(candidates[pos])
            threshold = float(
                (sorted_values[split_at] + sorted_values[split_at + 1]) / 2.0
            )
            best = (score, col, threshold)
    if best is None:
        return None
    return best[1], best[2], best[0]


def parent_score(n0: int, n1: int) -> float:
    """No-split quality on the same scale as `best_split` scores."""
    n = n0 + n1
    if n == 0:
        return 0.0
    return (n0 * n0 + n1 * n1) / n
