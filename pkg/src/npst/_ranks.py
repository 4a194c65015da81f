"""Midranks and tie bookkeeping."""

from __future__ import annotations

import numpy as np
from scipy.stats import rankdata


def midranks(values) -> np.ndarray:
    """Ranks 1..n, tied values sharing the average of their positions."""
    return rankdata(np.asarray(values, dtype=float), method="average")


def doubled_midranks(values) -> np.ndarray:
    """Twice the midranks, as exact integers."""
    return np.rint(2.0 * midranks(values)).astype(np.int64)


def tie_sizes(values) -> np.ndarray:
    """Sizes of the groups of equal values (singletons included)."""
    _, counts = np.unique(np.asarray(values, dtype=float), return_counts=True)
    return counts


def has_ties(values) -> bool:
    values = np.asarray(values, dtype=float)
    return np.unique(values).size < values.size


def tie_term(values) -> float:
    """Sum of t^3 - t over tie groups."""
    t = tie_sizes(values).astype(float)
    return float(np.sum(t**3 - t))


def tie_groups_sorted(values) -> list[int]:
    """Sizes of tie groups in increasing order of value."""
    return tie_sizes(values).tolist()
