"""Tests of randomness for symbolic and numeric sequences."""

from __future__ import annotations

import numpy as np

from ._common import exact_tails, normal_tails, standardize
from ._ranks import doubled_midranks, has_ties
from .core import (
    DIRECTIONAL,
    Alternative,
    DataError,
    DegenerateDataError,
    TestOutcome,
    TieError,
    check_alternative,
)
from .data import StringSequence, as_array
from .distributions.exact import PERMUTATION_MAX_N, runs_law, up_down_runs_law, von_neumann_law

UP_DOWN_EXACT_MAX_N = 100


def count_runs(labels) -> int:
    """Number of maximal blocks of equal consecutive items."""
    labels = list(labels)
    return 1 + sum(a != b for a, b in zip(labels, labels[1:]))


def _two_symbol_runs(labels: list, name: str, alternative: Alternative, notes=()) -> TestOutcome:
    first = labels[0]
    n1 = sum(1 for t in labels if t == first)
    n2 = len(labels) - n1
    R = count_runs(labels)
    N = n1 + n2
    mean = 1 + 2 * n1 * n2 / N
    var = 2 * n1 * n2 * (2 * n1 * n2 - N) / (N * N * (N - 1))
    z = standardize(R, mean, var)
    stats = {"R": R, "n1": n1, "n2": n2}
    if not np.isnan(z):
        stats["Z"] = z
    return TestOutcome(
        name,
        stats,
        alternative,
        **exact_tails(runs_law(n1, n2), R),
        **normal_tails(z),
        notes=tuple(notes),
    )


def number_of_runs(sequence, alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Runs test on a binary symbolic sequence.

    Few runs suggest clustering (left tail), many runs alternation (right tail).
    ``n1`` counts the symbol the sequence starts with.
    """
    alt = check_alternative(alternative, DIRECTIONAL, "Number of runs")
    if isinstance(sequence, str):
        sequence = StringSequence.from_text(sequence)
    labels = list(sequence.tokens if isinstance(sequence, StringSequence) else sequence)
    symbols = set(labels)
    if len(symbols) != 2:
        raise DataError(f"number of runs needs exactly 2 distinct symbols, found {len(symbols)}")
    return _two_symbol_runs(labels, "Number of runs", alt)


def runs_up_down(sequence, alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Runs up and down: runs in the signs of successive differences."""
    alt = check_alternative(alternative, DIRECTIONAL, "Runs up and down")
    x = as_array(sequence, "sequence", 2)
    diffs = np.diff(x)
    if np.any(diffs == 0):
        i = int(np.flatnonzero(diffs == 0)[0])
        raise TieError(f"consecutive equal values at positions {i} and {i + 1}")
    n = x.size
    R = count_runs(np.sign(diffs).tolist())
    z = standardize(R, (2 * n - 1) / 3, (16 * n - 29) / 90)
    fields = normal_tails(z)
    notes = []
    if n <= UP_DOWN_EXACT_MAX_N:
        fields.update(exact_tails(up_down_runs_law(n), R))
    else:
        notes.append(f"exact law computed only for n <= {UP_DOWN_EXACT_MAX_N}")
    return TestOutcome("Runs up and down", {"R": R, "n": n, "Z": z}, alt, **fields, notes=notes)


def runs_up_down_median(sequence, alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Runs above and below the sample median (median-equal values dropped)."""
    alt = check_alternative(alternative, DIRECTIONAL, "Runs up and down (median)")
    x = as_array(sequence, "sequence", 2)
    med = float(np.median(x))
    kept = x[x != med]
    labels = ["A" if v > med else "B" for v in kept]
    if "A" not in labels or "B" not in labels:
        raise DegenerateDataError("need values on both sides of the median")
    notes = [f"median {med:g}"]
    if kept.size < x.size:
        notes.append(f"{x.size - kept.size} value(s) equal to the median dropped")
    out = _two_symbol_runs(labels, "Runs up and down (median)", alt, notes)
    return out


def von_neumann_ranks(sequence, alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Rank version of the von Neumann ratio.

    NM is the sum of squared successive rank differences; RVN divides it by
    the sum of squared rank deviations (n(n^2-1)/12 without ties).  Small
    values indicate trend or positive serial dependence.
    """
    alt = check_alternative(alternative, DIRECTIONAL, "Von Neumann ranks")
    x = as_array(sequence, "sequence", 3)
    n = x.size
    r2 = doubled_midranks(x)
    nm = float(np.sum(np.diff(r2) ** 2)) / 4.0
    spread = float(np.sum((r2 - r2.mean()) ** 2)) / 4.0
    if spread == 0:
        raise DegenerateDataError("all values are equal")
    rvn = nm / spread
    var = 4 * (n - 2) * (5 * n * n - 2 * n - 9) / (5 * n * (n + 1) * (n - 1) ** 2)
    z = standardize(rvn, 2.0, var)
    fields = normal_tails(z)
    notes = []
    if has_ties(x):
        notes.append("midranks used for ties; asymptotic variance is the untied one")
    if n <= PERMUTATION_MAX_N:
        fields.update(exact_tails(von_neumann_law(tuple(sorted(r2.tolist()))), nm))
    else:
        notes.append(f"exact law by permutation enumeration only for n <= {PERMUTATION_MAX_N}")
    return TestOutcome("Von Neumann ranks", {"NM": nm, "RVN": rvn, "Z": z}, alt, **fields, notes=notes)


__all__ = ["number_of_runs", "runs_up_down", "runs_up_down_median", "von_neumann_ranks", "count_runs"]
