"""Count data: contingency tables and multinomial equality."""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from functools import lru_cache

import numpy as np

from ._common import chi2_right, exact_tails, normal_tails, standardize
from .core import (
    DIRECTIONAL,
    Alternative,
    DataError,
    DegenerateDataError,
    POINT_PROBABILITY,
    TestOutcome,
    UnsupportedExactError,
    check_alternative,
    double_tail,
)
from .data import as_matrix
from .distributions.exact import ExactNullDistribution, binomial_half_law, hypergeometric_law, law_from_counts

COMPOSITION_LIMIT = 1_000_000


def as_counts(table, name: str = "contingency table") -> np.ndarray:
    """Integer matrix of nonnegative counts."""
    m = as_matrix(table, name)
    if np.any(m < 0) or np.any(m != np.round(m)):
        raise DataError(f"{name} must hold nonnegative integer counts")
    return m.astype(np.int64)


def _count_vector(counts, min_k: int) -> np.ndarray:
    c = np.asarray(counts, dtype=float).ravel()
    if c.size < min_k:
        raise DataError(f"need at least {min_k} categories, got {c.size}")
    if np.any(c < 0) or np.any(c != np.round(c)) or not np.all(np.isfinite(c)):
        raise DataError("category counts must be nonnegative integers")
    if c.sum() < 1:
        raise DataError("total count must be at least 1")
    return c.astype(np.int64)


def contingency_coefficients(table) -> TestOutcome:
    """Chi-square test of independence with Pearson's C, phi and Cramer's V."""
    t = as_counts(table)
    r, c = t.shape
    if r < 2 or c < 2:
        raise DataError(f"contingency table must be at least 2 x 2, got {r} x {c}")
    rows, cols = t.sum(axis=1), t.sum(axis=0)
    if np.any(rows == 0) or np.any(cols == 0):
        raise DegenerateDataError("a row or column total is zero")
    N = float(t.sum())
    expected = np.outer(rows, cols) / N
    q = float(np.sum((t - expected) ** 2 / expected))
    df = (r - 1) * (c - 1)
    notes = []
    if np.any(expected < 5):
        notes.append("some expected counts are below 5; the chi-square approximation may be poor")
    return TestOutcome(
        "Contingency coefficients",
        {
            "Q": q,
            "df": df,
            "C": math.sqrt(q / (q + N)),
            "phi": math.sqrt(q / N),
            "V": math.sqrt(q / (N * min(r - 1, c - 1))),
        },
        Alternative.TWO_SIDED,
        **chi2_right(q, df),
        notes=notes,
    )


def _two_by_two(table, name: str) -> np.ndarray:
    t = as_counts(table, name)
    if t.shape != (2, 2):
        raise DataError(f"{name} must be 2 x 2, got {t.shape[0]} x {t.shape[1]}")
    return t


def fisher_exact(table, alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Fisher's exact test on a 2x2 table.

    Tails are ordered by the top-left count a (right tail: a large, positive
    association).  The two-sided p-value adds every table no more probable
    than the observed one; the doubled one-sided value is kept in ``extras``.
    """
    alt = check_alternative(alternative, DIRECTIONAL, "Fisher exact")
    t = _two_by_two(table, "Fisher table")
    if t.sum() < 1:
        raise DataError("Fisher table needs a positive total")
    (a, b), (c, d) = t.tolist()
    law = hypergeometric_law(a + b, c + d, a + c)
    left, right = law.left_tail(a), law.right_tail(a)
    observed = dict(zip(law.support, law.counts))[a]
    small = sum(cnt for cnt in law.counts if cnt <= observed)
    return TestOutcome(
        "Fisher exact",
        {"a": a, "b": b, "c": c, "d": d},
        alt,
        exact_left_p=left,
        exact_right_p=right,
        exact_double_p=small / law.total,
        double_rule=POINT_PROBABILITY,
        extras={"doubled_p": double_tail(left, right), "point_probability": observed / law.total},
    )


def mcnemar(table) -> TestOutcome:
    """McNemar test on a 2x2 table of paired outcomes.

    Uses the discordant cells b (row 1, column 2) and c (row 2, column 1);
    large b is the right tail.
    """
    t = _two_by_two(table, "McNemar table")
    b, c = int(t[0, 1]), int(t[1, 0])
    n = b + c
    if n == 0:
        raise DegenerateDataError("no discordant pairs")
    q = (b - c) ** 2 / n
    z = (b - c) / math.sqrt(n)
    fields = exact_tails(binomial_half_law(n), b)
    fields.update(normal_tails(z))  # the double tail equals P(chi2_1 >= Q)
    # Edwards' correction tracks the exact double tail far more closely
    q_cc = max(0, abs(b - c) - 1) ** 2 / n
    corrected = chi2_right(q_cc, 1)["asymptotic_right_p"]
    return TestOutcome(
        "McNemar",
        {"b": b, "c": c, "Q": q},
        Alternative.TWO_SIDED,
        **fields,
        extras={"Q_corrected": q_cc, "corrected_double_p": corrected},
    )


@lru_cache(maxsize=64)
def multinomial_laws(N: int, k: int) -> tuple[ExactNullDistribution, ExactNullDistribution]:
    """Equiprobable multinomial laws of sum c_j^2 and of sum j c_j (total k^N)."""
    n_comp = math.comb(N + k - 1, k - 1)
    if n_comp > COMPOSITION_LIMIT:
        raise UnsupportedExactError(f"{n_comp} compositions exceed the budget of {COMPOSITION_LIMIT}")
    fact = [math.factorial(i) for i in range(N + 1)]
    sq: dict[int, int] = defaultdict(int)
    trend: dict[int, int] = defaultdict(int)
    for bars in itertools.combinations(range(N + k - 1), k - 1):
        prev = -1
        parts = []
        for bpos in bars:
            parts.append(bpos - prev - 1)
            prev = bpos
        parts.append(N + k - 2 - prev)
        w = fact[N]
        for p in parts:
            w //= fact[p]
        sq[sum(p * p for p in parts)] += w
        trend[sum((j + 1) * p for j, p in enumerate(parts))] += w
    return law_from_counts("multinomial_sumsq", (N, k), sq), law_from_counts("multinomial_trend", (N, k), trend)


def multinomial_equality(counts) -> TestOutcome:
    """Test that k categories are equally likely.

    Q is the chi-square statistic against N/k per category; the exact tail
    P(Q >= q) enumerates every composition of N with multinomial weights.
    """
    c = _count_vector(counts, 2)
    k, N = c.size, int(c.sum())
    e = N / k
    q = float(np.sum((c - e) ** 2) / e)
    fields = chi2_right(q, k - 1)
    notes = []
    try:
        law = multinomial_laws(N, k)[0]
    except UnsupportedExactError as exc:
        notes.append(str(exc))
    else:
        fields["exact_right_p"] = law.right_tail(int(np.sum(c * c)))
    return TestOutcome(
        "Multinomial equality", {"Q": q, "df": k - 1}, Alternative.TWO_SIDED, **fields, notes=notes
    )


def ordered_equality(counts, alternative=Alternative.ORDERED) -> TestOutcome:
    """Trend test for ordered categories: T = sum j c_j under equal probabilities.

    Large T (right tail) means mass drifts towards later categories.
    """
    alt = check_alternative(alternative, DIRECTIONAL + (Alternative.ORDERED,), "Ordered equality")
    c = _count_vector(counts, 3)
    k, N = c.size, int(c.sum())
    T = int(np.dot(np.arange(1, k + 1), c))
    z = standardize(T, N * (k + 1) / 2, N * (k * k - 1) / 12)
    fields = normal_tails(z)
    notes = []
    try:
        law = multinomial_laws(N, k)[1]
    except UnsupportedExactError as exc:
        notes.append(str(exc))
    else:
        fields.update(exact_tails(law, T))
    return TestOutcome("Ordered equality", {"T": T, "Z": z}, alt, **fields, notes=notes)


__all__ = [
    "contingency_coefficients",
    "fisher_exact",
    "mcnemar",
    "multinomial_equality",
    "ordered_equality",
    "multinomial_laws",
    "as_counts",
]
