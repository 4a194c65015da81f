"""k-sample tests: equality, ordered alternatives and comparison with a control."""

from __future__ import annotations

import math

import numpy as np

from ._common import chi2_right, exact_tails, normal_tails, standardize
from ._ranks import doubled_midranks, has_ties, tie_sizes
from .core import (
    DIRECTIONAL,
    Alternative,
    DataError,
    DegenerateDataError,
    DomainError,
    TestOutcome,
    check_alternative,
)
from .data import DataTable, as_array
from .distributions.exact import (
    jonckheere_law,
    jonckheere_law_tied,
    kruskal_wallis_h,
    kruskal_wallis_law,
    mathisen_law,
)
from .two_sample import _below_lower_median

ARRANGEMENT_LIMIT = 1_000_000  # label assignments covered by the exact k-sample laws
JONCKHEERE_UNTIED_MAX_N = 20


def as_samples(samples, min_k: int = 2, name: str = "samples") -> list[np.ndarray]:
    """List of 1-D arrays from a sequence of samples or a DataTable (one sample per column)."""
    if isinstance(samples, DataTable):
        arrays = [samples.column(j) for j in range(samples.columns)]
    else:
        arrays = [as_array(s, f"sample {i + 1}") for i, s in enumerate(samples)]
    if len(arrays) < min_k:
        raise DataError(f"{name}: need at least {min_k} samples, got {len(arrays)}")
    return arrays


def _arrangements(sizes) -> int:
    out = math.factorial(sum(sizes))
    for n in sizes:
        out //= math.factorial(n)
    return out


def extended_median_test(samples) -> TestOutcome:
    """k-sample median test: chi-square on counts above / not above the pooled median."""
    xs = as_samples(samples, 2)
    k = len(xs)
    pooled = np.concatenate(xs)
    N = pooled.size
    if N < 2 * k:
        raise DataError(f"extended median test needs at least {2 * k} values, got {N}")
    med = float(np.median(pooled))
    above = np.array([int(np.sum(x > med)) for x in xs], dtype=float)
    sizes = np.array([x.size for x in xs], dtype=float)
    t = above.sum()
    if t == 0 or t == N:
        raise DegenerateDataError("no split of the pooled sample around its median")
    table = np.column_stack([above, sizes - above])
    expected = np.outer(sizes, [t, N - t]) / N
    q = float(np.sum((table - expected) ** 2 / expected))
    return TestOutcome(
        "Extended median test",
        {"Q": q, "df": k - 1},
        Alternative.TWO_SIDED,
        **chi2_right(q, k - 1),
        notes=[f"pooled median {med:g}"],
        extras={"above_median": tuple(int(a) for a in above)},
    )


def kruskal_wallis(samples) -> TestOutcome:
    """Kruskal-Wallis H with midranks and tie correction.

    The exact law (conditional on the pooled tie pattern) is built by dynamic
    programming over rank-sum vectors when the number of label assignments
    N!/(n_1!...n_k!) is at most 10^6.
    """
    xs = as_samples(samples, 2)
    sizes = tuple(x.size for x in xs)
    N = sum(sizes)
    k = len(xs)
    if N < k + 1:
        raise DataError(f"Kruskal-Wallis needs at least {k + 1} values, got {N}")
    pooled = np.concatenate(xs)
    t = tie_sizes(pooled).astype(float)
    corr = 1.0 - float(np.sum(t**3 - t)) / (N**3 - N)
    if corr <= 0:
        raise DegenerateDataError("all values are tied")
    r2 = doubled_midranks(pooled)
    bounds = np.cumsum((0,) + sizes)
    sums = [int(r2[bounds[j] : bounds[j + 1]].sum()) for j in range(k)]
    h = kruskal_wallis_h(sums, sizes, corr)
    fields = chi2_right(h, k - 1)
    notes = []
    if corr < 1:
        notes.append("midranks with tie correction")
    if _arrangements(sizes) <= ARRANGEMENT_LIMIT:
        law = kruskal_wallis_law(tuple(int(v) for v in tie_sizes(pooled)), sizes)
        fields["exact_right_p"] = law.right_tail(h)
    else:
        notes.append("more than 10^6 label assignments: asymptotic p-value only")
    return TestOutcome(
        "Kruskal-Wallis",
        {"H": h, "df": k - 1},
        Alternative.TWO_SIDED,
        **fields,
        notes=notes,
        extras={"rank_sums": tuple(s / 2 for s in sums)},
    )


def jonckheere_statistic(xs) -> float:
    """B = sum over i < j of #{x in sample i < y in sample j}, ties counting one half."""
    b = 0.0
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            d = np.subtract.outer(xs[j], xs[i])
            b += float(np.sum(d > 0)) + 0.5 * float(np.sum(d == 0))
    return b


def jonckheere_terpstra(samples, alternative=Alternative.ORDERED) -> TestOutcome:
    """Jonckheere-Terpstra test for ordered alternatives.

    Samples are given in the hypothesised increasing order; large B (right
    tail) supports the ordering.
    """
    allowed = DIRECTIONAL + (Alternative.ORDERED,)
    alt = check_alternative(alternative, allowed, "Jonckheere-Terpstra")
    xs = as_samples(samples, 2)
    sizes = tuple(x.size for x in xs)
    N = sum(sizes)
    pooled = np.concatenate(xs)
    b = jonckheere_statistic(xs)
    ns = np.array(sizes, dtype=float)
    t = tie_sizes(pooled).astype(float)
    mean = (N * N - float(np.sum(ns**2))) / 4
    var = (
        (N * (N - 1) * (2 * N + 5) - np.sum(ns * (ns - 1) * (2 * ns + 5)) - np.sum(t * (t - 1) * (2 * t + 5))) / 72
        + np.sum(ns * (ns - 1) * (ns - 2)) * np.sum(t * (t - 1) * (t - 2)) / (36 * N * (N - 1) * (N - 2))
        + np.sum(ns * (ns - 1)) * np.sum(t * (t - 1)) / (8 * N * (N - 1))
    ) if N > 2 else 0.0
    z = standardize(b, mean, float(var))
    fields = normal_tails(z)
    notes = []
    if not has_ties(pooled):
        if N <= JONCKHEERE_UNTIED_MAX_N:
            fields.update(exact_tails(jonckheere_law(sizes), b))
        else:
            notes.append(f"exact law only for N <= {JONCKHEERE_UNTIED_MAX_N}")
    else:
        notes.append("ties count one half; tie-corrected variance")
        if _arrangements(sizes) <= ARRANGEMENT_LIMIT:
            fields.update(exact_tails(jonckheere_law_tied(tuple(int(v) for v in t), sizes), b))
        else:
            notes.append("more than 10^6 label assignments: asymptotic p-values only")
    return TestOutcome("Jonckheere-Terpstra", {"B": b, "Z": z}, alt, **fields, notes=notes)


def chakraborti_desu(samples, control_index: int = 0, alternative=Alternative.CONTROL) -> TestOutcome:
    """Comparison of k-1 treatments with a control.

    W adds, over treatments, the number of values below the control median
    X_(q), q = ceil(m/2) (values equal to it dropped).  Treatments shifted
    upwards make W small, so the left tail is the rejection region.
    """
    allowed = DIRECTIONAL + (Alternative.CONTROL,)
    alt = check_alternative(alternative, allowed, "Chakraborti-Desu")
    xs = as_samples(samples, 2)
    if not 0 <= control_index < len(xs):
        raise DomainError(f"control index {control_index} outside 0..{len(xs) - 1}")
    control = xs[control_index]
    treatments = [x for i, x in enumerate(xs) if i != control_index]
    m = control.size
    counts, kept_sizes = [], []
    q = med = None
    for t in treatments:
        q, med, kept, v = _below_lower_median(control, t)
        counts.append(v)
        kept_sizes.append(kept.size)
    M = sum(kept_sizes)
    if M == 0:
        raise DegenerateDataError("every treatment value equals the control median")
    w = sum(counts)
    mean = M * q / (m + 1)
    var = M * q * (m - q + 1) * (m + 1 + M) / ((m + 1) ** 2 * (m + 2))
    z = standardize(w, mean, var)
    notes = [f"control median is order statistic {q} of {m} ({med:g})"]
    dropped = sum(t.size for t in treatments) - M
    if dropped:
        notes.append(f"{dropped} treatment value(s) equal to the control median dropped")
    return TestOutcome(
        "Chakraborti-Desu",
        {"W": w, "Z": z},
        alt,
        **exact_tails(mathisen_law(m, M, q), w),
        **normal_tails(z),
        notes=notes,
        extras={"below_control_median": tuple(counts)},
    )


__all__ = [
    "extended_median_test",
    "kruskal_wallis",
    "jonckheere_terpstra",
    "chakraborti_desu",
    "jonckheere_statistic",
    "as_samples",
]
