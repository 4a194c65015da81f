"""Quantile procedures and paired-sample location tests."""

from __future__ import annotations

import math

import numpy as np

from ._common import exact_tails, normal_tails, standardize
from ._ranks import doubled_midranks, has_ties, tie_term
from .core import (
    DIRECTIONAL,
    Alternative,
    CoverageError,
    DataError,
    DegenerateDataError,
    DomainError,
    TestOutcome,
    check_alternative,
    double_tail,
)
from .data import as_array, as_matrix
from .distributions.classical import Binomial
from .distributions.exact import binomial_half_law, signed_rank_law, signed_rank_law_tied

SIGNED_RANK_TIED_MAX_N = 12


def _binomial_pmfs(n: int, p: float) -> list[float]:
    dist = Binomial(n, p)
    return [dist.pmf(k) for k in range(n + 1)]


def binomial_tails(k: int, n: int, p: float) -> tuple[float, float]:
    """(P(K <= k), P(K >= k)) for K ~ Binomial(n, p)."""
    if p == 0.5:
        law = binomial_half_law(n)
        return law.left_tail(k), law.right_tail(k)
    pm = _binomial_pmfs(n, p)
    return min(1.0, math.fsum(pm[: k + 1])), min(1.0, math.fsum(pm[k:]))


def order_statistic_coverage(n: int, q: float, r: int, s: int) -> float:
    """P(X_(r) < quantile_q < X_(s)) for a continuous population."""
    if not 1 <= r < s <= n:
        raise DomainError(f"need 1 <= r < s <= n, got r={r}, s={s}, n={n}")
    pm = _binomial_pmfs(n, q)
    return math.fsum(pm[r:s])


def quantile_confidence_interval(sample, q: float = 0.5, confidence: float = 0.95) -> TestOutcome:
    """Distribution-free confidence interval (X_(r), X_(s)) for the q-quantile.

    For the median the interval is symmetric, (r, n+1-r); otherwise the
    narrowest (s - r) pair reaching the level is chosen, lowest r first.
    """
    x = np.sort(as_array(sample, "sample", 2))
    n = x.size
    if not 0 < q < 1:
        raise DomainError(f"quantile must lie in (0, 1), got {q!r}")
    if not 0 < confidence < 1:
        raise DomainError(f"confidence must lie in (0, 1), got {confidence!r}")
    pm = _binomial_pmfs(n, q)

    def level(r, s):
        return math.fsum(pm[r:s])

    best_level = level(1, n)
    if best_level < confidence:
        raise CoverageError(
            f"no order-statistic interval reaches {confidence:g} with n={n}; maximum is {best_level:.6f}",
            best_level,
        )
    choice = None
    if q == 0.5:
        for r in range(n // 2, 0, -1):
            if n + 1 - r > r and level(r, n + 1 - r) >= confidence:
                choice = (r, n + 1 - r)
                break
    else:
        for width in range(1, n):
            for r in range(1, n - width + 1):
                s = r + width
                if level(r, s) >= confidence:
                    choice = (r, s)
                    break
            if choice:
                break
    r, s = choice
    return TestOutcome(
        "Confidence interval for a quantile",
        {"lower": x[r - 1], "upper": x[s - 1], "confidence": level(r, s)},
        Alternative.TWO_SIDED,
        extras={"quantile": q, "order_statistics": (r, s), "requested_confidence": confidence},
    )


def population_quantile_test(sample, q: float, hypothesized: float, alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Test that the q-quantile equals ``hypothesized``.

    K counts observations above the hypothesized value; under the null it is
    Binomial(n', 1 - q) where n' excludes observations equal to it.  Large K
    (right tail) points to a larger quantile.
    """
    alt = check_alternative(alternative, DIRECTIONAL, "Population quantile")
    x = as_array(sample, "sample", 1)
    if not 0 < q < 1:
        raise DomainError(f"quantile must lie in (0, 1), got {q!r}")
    kept = x[x != hypothesized]
    if kept.size == 0:
        raise DegenerateDataError("every observation equals the hypothesized value")
    n = kept.size
    k = int(np.sum(kept > hypothesized))
    p = 1.0 - q
    left, right = binomial_tails(k, n, p)
    z = standardize(k, n * p, n * p * q)
    notes = []
    if n < x.size:
        notes.append(f"{x.size - n} observation(s) equal to the hypothesized value dropped")
    return TestOutcome(
        "Population quantile",
        {"K": k, "n": n, "Z": z},
        alt,
        exact_left_p=left,
        exact_right_p=right,
        exact_double_p=double_tail(left, right),
        **normal_tails(z),
        notes=notes,
    )


def _paired_differences(paired) -> np.ndarray:
    m = as_matrix(paired, "paired data")
    if m.shape[1] != 2:
        raise DataError(f"paired data need exactly 2 columns, got {m.shape[1]}")
    return m[:, 0] - m[:, 1]


def sign_test(paired, alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Sign test on differences column 1 - column 2 (zeros dropped)."""
    alt = check_alternative(alternative, DIRECTIONAL, "Sign test")
    d = _paired_differences(paired)
    plus, minus = int(np.sum(d > 0)), int(np.sum(d < 0))
    n = plus + minus
    if n == 0:
        raise DegenerateDataError("all differences are zero")
    law = binomial_half_law(n)
    z = standardize(plus, n / 2, n / 4)
    notes = ["asymptotic p-values without continuity correction"]
    if n < d.size:
        notes.insert(0, f"{d.size - n} zero difference(s) dropped")
    return TestOutcome(
        "Sign test",
        {"plus": plus, "minus": minus, "n": n, "Z": z},
        alt,
        **exact_tails(law, plus),
        **normal_tails(z),
        notes=notes,
    )


def _snap(values: np.ndarray) -> np.ndarray:
    # round to 12 significant digits so that 0.3 - 0.1 and 0.2 count as tied
    return np.array([float(f"{v:.12g}") for v in values])


def wilcoxon_signed_ranks(paired, alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Wilcoxon signed-ranks test on differences column 1 - column 2.

    W+ sums the (mid)ranks of |d| over positive differences.  The exact law
    comes from a subset-sum programme; with tied |d| it is conditional on the
    tie pattern and computed only for n <= 12.
    """
    alt = check_alternative(alternative, DIRECTIONAL, "Wilcoxon signed-ranks")
    d = _snap(_paired_differences(paired))
    nz = d[d != 0]
    n = nz.size
    if n == 0:
        raise DegenerateDataError("all differences are zero")
    a = np.abs(nz)
    r2 = doubled_midranks(a)
    w_plus = float(np.sum(r2[nz > 0])) / 2
    w_minus = float(np.sum(r2[nz < 0])) / 2
    var = n * (n + 1) * (2 * n + 1) / 24 - tie_term(a) / 48
    z = standardize(w_plus, n * (n + 1) / 4, var)
    fields = normal_tails(z)
    notes = []
    if n < d.size:
        notes.append(f"{d.size - n} zero difference(s) dropped")
    if not has_ties(a):
        fields.update(exact_tails(signed_rank_law(n), w_plus))
    elif n <= SIGNED_RANK_TIED_MAX_N:
        fields.update(exact_tails(signed_rank_law_tied(tuple(sorted(r2.tolist()))), w_plus))
        notes.append("exact law conditional on the midranks of tied |d|")
    else:
        notes.append(f"tied |d| with n > {SIGNED_RANK_TIED_MAX_N}: asymptotic p-values only")
    notes.append("asymptotic p-values use the tie-corrected variance without continuity correction")
    return TestOutcome(
        "Wilcoxon signed-ranks",
        {"W+": w_plus, "W-": w_minus, "n": n, "Z": z},
        alt,
        **fields,
        notes=notes,
    )


__all__ = [
    "quantile_confidence_interval",
    "population_quantile_test",
    "sign_test",
    "wilcoxon_signed_ranks",
    "order_statistic_coverage",
    "binomial_tails",
]
