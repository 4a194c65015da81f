"""Two-sample tests: general differences, location and scale."""

from __future__ import annotations

import math
import numpy as np
from scipy import special

from ._common import exact_tails, normal_tails, standardize
from ._ranks import doubled_midranks, has_ties, midranks, tie_term
from .core import (
    DIRECTIONAL,
    Alternative,
    DataError,
    DegenerateDataError,
    DomainError,
    TestOutcome,
    TieError,
    TWO_SIDED_STATISTIC,
    UnsupportedExactError,
    check_alternative,
)
from .data import as_array
from .distributions.classical import chi2_sf, norm_ppf
from .distributions.exact import (
    hypergeometric_law,
    ks_paths_within,
    law_from_counts,
    linear_rank_law,
    mann_whitney_law,
    mathisen_law,
    rank_sum_law,
    rank_sum_law_tied,
    runs_law,
)
from .distributions.kolmogorov import kolmogorov_limit_sf, smirnov_limit_sf
from .randomness import count_runs

LINEAR_RANK_EXACT_MAX_N = 12  # enumeration budget for tied or real-valued scores
KS_EXACT_MAX_MN = 10_000

SCALE_VARIANTS = ("david_barton", "freund_ansari_bradley", "mood", "klotz", "siegel_tukey", "sukhatme")


def _samples(x, y, min_size: int = 1):
    return as_array(x, "sample 1", min_size), as_array(y, "sample 2", min_size)


# ------------------------------------------------------------------ general


def wald_wolfowitz(x, y, alternative=Alternative.LEFT) -> TestOutcome:
    """Runs test on the pooled ordering of two samples.

    Too few runs (left tail) indicate that the samples differ.
    """
    alt = check_alternative(alternative, DIRECTIONAL, "Wald-Wolfowitz")
    x, y = _samples(x, y)
    if np.intersect1d(x, y).size:
        raise TieError(f"value {np.intersect1d(x, y)[0]:g} occurs in both samples; the run sequence is undefined")
    pooled = np.concatenate([x, y])
    labels = np.concatenate([np.zeros(x.size, int), np.ones(y.size, int)])[np.argsort(pooled, kind="stable")]
    R = count_runs(labels.tolist())
    m, n = x.size, y.size
    N = m + n
    var = 2 * m * n * (2 * m * n - N) / (N * N * (N - 1)) if N > 1 else 0.0
    z = standardize(R, 1 + 2 * m * n / N, var)
    stats = {"R": R, "m": m, "n": n}
    if not math.isnan(z):
        stats["Z"] = z
    return TestOutcome("Wald-Wolfowitz", stats, alt, **exact_tails(runs_law(m, n), R), **normal_tails(z))


def median_test(x, y, alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Two-sample median test.

    U counts sample-1 values above the pooled median; given the margins it is
    hypergeometric.  Q is the Pearson chi-square of the 2x2 table.
    """
    alt = check_alternative(alternative, DIRECTIONAL, "Median test")
    x, y = _samples(x, y)
    m, n = x.size, y.size
    N = m + n
    if N < 4:
        raise DataError(f"median test needs at least 4 values in total, got {N}")
    pooled = np.concatenate([x, y])
    if np.all(pooled == pooled[0]):
        raise DegenerateDataError("all values are equal")
    med = float(np.median(pooled))
    t = int(np.sum(pooled > med))
    if t == 0:
        raise DegenerateDataError("no value lies above the pooled median")
    u = int(np.sum(x > med))
    law = hypergeometric_law(m, n, t)
    # Pearson chi-square of [[u, m-u], [t-u, n-t+u]] (no continuity correction)
    a, b, c, d = u, m - u, t - u, n - t + u
    q = N * (a * d - b * c) ** 2 / (m * n * t * (N - t))
    z = math.copysign(math.sqrt(q), u - m * t / N)
    fields = exact_tails(law, u)
    fields.update(normal_tails(z))
    fields["asymptotic_double_p"] = chi2_sf(q, 1)
    return TestOutcome(
        "Median test",
        {"U": u, "Q": q},
        alt,
        **fields,
        notes=[f"pooled median {med:g}; {t} value(s) above it"],
        extras={"table": ((a, b), (c, d))},
    )


def _below_lower_median(control: np.ndarray, treatment: np.ndarray):
    m = control.size
    q = (m + 1) // 2
    med = float(np.sort(control)[q - 1])
    kept = treatment[treatment != med]
    return q, med, kept, int(np.sum(kept < med))


def control_median_test(control, treatment, alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Control median (Mathisen) test.

    V counts treatment values below the control median X_(q), q = ceil(m/2).
    Treatment values equal to it are dropped.  Large V (right tail) means the
    treatment is shifted downwards.
    """
    alt = check_alternative(alternative, DIRECTIONAL, "Control median test")
    c, t = _samples(control, treatment)
    m = c.size
    q, med, kept, v = _below_lower_median(c, t)
    n = kept.size
    if n == 0:
        raise DegenerateDataError("every treatment value equals the control median")
    law = mathisen_law(m, n, q)
    mean = n * q / (m + 1)
    var = n * q * (m - q + 1) * (m + 1 + n) / ((m + 1) ** 2 * (m + 2))
    z = standardize(v, mean, var)
    notes = [f"control median is order statistic {q} of {m} ({med:g})"]
    if n < t.size:
        notes.append(f"{t.size - n} treatment value(s) equal to the control median dropped")
    return TestOutcome(
        "Control median test",
        {"V": v, "m": m, "n": n, "Z": z},
        alt,
        **exact_tails(law, v),
        **normal_tails(z),
        notes=notes,
    )


def ecdf_gaps(x: np.ndarray, y: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Scaled ECDF differences m*n*(F_x - F_y) at every distinct pooled value.

    Returns ``(gaps, i, j)`` with i, j the sample counts at or below each value.
    """
    m, n = x.size, y.size
    grid = np.unique(np.concatenate([x, y]))
    i = np.searchsorted(np.sort(x), grid, side="right")
    j = np.searchsorted(np.sort(y), grid, side="right")
    return i * n - j * m, i, j


def ks_two_sample(x, y, alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Two-sample Kolmogorov-Smirnov test.

    Dn+ = sup(F_x - F_y), Dn- = sup(F_y - F_x), Dn = max of both.  Exact
    p-values count lattice paths through the pooled ordering (conditional on
    ties) when m*n <= 10^4.
    """
    alt = check_alternative(alternative, DIRECTIONAL, "Kolmogorov-Smirnov two-sample")
    x, y = _samples(x, y)
    m, n = x.size, y.size
    gaps, i, j = ecdf_gaps(x, y)
    cp, cm = max(0, int(gaps.max())), max(0, int(-gaps.min()))
    c = max(cp, cm)
    mn = m * n
    dp, dm, d = cp / mn, cm / mn, c / mn
    en = math.sqrt(mn / (m + n))
    fields = {
        "asymptotic_left_p": smirnov_limit_sf(en * dm),
        "asymptotic_right_p": smirnov_limit_sf(en * dp),
        "asymptotic_double_p": kolmogorov_limit_sf(en * d),
    }
    notes = []
    if mn <= KS_EXACT_MAX_MN:
        checkpoints = frozenset((i + j).tolist()) if has_ties(np.concatenate([x, y])) else None
        total = math.comb(m + n, m)

        def tail(threshold, kind):
            return (total - ks_paths_within(m, n, threshold, kind, checkpoints)) / total

        fields.update(
            exact_left_p=tail(cm, "minus"),
            exact_right_p=tail(cp, "plus"),
            exact_double_p=tail(c, "two"),
        )
        if checkpoints is not None:
            notes.append("exact law conditional on the pooled tie pattern")
    else:
        notes.append(f"m*n = {mn} exceeds {KS_EXACT_MAX_MN}: asymptotic p-values only")
    return TestOutcome(
        "Kolmogorov-Smirnov two-sample",
        {"Dn": d, "Dn+": dp, "Dn-": dm},
        alt,
        **fields,
        double_rule=TWO_SIDED_STATISTIC,
        notes=notes,
    )


# ----------------------------------------------------------------- location


def _shift_interval(x, y, confidence: float, exact_ok: bool):
    m, n = x.size, y.size
    diffs = np.sort(np.subtract.outer(y, x).ravel())
    alpha = 1.0 - confidence
    k = None
    method = "exact"
    if exact_ok:
        try:
            law = mann_whitney_law(m, n)
        except UnsupportedExactError:
            exact_ok = False
        else:
            # largest k with P(U <= k - 1) <= alpha/2
            k = 0
            while law.cdf(k) <= alpha / 2:
                k += 1
            achieved = 1 - 2 * law.cdf(k - 1) if k >= 1 else None
    if not exact_ok:
        method = "asymptotic"
        sd = math.sqrt(m * n * (m + n + 1) / 12)
        k = int(math.floor(m * n / 2 - norm_ppf(1 - alpha / 2) * sd))
        achieved = None
        if k >= 1:
            achieved = 1 - 2 * float(special.ndtr((k - 0.5 - m * n / 2) / sd))
    hl = float(np.median(diffs))
    if k is None or k < 1:
        return {"hodges_lehmann": hl, "interval_method": f"{method}; level {confidence:g} unattainable"}
    return {
        "hodges_lehmann": hl,
        "shift_interval": (float(diffs[k - 1]), float(diffs[m * n - k])),
        "interval_confidence": achieved,
        "interval_method": method,
    }


def wilcoxon_rank_sum(x, y, alternative=Alternative.TWO_SIDED, confidence: float | None = None) -> TestOutcome:
    """Wilcoxon rank-sum (Mann-Whitney) test.

    W is the midrank sum of sample 2; U = W - n(n+1)/2 counts pairs with
    x < y (ties one half).  Large W (right tail) means sample 2 is shifted
    upwards.  With ``confidence`` the outcome also carries an interval for the
    shift of sample 2 relative to sample 1 and the Hodges-Lehmann estimate.
    """
    alt = check_alternative(alternative, DIRECTIONAL, "Wilcoxon rank-sum")
    x, y = _samples(x, y)
    m, n = x.size, y.size
    N = m + n
    pooled = np.concatenate([x, y])
    r2 = doubled_midranks(pooled)
    w = float(np.sum(r2[m:])) / 2
    u = w - n * (n + 1) / 2
    var = m * n * (N + 1) / 12 - m * n * tie_term(pooled) / (12 * N * (N - 1)) if N > 1 else 0.0
    z = standardize(w, n * (N + 1) / 2, var)
    fields = normal_tails(z)
    notes = []
    tied = has_ties(pooled)
    if not tied:
        try:
            fields.update(exact_tails(rank_sum_law(m, n), w))
        except UnsupportedExactError:
            notes.append("exact law out of budget: asymptotic p-values only")
    elif N <= LINEAR_RANK_EXACT_MAX_N:
        fields.update(exact_tails(rank_sum_law_tied(tuple(sorted(r2.tolist())), n), w))
        notes.append("exact law conditional on the pooled midranks")
    else:
        notes.append(f"ties with m+n > {LINEAR_RANK_EXACT_MAX_N}: asymptotic p-values only")
    extras = {}
    if confidence is not None:
        if not 0 < confidence < 1:
            raise DomainError(f"confidence must lie in (0, 1), got {confidence!r}")
        extras = _shift_interval(x, y, confidence, exact_ok=not tied)
        notes.append(f"shift interval uses {extras['interval_method']} critical values")
    return TestOutcome(
        "Wilcoxon rank-sum",
        {"W": w, "U": u, "Z": z},
        alt,
        **fields,
        notes=notes,
        extras=extras,
    )


def _linear_rank_outcome(name, x, y, position_scores: np.ndarray, alt, extras=None, notes=()) -> TestOutcome:
    """Linear rank test with scores for pooled positions 1..N (ties averaged by caller)."""
    m, n = x.size, y.size
    N = m + n
    pooled = np.concatenate([x, y])
    a = _tie_averaged(pooled, position_scores)
    stat = float(np.sum(a[m:]))
    abar = float(np.mean(a))
    var = m * n / (N * (N - 1)) * float(np.sum((a - abar) ** 2)) if N > 1 else 0.0
    z = standardize(stat, n * abar, var)
    fields = normal_tails(z)
    notes = list(notes)
    if N <= LINEAR_RANK_EXACT_MAX_N:
        law = linear_rank_law(tuple(sorted(np.round(a, 12).tolist())), n)
        fields.update(exact_tails(law, stat))
    else:
        notes.append(f"exact law by enumeration only for m+n <= {LINEAR_RANK_EXACT_MAX_N}")
    return TestOutcome(name, {"T": stat, "Z": z}, alt, **fields, notes=notes, extras=extras or {})


def _tie_averaged(pooled: np.ndarray, position_scores: np.ndarray) -> np.ndarray:
    """Score of each pooled observation, averaged over its tie group."""
    order = np.argsort(pooled, kind="stable")
    sorted_vals = pooled[order]
    per_pos = np.asarray(position_scores, dtype=float).copy()
    _, start, counts = np.unique(sorted_vals, return_index=True, return_counts=True)
    for s, c in zip(start, counts):
        if c > 1:
            per_pos[s : s + c] = per_pos[s : s + c].mean()
    out = np.empty_like(per_pos)
    out[order] = per_pos
    return out


def van_der_waerden(x, y, alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Normal-scores test: sum over sample 2 of inverse-normal scores of midranks / (N+1)."""
    alt = check_alternative(alternative, DIRECTIONAL, "van der Waerden")
    x, y = _samples(x, y)
    N = x.size + y.size
    if N < 2:
        raise DataError("van der Waerden test needs at least 2 values")
    pooled = np.concatenate([x, y])
    scores = special.ndtri(midranks(pooled) / (N + 1))
    # scores already reflect midranks, so feed them in sorted pooled order
    per_pos = np.sort(scores)
    return _linear_rank_outcome("van der Waerden", x, y, per_pos, alt)


# -------------------------------------------------------------------- scale


def siegel_tukey_scores(N: int) -> np.ndarray:
    """Siegel-Tukey scores by position: 1 to the smallest, 2 and 3 to the two largest, 4 and 5 next..."""
    out = np.zeros(N)
    lo, hi = 0, N - 1
    for s in range(1, N + 1):
        if (s // 2) % 2 == 0:
            out[lo] = s
            lo += 1
        else:
            out[hi] = s
            hi -= 1
    return out


def scale_scores(variant: str, N: int) -> np.ndarray:
    """Score a(i) for positions i = 1..N under a linear-rank scale variant."""
    i = np.arange(1, N + 1, dtype=float)
    if variant == "david_barton":
        return N // 2 + 1 - np.minimum(i, N + 1 - i)
    if variant == "freund_ansari_bradley":
        return np.minimum(i, N + 1 - i)
    if variant == "mood":
        return (i - (N + 1) / 2) ** 2
    if variant == "klotz":
        return special.ndtri(i / (N + 1)) ** 2
    if variant == "siegel_tukey":
        return siegel_tukey_scores(N)
    raise DomainError(f"unknown scale variant {variant!r}; expected one of {SCALE_VARIANTS}")


_SCALE_NAMES = {
    "david_barton": "David-Barton",
    "freund_ansari_bradley": "Freund-Ansari-Bradley",
    "mood": "Mood",
    "klotz": "Klotz",
    "siegel_tukey": "Siegel-Tukey",
    "sukhatme": "Sukhatme",
}


def _sukhatme(x, y, alt) -> TestOutcome:
    xc = x - np.median(x)
    yc = y - np.median(y)
    notes = ["observations equal to their own sample median dropped"]
    total = 0.0
    sides = []
    tied = False
    for sign in (-1, 1):
        a = np.abs(xc[np.sign(xc) == sign])
        b = np.abs(yc[np.sign(yc) == sign])
        # pairs on this side where the sample-1 deviation is the smaller one
        diff = np.subtract.outer(b, a)
        total += float(np.sum(diff > 0) + 0.5 * np.sum(diff == 0))
        tied = tied or has_ties(np.concatenate([a, b]))
        sides.append((a.size, b.size))
    mean = sum(p * q for p, q in sides) / 2
    var = sum(p * q * (p + q + 1) for p, q in sides) / 12
    z = standardize(total, mean, var)
    fields = normal_tails(z)
    if not tied:
        counts = {0: 1}
        for p, q in sides:
            if p and q:
                mw = mann_whitney_law(p, q)
                new = {}
                for s, cs in counts.items():
                    for v, cv in zip(mw.support, mw.counts):
                        new[s + v] = new.get(s + v, 0) + cs * cv
                counts = new
        law = law_from_counts("sukhatme_T", tuple(sides), counts)
        fields.update(exact_tails(law, total))
        notes.append("exact law conditional on the numbers of values on each side of the medians")
    else:
        notes.append("tied deviations: asymptotic p-values only")
    return TestOutcome(
        "Sukhatme", {"T": total, "Z": z}, alt, **fields, notes=notes,
        extras={"side_sizes": tuple(sides)},
    )


def scale_test(x, y, variant: str = "mood", alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Two-sample scale test.

    ``variant`` picks the statistic; all but Sukhatme's are linear rank
    statistics sum a(rank of y_j) whose score functions are listed in
    :func:`scale_scores`.  For Mood, Klotz, David-Barton and Sukhatme large
    values mean sample 2 is more dispersed; for Freund-Ansari-Bradley and
    Siegel-Tukey small values do.
    """
    variant = str(variant).lower()
    if variant not in SCALE_VARIANTS:
        raise DomainError(f"unknown scale variant {variant!r}; expected one of {SCALE_VARIANTS}")
    name = _SCALE_NAMES[variant]
    alt = check_alternative(alternative, DIRECTIONAL, name)
    x, y = _samples(x, y, 2)
    if variant == "sukhatme":
        return _sukhatme(x, y, alt)
    N = x.size + y.size
    scores = scale_scores(variant, N)
    notes = ["tied observations receive the average of their positions' scores"] if has_ties(np.concatenate([x, y])) else []
    return _linear_rank_outcome(
        name, x, y, scores, alt, extras={"scores": tuple(float(s) for s in scores)}, notes=notes
    )


__all__ = [
    "wald_wolfowitz",
    "median_test",
    "control_median_test",
    "ks_two_sample",
    "wilcoxon_rank_sum",
    "van_der_waerden",
    "scale_test",
    "scale_scores",
    "siegel_tukey_scores",
    "SCALE_VARIANTS",
]
