"""Exact null distributions of test statistics.

Every law is a table of integer counts over the support of the statistic,
computed at run time and memoised.  Counts come from closed forms, integer
dynamic programming (subset sums, lattice paths, column-sum convolutions) or,
for permutation statistics without a usable recursion, from enumerating all
permutations.  Statistics on half-integer or quarter-integer lattices (midranks,
squared deviations) are handled on a doubled integer scale and rescaled at the
end, so no count ever depends on floating point comparisons.
"""

from __future__ import annotations

import itertools
import math
from bisect import bisect_left, bisect_right
from collections import Counter, defaultdict
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from ..core import DomainError, UnsupportedExactError

# Budgets (see module docstring of each builder).
ENUMERATION_LIMIT = 20_000_000  # arrangements visited by brute-force enumeration
DP_LIMIT = 50_000_000  # integer cell updates in a dynamic programme
STATE_LIMIT = 2_000_000  # live states in a dictionary-based programme
PERMUTATION_MAX_N = 10  # largest n for full permutation enumeration

_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class ExactNullDistribution:
    """Discrete law given by integer counts over an ordered support.

    Parameters
    ----------
    family : str
        Statistic identifier (``"signed_rank_sum"``, ``"rank_sum"``...).
    parameters : tuple
        Sample-size tuple (or tie-structure key) the law belongs to.
    support : tuple
        Strictly increasing statistic values.
    counts : tuple of int
        Number of equiprobable arrangements giving each support value.
    """

    family: str
    parameters: tuple
    support: tuple
    counts: tuple

    def __post_init__(self):
        if len(self.support) != len(self.counts) or not self.support:
            raise ValueError("support and counts must be non-empty and of equal length")
        keys = [float(v) for v in self.support]
        if any(b <= a for a, b in zip(keys, keys[1:])):
            raise ValueError("support must be strictly increasing")
        if any(int(c) != c or c < 0 for c in self.counts):
            raise ValueError("counts must be nonnegative integers")
        cum = list(itertools.accumulate(int(c) for c in self.counts))
        if cum[-1] <= 0:
            raise ValueError("a law needs positive total weight")
        object.__setattr__(self, "_keys", keys)
        object.__setattr__(self, "_cum", cum)

    @property
    def total(self) -> int:
        """Number of equiprobable arrangements."""
        return self._cum[-1]

    def _slack(self, x: float) -> float:
        return _TOL * max(1.0, abs(x))

    def count_le(self, x: float) -> int:
        i = bisect_right(self._keys, x + self._slack(x))
        return self._cum[i - 1] if i else 0

    def count_ge(self, x: float) -> int:
        i = bisect_left(self._keys, x - self._slack(x))
        return self.total - (self._cum[i - 1] if i else 0)

    def cdf(self, x: float) -> float:
        """P(S <= x)."""
        return self.count_le(x) / self.total

    left_tail = cdf

    def right_tail(self, x: float) -> float:
        """P(S >= x)."""
        return self.count_ge(x) / self.total

    def pmf(self, x: float) -> float:
        i = bisect_left(self._keys, x - self._slack(x))
        if i < len(self._keys) and abs(self._keys[i] - x) <= self._slack(x):
            return int(self.counts[i]) / self.total
        return 0.0

    def probabilities(self) -> np.ndarray:
        return np.array([int(c) / self.total for c in self.counts])

    def mean(self) -> float:
        return float(sum(Fraction(v) * int(c) for v, c in zip(self.support, self.counts)) / self.total)

    def variance(self) -> float:
        m = sum(Fraction(v) * int(c) for v, c in zip(self.support, self.counts)) / self.total
        s2 = sum(Fraction(v) ** 2 * int(c) for v, c in zip(self.support, self.counts)) / self.total
        return float(s2 - m * m)

    def tails(self, x: float) -> tuple[float, float]:
        return self.left_tail(x), self.right_tail(x)

    def __repr__(self) -> str:
        return (
            f"ExactNullDistribution({self.family!r}, {self.parameters!r}, "
            f"support={len(self.support)} values, total={self.total})"
        )


def law_from_counts(family: str, parameters: tuple, counts: dict, scale: int = 1) -> ExactNullDistribution:
    """Build a law from ``{integer value: count}``; support is ``value / scale``."""
    items = sorted((k, int(c)) for k, c in counts.items() if c)
    if scale == 1:
        support = tuple(int(k) if float(k).is_integer() else k for k, _ in items)
    else:
        support = tuple(k / scale for k, _ in items)
    return ExactNullDistribution(family, tuple(parameters), support, tuple(c for _, c in items))


def law_from_values(family: str, parameters: tuple, values: Iterable[float], weights=None, decimals: int = 9):
    """Build a law from (possibly repeated) float statistic values."""
    values = np.asarray(list(values) if not isinstance(values, np.ndarray) else values, dtype=float)
    keys = np.round(values, decimals)
    if weights is None:
        uniq, counts = np.unique(keys, return_counts=True)
        counts = [int(c) for c in counts]
    else:
        acc: dict[float, int] = defaultdict(int)
        for k, w in zip(keys.tolist(), weights):
            acc[k] += int(w)
        uniq = sorted(acc)
        counts = [acc[k] for k in uniq]
    return ExactNullDistribution(family, tuple(parameters), tuple(float(u) for u in uniq), tuple(counts))


def _comb(n: int, k: int) -> int:
    if k < 0 or n < 0 or k > n:
        return 0
    return math.comb(n, k)


def _check_budget(ops: float, limit: int, what: str):
    if ops > limit:
        raise UnsupportedExactError(f"exact law for {what} exceeds the computation budget ({ops:.3g} > {limit:.3g})")


# ---------------------------------------------------------------- subset sums


def subset_sum_counts(scores: Sequence[int], size: int | None = None) -> dict[int, int]:
    """Count subsets of ``scores`` (as a multiset of labelled items) by their sum.

    With ``size`` only subsets of exactly that many items are counted.
    """
    scores = [int(s) for s in scores]
    if any(s < 0 for s in scores):
        raise ValueError("scores must be nonnegative")
    total = sum(scores)
    if size is None:
        _check_budget(len(scores) * (total + 1), DP_LIMIT, "subset sums")
        dp = np.zeros(total + 1, dtype=object)
        dp[0] = 1
        for s in scores:
            if s == 0:
                dp = dp * 2
            else:
                dp[s:] = dp[s:] + dp[:-s]
        row = dp
    else:
        if size < 0 or size > len(scores):
            return {}
        _check_budget(len(scores) * (size + 1) * (total + 1), DP_LIMIT, "fixed-size subset sums")
        dp = np.zeros((size + 1, total + 1), dtype=object)
        dp[0, 0] = 1
        for s in scores:
            if s == 0:
                dp[1:] = dp[1:] + dp[:-1]
            else:
                dp[1:, s:] = dp[1:, s:] + dp[:-1, :-s]
        row = dp[size]
    return {v: int(c) for v, c in enumerate(row) if c}


@lru_cache(maxsize=256)
def signed_rank_law(n: int) -> ExactNullDistribution:
    """Law of W+ (sum of ranks with positive sign) for n untied differences."""
    if n < 1:
        raise DomainError("signed-rank law needs n >= 1")
    return law_from_counts("signed_rank_sum", (n,), subset_sum_counts(range(1, n + 1)))


@lru_cache(maxsize=256)
def signed_rank_law_tied(doubled_ranks: tuple[int, ...]) -> ExactNullDistribution:
    """Conditional law of W+ given the (doubled) midranks of |d|."""
    counts = subset_sum_counts(doubled_ranks)
    return law_from_counts("signed_rank_sum", doubled_ranks, counts, scale=2)


@lru_cache(maxsize=256)
def rank_sum_law(m: int, n: int) -> ExactNullDistribution:
    """Law of the rank sum W of the second sample (size n) among m + n untied values."""
    if m < 1 or n < 1:
        raise DomainError("rank-sum law needs m, n >= 1")
    N = m + n
    k = min(m, n)
    counts = subset_sum_counts(range(1, N + 1), k)
    if k != n:
        full = N * (N + 1) // 2
        counts = {full - v: c for v, c in counts.items()}
    return law_from_counts("rank_sum", (m, n), counts)


@lru_cache(maxsize=256)
def mann_whitney_law(m: int, n: int) -> ExactNullDistribution:
    """Law of U = W - n(n+1)/2, the count of (x, y) pairs with x < y."""
    base = rank_sum_law(m, n)
    shift = n * (n + 1) // 2
    return ExactNullDistribution("mann_whitney_U", (m, n), tuple(v - shift for v in base.support), base.counts)


@lru_cache(maxsize=256)
def rank_sum_law_tied(doubled_scores: tuple[int, ...], n: int) -> ExactNullDistribution:
    """Law of the sum over an n-subset of the given (doubled) midranks."""
    N = len(doubled_scores)
    k = min(n, N - n)
    counts = subset_sum_counts(doubled_scores, k)
    if k != n:
        full = sum(doubled_scores)
        counts = {full - v: c for v, c in counts.items()}
    return law_from_counts("rank_sum", (doubled_scores, n), counts, scale=2)


@lru_cache(maxsize=256)
def linear_rank_law(scores: tuple[float, ...], n: int) -> ExactNullDistribution:
    """Law of sum of ``scores`` over a random n-subset, by enumeration.

    ``scores`` are arbitrary reals (one per position of the pooled sample).
    """
    N = len(scores)
    _check_budget(_comb(N, n), ENUMERATION_LIMIT, f"linear rank statistic N={N}, n={n}")
    arr = np.asarray(scores, dtype=float)
    idx = np.array(list(itertools.combinations(range(N), n)), dtype=np.int64).reshape(-1, n)
    sums = arr[idx].sum(axis=1) if n else np.zeros(1)
    return law_from_values("linear_rank", (scores, n), sums)


# ---------------------------------------------------------------------- runs


@lru_cache(maxsize=256)
def runs_law(n1: int, n2: int) -> ExactNullDistribution:
    """Law of the number of runs in a random arrangement of n1 X's and n2 Y's."""
    if n1 < 1 or n2 < 1:
        raise DomainError("runs law needs n1, n2 >= 1")
    counts = {}
    for r in range(2, n1 + n2 + 1):
        if r % 2 == 0:
            k = r // 2
            c = 2 * _comb(n1 - 1, k - 1) * _comb(n2 - 1, k - 1)
        else:
            k = (r - 1) // 2
            c = _comb(n1 - 1, k) * _comb(n2 - 1, k - 1) + _comb(n1 - 1, k - 1) * _comb(n2 - 1, k)
        if c:
            counts[r] = c
    return law_from_counts("runs_count", (n1, n2), counts)


@lru_cache(maxsize=256)
def up_down_runs_law(n: int) -> ExactNullDistribution:
    """Law of the number of runs up and down in a random permutation of n values.

    Uses the recursion f(n, r) = r f(n-1, r) + 2 f(n-1, r-1) + (n-r) f(n-1, r-2).
    """
    if n < 2:
        raise DomainError("runs up and down need n >= 2")
    _check_budget(n * n, DP_LIMIT, "runs up and down")
    f = {1: 2}
    for size in range(3, n + 1):
        g = {}
        for r in range(1, size):
            v = r * f.get(r, 0) + 2 * f.get(r - 1, 0) + (size - r) * f.get(r - 2, 0)
            if v:
                g[r] = v
        f = g
    return law_from_counts("runs_up_down", (n,), f)


# -------------------------------------------------------------- permutations


@lru_cache(maxsize=2)
def permutations_array(n: int) -> np.ndarray:
    """All n! permutations of 0..n-1 as rows (read-only int8 array)."""
    if n > PERMUTATION_MAX_N:
        raise UnsupportedExactError(f"full permutation enumeration limited to n <= {PERMUTATION_MAX_N}")
    perms = np.zeros((1, 0), dtype=np.int8)
    for k in range(n):
        m = perms.shape[0]
        new = np.empty((m * (k + 1), k + 1), dtype=np.int8)
        for pos in range(k + 1):
            block = new[pos * m : (pos + 1) * m]
            block[:, :pos] = perms[:, :pos]
            block[:, pos] = k
            block[:, pos + 1 :] = perms[:, pos:]
        perms = new
    perms.setflags(write=False)
    return perms


def _adjacent_square_sums(values: np.ndarray, perms: np.ndarray) -> np.ndarray:
    out = np.zeros(perms.shape[0], dtype=np.int64)
    for i in range(perms.shape[1] - 1):
        d = values[perms[:, i + 1]] - values[perms[:, i]]
        out += d * d
    return out


@lru_cache(maxsize=64)
def von_neumann_law(doubled_ranks: tuple[int, ...]) -> ExactNullDistribution:
    """Permutation law of NM = sum of squared successive rank differences.

    ``doubled_ranks`` are twice the (mid)ranks of the observed sequence.
    """
    n = len(doubled_ranks)
    perms = permutations_array(n)
    sums4 = _adjacent_square_sums(np.asarray(doubled_ranks, dtype=np.int64), perms)
    vals, counts = np.unique(sums4, return_counts=True)
    return law_from_counts("von_neumann_NM", (n,), dict(zip(vals.tolist(), counts.tolist())), scale=4)


@lru_cache(maxsize=64)
def spearman_law(x_doubled: tuple[int, ...], y_doubled: tuple[int, ...]) -> ExactNullDistribution:
    """Permutation law of S = sum (rank_x - rank_y)^2, y ranks permuted."""
    n = len(x_doubled)
    perms = permutations_array(n)
    x = np.asarray(x_doubled, dtype=np.int64)
    y = np.asarray(y_doubled, dtype=np.int64)
    s4 = np.zeros(perms.shape[0], dtype=np.int64)
    for i in range(n):
        d = x[i] - y[perms[:, i]]
        s4 += d * d
    vals, counts = np.unique(s4, return_counts=True)
    return law_from_counts("spearman_S", (n,), dict(zip(vals.tolist(), counts.tolist())), scale=4)


@lru_cache(maxsize=256)
def kendall_law(n: int) -> ExactNullDistribution:
    """Law of Kendall's T = concordant - discordant pairs for n untied pairs."""
    if n < 2:
        raise DomainError("Kendall law needs n >= 2")
    n0 = n * (n - 1) // 2
    _check_budget(n * n0, DP_LIMIT, "Kendall T")
    inv = [1]
    for i in range(2, n + 1):
        new = [0] * (len(inv) + i - 1)
        for j, c in enumerate(inv):
            if c:
                for shift in range(i):
                    new[j + shift] += c
        inv = new
    counts = {n0 - 2 * k: c for k, c in enumerate(inv) if c}
    return law_from_counts("kendall_T", (n,), counts)


@lru_cache(maxsize=64)
def kendall_law_tied(x: tuple[float, ...], y: tuple[float, ...]) -> ExactNullDistribution:
    """Permutation law of T with y permuted against fixed x (ties allowed)."""
    n = len(x)
    perms = permutations_array(n)
    xa = np.asarray(x, dtype=float)
    ya = np.asarray(y, dtype=float)
    T = np.zeros(perms.shape[0], dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            sx = int(np.sign(xa[j] - xa[i]))
            if sx:
                T += sx * np.sign(ya[perms[:, j]] - ya[perms[:, i]]).astype(np.int64)
    vals, counts = np.unique(T, return_counts=True)
    return law_from_counts("kendall_T", (n,), dict(zip(vals.tolist(), counts.tolist())))


# ------------------------------------------------------------- block designs


def _canonical_blocks(blocks) -> tuple[tuple[int, ...], ...]:
    return tuple(sorted(tuple(sorted(int(v) for v in b)) for b in blocks))


@lru_cache(maxsize=64)
def block_column_sums(blocks: tuple[tuple[int, ...], ...]) -> dict[tuple[int, ...], int]:
    """Distribution of column sums when each block's values are permuted at random.

    ``blocks`` holds the (doubled) within-block ranks; every one of the
    prod(k!) configurations is equiprobable.
    """
    k = len(blocks[0])
    states: dict[tuple[int, ...], int] = {(0,) * k: 1}
    perm_cache: dict[tuple[int, ...], Counter] = {}
    for block in blocks:
        if block not in perm_cache:
            perm_cache[block] = Counter(itertools.permutations(block))
        perms = perm_cache[block]
        _check_budget(len(states) * len(perms), DP_LIMIT // 10, "block configuration programme")
        new: dict[tuple[int, ...], int] = defaultdict(int)
        for state, c in states.items():
            for perm, w in perms.items():
                new[tuple(map(int.__add__, state, perm))] += c * w
        states = new
        if len(states) > STATE_LIMIT:
            raise UnsupportedExactError("block configuration programme exceeds the state budget")
    return dict(states)


def friedman_laws(blocks):
    """Exact laws of Friedman's S and Page's L for the given doubled block ranks.

    Returns ``(S_law, L_law)`` where S = sum_j (R_j - n(k+1)/2)^2 and
    L = sum_j j R_j with R_j the column rank sums.
    """
    return _friedman_laws(_canonical_blocks(blocks))


@lru_cache(maxsize=64)
def _friedman_laws(blocks: tuple[tuple[int, ...], ...]):
    n, k = len(blocks), len(blocks[0])
    sums = block_column_sums(blocks)
    center2 = n * (k + 1)  # doubled expected column sum
    s4: dict[int, int] = defaultdict(int)
    l2: dict[int, int] = defaultdict(int)
    for state, c in sums.items():
        s4[sum((r - center2) ** 2 for r in state)] += c
        l2[sum((j + 1) * r for j, r in enumerate(state))] += c
    return (
        law_from_counts("friedman_S", (n, k), s4, scale=4),
        law_from_counts("page_L", (n, k), l2, scale=2),
    )


# ---------------------------------------------------------- k-sample layouts


def _bounded_compositions(t: int, caps: Sequence[int]):
    """Compositions of t into len(caps) parts with part j <= caps[j]."""
    if not caps:
        if t == 0:
            yield ()
        return
    head, rest = caps[0], caps[1:]
    room = sum(rest)
    for c in range(max(0, t - room), min(head, t) + 1):
        for tail in _bounded_compositions(t - c, rest):
            yield (c,) + tail


def _multinomial(t: int, parts: Sequence[int]) -> int:
    out = math.factorial(t)
    for p in parts:
        out //= math.factorial(p)
    return out


@lru_cache(maxsize=64)
def label_rank_sums(tie_groups: tuple[int, ...], sizes: tuple[int, ...]) -> dict[tuple[int, ...], int]:
    """Distribution of per-sample doubled midrank sums over all label assignments.

    ``tie_groups`` lists the sizes of the groups of equal pooled values in
    increasing order; ``sizes`` the sample sizes.  All N!/prod(n_j!)
    assignments of sample labels to pooled positions are equiprobable.
    """
    k = len(sizes)
    states: dict[tuple, int] = {((0,) * k, (0,) * k): 1}
    pos = 1
    for t in tie_groups:
        r2 = 2 * pos + t - 1
        new: dict[tuple, int] = defaultdict(int)
        for (used, sums), c in states.items():
            caps = [sizes[j] - used[j] for j in range(k)]
            for comp in _bounded_compositions(t, caps):
                w = _multinomial(t, comp)
                key = (
                    tuple(u + x for u, x in zip(used, comp)),
                    tuple(s + x * r2 for s, x in zip(sums, comp)),
                )
                new[key] += c * w
        states = new
        if len(states) > STATE_LIMIT:
            raise UnsupportedExactError("k-sample rank-sum programme exceeds the state budget")
        pos += t
    return {sums: c for (_, sums), c in states.items()}


def kruskal_wallis_h(doubled_sums: Sequence[int], sizes: Sequence[int], tie_correction: float = 1.0) -> float:
    """H from doubled rank sums; shared by the exact law and the observed statistic."""
    N = sum(sizes)
    q = sum(Fraction(r * r, n) for r, n in zip(doubled_sums, sizes)) / 4
    h = Fraction(12, N * (N + 1)) * q - 3 * (N + 1)
    return float(h) / tie_correction


@lru_cache(maxsize=64)
def kruskal_wallis_law(tie_groups: tuple[int, ...], sizes: tuple[int, ...]) -> ExactNullDistribution:
    N = sum(sizes)
    t = np.asarray(tie_groups, dtype=float)
    corr = 1.0 - float(np.sum(t**3 - t)) / (N**3 - N)
    dist = label_rank_sums(tie_groups, sizes)
    values, weights = [], []
    for sums, c in dist.items():
        values.append(kruskal_wallis_h(sums, sizes, corr))
        weights.append(c)
    return law_from_values("kruskal_wallis_H", sizes, values, weights)


@lru_cache(maxsize=64)
def jonckheere_law(sizes: tuple[int, ...]) -> ExactNullDistribution:
    """Law of the Jonckheere-Terpstra B for untied data.

    The generating function is a q-multinomial coefficient, i.e. the product
    of Mann-Whitney generating functions for sizes (n_1+...+n_{j-1}, n_j).
    """
    counts = {0: 1}
    before = sizes[0]
    for nj in sizes[1:]:
        mw = mann_whitney_law(before, nj)
        new: dict[int, int] = defaultdict(int)
        for a, ca in counts.items():
            for b, cb in zip(mw.support, mw.counts):
                new[a + b] += ca * cb
        counts = new
        before += nj
    return law_from_counts("jonckheere_B", sizes, counts)


@lru_cache(maxsize=64)
def jonckheere_law_tied(tie_groups: tuple[int, ...], sizes: tuple[int, ...]) -> ExactNullDistribution:
    """Law of B (ties counted one half) given the pooled tie structure."""
    k = len(sizes)
    # state: labels used so far -> {2B: count}
    states: dict[tuple[int, ...], dict[int, int]] = {(0,) * k: {0: 1}}
    for t in tie_groups:
        new: dict[tuple[int, ...], dict[int, int]] = defaultdict(lambda: defaultdict(int))
        for used, dist in states.items():
            caps = [sizes[j] - used[j] for j in range(k)]
            for comp in _bounded_compositions(t, caps):
                w = _multinomial(t, comp)
                add = 0
                below = 0
                for j in range(k):
                    add += 2 * comp[j] * below
                    below += used[j]
                for i in range(k):
                    for j in range(i + 1, k):
                        add += comp[i] * comp[j]
                target = new[tuple(u + x for u, x in zip(used, comp))]
                for b2, c in dist.items():
                    target[b2 + add] += c * w
        states = new
        if sum(len(d) for d in states.values()) > STATE_LIMIT:
            raise UnsupportedExactError("Jonckheere programme exceeds the state budget")
    (final,) = states.values()
    return law_from_counts("jonckheere_B", sizes, final, scale=2)


@lru_cache(maxsize=256)
def mathisen_law(m: int, n: int, q: int | None = None) -> ExactNullDistribution:
    """Law of V = number of n treatment values below the q-th control order statistic.

    Defaults to q = ceil(m / 2), the (lower) control median.
    """
    if m < 1 or n < 1:
        raise DomainError("control median law needs m, n >= 1")
    if q is None:
        q = (m + 1) // 2
    counts = {v: _comb(v + q - 1, v) * _comb(n - v + m - q, n - v) for v in range(n + 1)}
    return law_from_counts("mathisen_V", (m, n, q), counts)


@lru_cache(maxsize=256)
def binomial_half_law(n: int) -> ExactNullDistribution:
    """Law of the number of successes in n fair trials."""
    if n < 1:
        raise DomainError("binomial law needs n >= 1")
    return law_from_counts("binomial_half", (n,), {k: math.comb(n, k) for k in range(n + 1)})


def hypergeometric_counts(row1: int, row2: int, col1: int) -> dict[int, int]:
    """Counts of tables with top-left cell a, margins fixed (total C(N, col1))."""
    lo, hi = max(0, col1 - row2), min(row1, col1)
    return {a: math.comb(row1, a) * math.comb(row2, col1 - a) for a in range(lo, hi + 1)}


@lru_cache(maxsize=256)
def hypergeometric_law(row1: int, row2: int, col1: int) -> ExactNullDistribution:
    return law_from_counts("hypergeometric", (row1, row2, col1), hypergeometric_counts(row1, row2, col1))


# ------------------------------------------------------ two-sample KS paths


def ks_paths_within(m: int, n: int, c: int, kind: str = "two", checkpoints: frozenset | None = None) -> int:
    """Monotone lattice paths (0,0)->(m,n) whose scaled ECDF gap stays below ``c``.

    At lattice point (i, j) the gap is ``i*n - j*m`` (= mn(F_x - F_y)).
    ``kind`` selects |gap| (``"two"``), gap (``"plus"``) or -gap
    (``"minus"``).  With ``checkpoints`` the constraint is only enforced where
    ``i + j`` is in the set (ends of groups of tied pooled values).
    """
    _check_budget(m * n, 10**7, "two-sample Kolmogorov-Smirnov paths")

    def bad(i, j):
        if checkpoints is not None and (i + j) not in checkpoints:
            return False
        g = i * n - j * m
        if kind == "two":
            return abs(g) >= c
        if kind == "plus":
            return g >= c
        return -g >= c

    prev = [0] * (n + 1)
    for i in range(m + 1):
        row = [0] * (n + 1)
        for j in range(n + 1):
            if i == 0 and j == 0:
                v = 1
            else:
                v = (prev[j] if i else 0) + (row[j - 1] if j else 0)
            row[j] = 0 if bad(i, j) else v
        prev = row
    return prev[n]


@lru_cache(maxsize=64)
def ks_two_sample_law(m: int, n: int) -> ExactNullDistribution:
    """Law of D_mn (two-sided) for untied samples, support in units of 1/(mn)."""
    _check_budget((m * n) ** 2, DP_LIMIT // 10, "two-sample Kolmogorov-Smirnov law")
    total = math.comb(m + n, m)
    gaps = sorted({abs(i * n - j * m) for i in range(m + 1) for j in range(n + 1)})
    cum = {}
    for g in gaps:
        cum[g] = ks_paths_within(m, n, g + 1)  # P(D*mn <= g)
    counts, prev = {}, 0
    for g in gaps:
        if cum[g] - prev:
            counts[g] = cum[g] - prev
        prev = cum[g]
    assert prev == total
    law = law_from_counts("ks_two_sample_D", (m, n), counts, scale=1)
    return ExactNullDistribution(
        "ks_two_sample_D", (m, n), tuple(v / (m * n) for v in law.support), law.counts
    )


# ------------------------------------------------------------------ registry

_FAMILIES: dict[str, Callable[..., ExactNullDistribution]] = {
    "signed_rank_sum": signed_rank_law,
    "rank_sum": rank_sum_law,
    "mann_whitney_U": mann_whitney_law,
    "runs_count": runs_law,
    "runs_up_down": up_down_runs_law,
    "von_neumann_NM": lambda n: von_neumann_law(tuple(range(2, 2 * n + 1, 2))),
    "kendall_T": kendall_law,
    "spearman_S": lambda n: spearman_law(tuple(range(2, 2 * n + 1, 2)), tuple(range(2, 2 * n + 1, 2))),
    "friedman_S": lambda n, k: friedman_laws(((tuple(range(2, 2 * k + 1, 2)),) * n))[0],
    "page_L": lambda n, k: friedman_laws(((tuple(range(2, 2 * k + 1, 2)),) * n))[1],
    "jonckheere_B": lambda *sizes: jonckheere_law(tuple(sizes)),
    "kruskal_wallis_H": lambda *sizes: kruskal_wallis_law((1,) * sum(sizes), tuple(sizes)),
    "ks_two_sample_D": ks_two_sample_law,
    "mathisen_V": mathisen_law,
    "binomial_half": binomial_half_law,
}

FAMILIES = tuple(_FAMILIES)


def exact_distribution(statistic_family: str, parameters) -> ExactNullDistribution:
    """Exact null law of a test statistic for untied data.

    Parameters
    ----------
    statistic_family : str
        One of :data:`FAMILIES`.
    parameters : int or tuple of int
        Sample sizes, e.g. ``(n,)`` for ``signed_rank_sum``, ``(m, n)`` for
        ``rank_sum``, ``(n_blocks, k)`` for ``friedman_S``.

    Raises
    ------
    UnsupportedExactError
        The parameters exceed the computation budget.
    """
    try:
        builder = _FAMILIES[statistic_family]
    except KeyError:
        raise DomainError(f"unknown statistic family {statistic_family!r}") from None
    if isinstance(parameters, (int, np.integer)):
        parameters = (int(parameters),)
    params = tuple(int(p) for p in parameters)
    if any(p < 1 for p in params):
        raise DomainError(f"sample sizes must be positive, got {params}")
    try:
        return builder(*params)
    except TypeError:
        raise DomainError(f"wrong parameters {params} for {statistic_family!r}") from None
