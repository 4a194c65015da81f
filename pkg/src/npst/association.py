"""Bivariate association and multiple-classification (block design) tests."""

from __future__ import annotations

import itertools
import math
from collections import defaultdict
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from ._common import chi2_right, exact_tails, normal_tails, standardize
from ._ranks import doubled_midranks, has_ties, midranks, tie_sizes
from .core import (
    DIRECTIONAL,
    Alternative,
    DataError,
    DegenerateDataError,
    DesignError,
    TestOutcome,
    UnsupportedExactError,
    check_alternative,
    double_tail,
)
from .data import as_array, as_matrix
from .distributions.exact import (
    PERMUTATION_MAX_N,
    ExactNullDistribution,
    friedman_laws,
    kendall_law,
    kendall_law_tied,
    law_from_values,
    permutations_array,
    spearman_law,
)

KENDALL_TIED_MAX_N = 8
PARTIAL_EXACT_MAX_N = 7
ENUMERATION_CONFIGS = 1_000_000
# largest number of blocks for the column-sum programme, by number of treatments
FRIEDMAN_DP_MAX_BLOCKS = {2: 1000, 3: 60, 4: 12, 5: 4}


def _columns(table, k: int, name: str) -> list[np.ndarray]:
    m = as_matrix(table, name)
    if m.shape[1] != k:
        raise DataError(f"{name} needs exactly {k} columns, got {m.shape[1]}")
    return [m[:, j] for j in range(k)]


def _pair_signs(v: np.ndarray) -> np.ndarray:
    i, j = np.triu_indices(v.size, 1)
    return np.sign(v[j] - v[i]).astype(np.int64)


def _tie_pairs(v) -> float:
    t = tie_sizes(v).astype(float)
    return float(np.sum(t * (t - 1) / 2))


# ------------------------------------------------------------------ Kendall


def kendall_tau(x, y) -> tuple[float, float]:
    """(T, tau) with tau-b normalisation (equal to tau-a without ties)."""
    T = float(np.dot(_pair_signs(x), _pair_signs(y)))
    n0 = x.size * (x.size - 1) / 2
    denom = math.sqrt((n0 - _tie_pairs(x)) * (n0 - _tie_pairs(y)))
    if denom == 0:
        raise DegenerateDataError("a variable is constant")
    return T, T / denom


def kendall(table, alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Kendall rank correlation for a two-column table of pairs."""
    alt = check_alternative(alternative, DIRECTIONAL, "Kendall")
    x, y = _columns(table, 2, "Kendall data")
    n = x.size
    if n < 2:
        raise DataError("Kendall needs at least 2 pairs")
    T, tau = kendall_tau(x, y)
    tx, ty = tie_sizes(x).astype(float), tie_sizes(y).astype(float)
    var = (n * (n - 1) * (2 * n + 5) - np.sum(tx * (tx - 1) * (2 * tx + 5)) - np.sum(ty * (ty - 1) * (2 * ty + 5))) / 18
    if n > 2:
        var += np.sum(tx * (tx - 1) * (tx - 2)) * np.sum(ty * (ty - 1) * (ty - 2)) / (9 * n * (n - 1) * (n - 2))
    var += np.sum(tx * (tx - 1)) * np.sum(ty * (ty - 1)) / (2 * n * (n - 1))
    z = standardize(T, 0.0, float(var))
    fields = normal_tails(z)
    notes = []
    tied = has_ties(x) or has_ties(y)
    if not tied:
        try:
            fields.update(exact_tails(kendall_law(n), T))
        except UnsupportedExactError:
            notes.append("exact law out of budget")
    elif n <= KENDALL_TIED_MAX_N:
        law = kendall_law_tied(tuple(sorted(midranks(x).tolist())), tuple(sorted(midranks(y).tolist())))
        fields.update(exact_tails(law, T))
        notes.append("tau-b; exact law conditional on the tie pattern")
    else:
        notes.append(f"tau-b; ties with n > {KENDALL_TIED_MAX_N}: asymptotic p-values only")
    return TestOutcome("Kendall", {"T": T, "tau": tau, "Z": z}, alt, **fields, notes=notes)


# ----------------------------------------------------------------- Spearman


def _spearman(x: np.ndarray, y: np.ndarray, alt: Alternative, name: str, extra_notes=()) -> TestOutcome:
    n = x.size
    rx2, ry2 = doubled_midranks(x), doubled_midranks(y)
    if np.all(rx2 == rx2[0]) or np.all(ry2 == ry2[0]):
        raise DegenerateDataError("a variable is constant")
    S = float(np.sum((rx2 - ry2) ** 2)) / 4
    rx, ry = rx2 / 2.0, ry2 / 2.0
    if has_ties(x) or has_ties(y):
        R = float(np.corrcoef(rx, ry)[0, 1])
    else:
        R = 1.0 - 6.0 * S / (n**3 - n)
    z = R * math.sqrt(n - 1)
    fields = normal_tails(z)
    notes = list(extra_notes)
    if n <= PERMUTATION_MAX_N:
        law = spearman_law(tuple(sorted(rx2.tolist())), tuple(sorted(ry2.tolist())))
        # R decreases in S: the right tail of R is the left tail of S
        left, right = law.right_tail(S), law.left_tail(S)
        fields.update(exact_left_p=left, exact_right_p=right, exact_double_p=double_tail(left, right))
    else:
        notes.append(f"exact law by permutation enumeration only for n <= {PERMUTATION_MAX_N}")
    return TestOutcome(name, {"R": R, "S": S, "Z": z}, alt, **fields, notes=notes)


def spearman(table, alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Spearman rank correlation for a two-column table (S = sum of squared rank differences)."""
    alt = check_alternative(alternative, DIRECTIONAL, "Spearman")
    x, y = _columns(table, 2, "Spearman data")
    if x.size < 3:
        raise DataError("Spearman needs at least 3 pairs")
    return _spearman(x, y, alt, "Spearman")


def daniels_trend(sequence, alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Daniels trend test: Spearman correlation of the values with time 1..n."""
    alt = check_alternative(alternative, DIRECTIONAL, "Daniels trend")
    v = as_array(sequence, "sequence", 3)
    return _spearman(np.arange(1, v.size + 1, dtype=float), v, alt, "Daniels trend")


# ------------------------------------------------------------- block designs


def _block_ranks(m: np.ndarray) -> np.ndarray:
    return np.vstack([doubled_midranks(row) for row in m])


def friedman_exact_allowed(n: int, k: int) -> bool:
    return math.factorial(k) ** n <= ENUMERATION_CONFIGS or n <= FRIEDMAN_DP_MAX_BLOCKS.get(k, 0)


def _friedman_core(table, min_k: int = 2):
    m = as_matrix(table, "block table")
    n, k = m.shape
    if n < 2 or k < min_k:
        raise DataError(f"need at least 2 blocks and {min_k} treatments, got {n} x {k}")
    r2 = _block_ranks(m)
    col2 = r2.sum(axis=0)
    s = float(np.sum((col2 - n * (k + 1)) ** 2)) / 4
    a = float(np.sum(r2.astype(float) ** 2)) / 4
    c = n * k * (k + 1) ** 2 / 4
    laws = None
    if friedman_exact_allowed(n, k):
        laws = friedman_laws(tuple(tuple(row) for row in r2.tolist()))
    return m, r2, col2 / 2, s, a - c, laws


def friedman(table) -> TestOutcome:
    """Friedman test for an n blocks x k treatments table.

    Q = (k-1) S / (sum r^2 - n k (k+1)^2 / 4), equal to 12 S / (n k (k+1))
    without ties.  The exact law enumerates every within-block permutation by
    dynamic programming over column rank sums.
    """
    m, r2, cols, s, spread, laws = _friedman_core(table)
    n, k = m.shape
    if spread == 0:
        raise DegenerateDataError("every block is entirely tied")
    q = (k - 1) * s / spread
    fields = chi2_right(q, k - 1)
    notes = []
    if has_ties_within_blocks(m):
        notes.append("within-block midranks; tie-corrected Q")
    if laws is not None:
        fields["exact_right_p"] = laws[0].right_tail(s)
    else:
        notes.append("exact law out of budget: asymptotic p-value only")
    return TestOutcome(
        "Friedman",
        {"S": s, "Q": q, "df": k - 1},
        Alternative.TWO_SIDED,
        **fields,
        notes=notes,
        extras={"rank_sums": tuple(cols.tolist())},
    )


def has_ties_within_blocks(m: np.ndarray) -> bool:
    return any(has_ties(row) for row in m)


def page(table, alternative=Alternative.ORDERED) -> TestOutcome:
    """Page test for ordered treatment effects: L = sum_j j R_j.

    Columns are given in the hypothesised increasing order; large L (right
    tail) supports it.
    """
    alt = check_alternative(alternative, DIRECTIONAL + (Alternative.ORDERED,), "Page")
    m, r2, cols, s, spread, laws = _friedman_core(table, min_k=3)
    n, k = m.shape
    j = np.arange(1, k + 1)
    L = float(np.dot(j, cols))
    var = float(np.sum((j - j.mean()) ** 2)) * spread / (k - 1)
    z = standardize(L, n * k * (k + 1) ** 2 / 4, var)
    fields = normal_tails(z)
    notes = []
    if laws is not None:
        fields.update(exact_tails(laws[1], L))
    else:
        notes.append("exact law out of budget: asymptotic p-values only")
    stats = {"L": L}
    if not math.isnan(z):
        stats["Z"] = z
    return TestOutcome("Page", stats, alt, **fields, notes=notes)


def concordance_coefficient(table) -> TestOutcome:
    """Kendall's coefficient of concordance W for n raters (rows) x k objects (columns).

    W = Q / (n (k-1)) with Q the tie-corrected Friedman statistic; p-values
    are those of the Friedman test on the same table.
    """
    fr = friedman(table)
    n, k = as_matrix(table).shape
    q = fr["Q"]
    w = q / (n * (k - 1))
    return TestOutcome(
        "Concordance coefficient",
        {"W": w, "Q": q, "S": fr["S"]},
        Alternative.TWO_SIDED,
        exact_right_p=fr.exact_right_p,
        asymptotic_right_p=fr.asymptotic_right_p,
        notes=fr.notes,
    )


# --------------------------------------------------------- incomplete designs


def blocks_from_rows(rows, missing: float | None = None) -> list[dict[int, float]]:
    """Convert a rectangular layout (rows = judges) into design blocks.

    Cells that are NaN, or equal to ``missing``, mark objects a judge did not rank.
    """
    arr = np.asarray(rows, dtype=float)
    if arr.ndim != 2:
        raise DataError("design layout must be two-dimensional")
    out = []
    for row in arr:
        skip = np.isnan(row) if missing is None else (np.isnan(row) | (row == missing))
        out.append({int(j): float(v) for j, v in enumerate(row) if not skip[j]})
    return out


def _check_design(blocks: Sequence[Mapping[int, float]], k: int, design: str | None):
    sizes = {len(b) for b in blocks}
    if len(sizes) != 1:
        raise DesignError(f"blocks rank different numbers of objects: {sorted(sizes)}")
    (t,) = sizes
    if t < 2:
        raise DesignError("each block must rank at least 2 objects")
    reps = np.zeros(k, dtype=int)
    pairs = defaultdict(int)
    for b in blocks:
        objs = sorted(b)
        for o in objs:
            reps[o] += 1
        for a, c in itertools.combinations(objs, 2):
            pairs[a, c] += 1
    if len(set(reps.tolist())) != 1:
        raise DesignError(f"objects are ranked unequal numbers of times: {reps.tolist()}")
    lambdas = {pairs.get(p, 0) for p in itertools.combinations(range(k), 2)}
    if len(lambdas) != 1:
        raise DesignError(f"object pairs co-occur unequal numbers of times: {sorted(lambdas)}")
    if design == "latin" and t != k:
        raise DesignError("a Latin-square layout ranks every object in every block")
    if design == "youden" and len(blocks) != k:
        raise DesignError(f"a Youden square has as many blocks as objects ({len(blocks)} != {k})")
    return t, int(reps[0]), lambdas.pop()


def incomplete_concordance(blocks, n_objects: int | None = None, design: str | None = None) -> TestOutcome:
    """Durbin test for a balanced incomplete block design.

    ``blocks`` lists, per judge, a mapping ``object index -> value`` (or a
    2-D layout with NaN for unranked objects).  ``design`` may be
    ``"youden"`` or ``"latin"`` to enforce the shape of those layouts.
    """
    if design is not None and design not in ("youden", "latin"):
        raise DataError(f"design must be 'youden' or 'latin', got {design!r}")
    if not isinstance(blocks, (list, tuple)) or (blocks and not isinstance(blocks[0], Mapping)):
        blocks = blocks_from_rows(as_matrix(blocks) if not isinstance(blocks, np.ndarray) else blocks)
    if len(blocks) < 2:
        raise DataError("need at least 2 blocks")
    k = n_objects if n_objects is not None else 1 + max(max(b) for b in blocks if b)
    if any(o < 0 or o >= k for b in blocks for o in b):
        raise DataError(f"object indices must lie in 0..{k - 1}")
    t, r, lam = _check_design(blocks, k, design)
    b = len(blocks)
    R = np.zeros(k)
    a = 0.0
    for blk in blocks:
        objs = list(blk)
        ranks = midranks([blk[o] for o in objs])
        for o, rk in zip(objs, ranks):
            R[o] += rk
        a += float(np.sum(ranks**2))
    c = b * t * (t + 1) ** 2 / 4
    if a - c <= 0:
        raise DegenerateDataError("every block is entirely tied")
    stat = (k - 1) * float(np.sum((R - r * (t + 1) / 2) ** 2)) / (a - c)
    return TestOutcome(
        "Incomplete concordance (Durbin)",
        {"T": stat, "df": k - 1},
        Alternative.TWO_SIDED,
        **chi2_right(stat, k - 1),
        notes=[f"{b} blocks of size {t}; each object ranked {r} times; each pair together {lam} times"],
        extras={"rank_sums": tuple(R.tolist())},
    )


# -------------------------------------------------------- partial correlation


def partial_tau(txy: float, txz: float, tyz: float) -> float:
    denom = (1 - txz**2) * (1 - tyz**2)
    if denom <= 0:
        raise DegenerateDataError("|tau_XZ| or |tau_YZ| equals 1: partial tau undefined")
    return (txy - txz * tyz) / math.sqrt(denom)


def _norm(v: np.ndarray) -> float:
    n0 = v.size * (v.size - 1) / 2
    return n0 - _tie_pairs(v)


@lru_cache(maxsize=16)
def partial_tau_law(x: tuple, y: tuple, z: tuple) -> ExactNullDistribution:
    """Law of tau_{XY.Z} over all (n!)^2 rearrangements of Y and Z against X.

    Rearrangements that make the statistic undefined (|tau_XZ| = 1 or
    |tau_YZ| = 1) are excluded.
    """
    xa, ya, za = (np.asarray(v, dtype=float) for v in (x, y, z))
    n = xa.size
    perms = permutations_array(n)
    sx = _pair_signs(xa).astype(float)
    sy = np.array([_pair_signs(ya[p]) for p in perms], dtype=float)
    sz = np.array([_pair_signs(za[p]) for p in perms], dtype=float)
    nx, ny, nz = _norm(xa), _norm(ya), _norm(za)
    txy = sy @ sx / math.sqrt(nx * ny)
    txz = sz @ sx / math.sqrt(nx * nz)
    acc: dict[float, int] = defaultdict(int)
    bz = 1 - txz**2
    chunk = max(1, 2_000_000 // len(perms))
    for start in range(0, len(perms), chunk):
        tyz = sy[start : start + chunk] @ sz.T / math.sqrt(ny * nz)
        by = 1 - tyz**2
        ok = (by > 1e-12) & (bz[None, :] > 1e-12)
        num = txy[start : start + chunk, None] - txz[None, :] * tyz
        vals = num[ok] / np.sqrt(by[ok] * np.broadcast_to(bz, by.shape)[ok])
        keys, counts = np.unique(np.round(vals, 9), return_counts=True)
        for kk, cc in zip(keys.tolist(), counts.tolist()):
            acc[kk] += cc
    support = sorted(acc)
    return law_from_values("partial_tau", (n,), support, [acc[s] for s in support])


def partial_correlation(table, alternative=Alternative.TWO_SIDED) -> TestOutcome:
    """Kendall partial rank correlation tau_{XY.Z} for a three-column table.

    Exact p-values (n <= 7) treat every rearrangement of Y and of Z against X
    as equally likely; beyond that only the statistic is reported.
    """
    alt = check_alternative(alternative, DIRECTIONAL, "Partial correlation")
    x, y, z = _columns(table, 3, "partial correlation data")
    n = x.size
    if n < 3:
        raise DataError("partial correlation needs at least 3 rows")
    _, txy = kendall_tau(x, y)
    _, txz = kendall_tau(x, z)
    _, tyz = kendall_tau(y, z)
    stat = partial_tau(txy, txz, tyz)
    fields = {}
    notes = []
    if n <= PARTIAL_EXACT_MAX_N:
        law = partial_tau_law(*(tuple(sorted(v.tolist())) for v in (x, y, z)))
        fields = exact_tails(law, stat)
        notes.append("exact law over all rearrangements of Y and Z, undefined ones excluded")
    else:
        notes.append(f"no null law for n > {PARTIAL_EXACT_MAX_N}: statistic only")
    return TestOutcome(
        "Partial correlation",
        {"tau_XY.Z": stat, "tau_XY": txy, "tau_XZ": txz, "tau_YZ": tyz},
        alt,
        **fields,
        notes=notes,
    )


__all__ = [
    "kendall",
    "kendall_tau",
    "spearman",
    "daniels_trend",
    "friedman",
    "page",
    "concordance_coefficient",
    "incomplete_concordance",
    "blocks_from_rows",
    "partial_correlation",
    "partial_tau",
]
