"""Transform, swap and relabelling checks shared by the unit and acceptance suites.

Each ``check_*`` returns the number of outcomes compared and raises
``AssertionError`` naming the first test that breaks the property.
"""

from __future__ import annotations

import numpy as np

import npst
from npst.association import blocks_from_rows
from npst.two_sample import SCALE_VARIANTS

P_FIELDS = ("exact_left_p", "exact_right_p", "exact_double_p", "asymptotic_left_p", "asymptotic_right_p",
            "asymptotic_double_p")


def _same(a, b, name: str):
    if a.statistics != b.statistics:
        raise AssertionError(f"{name}: statistics {dict(a.statistics)} != {dict(b.statistics)}")
    for f in P_FIELDS:
        if getattr(a, f) != getattr(b, f):
            raise AssertionError(f"{name}: {f} {getattr(a, f)!r} != {getattr(b, f)!r}")


def _rank_cases(rng):
    """(name, function of a monotone map g) for every test whose statistic depends on ranks only."""
    seq = rng.normal(size=11)
    x, y = rng.normal(size=6), rng.normal(0.4, size=5)
    pairs = rng.normal(size=(9, 2))
    ks = [rng.normal(size=4), rng.normal(size=3), rng.normal(size=4)]
    blocks = rng.normal(size=(4, 3))
    triple = rng.normal(size=(6, 3))
    bib = np.array([[0.3, -1.2, np.nan], [0.8, np.nan, -0.1], [np.nan, 1.4, 0.2]])
    cases = [
        ("runs_up_down", lambda g: npst.runs_up_down(g(seq))),
        ("runs_up_down_median", lambda g: npst.runs_up_down_median(g(seq))),
        ("von_neumann", lambda g: npst.von_neumann_ranks(g(seq))),
        ("population_quantile", lambda g: npst.population_quantile_test(g(seq), 0.5, float(g(np.array([0.1]))[0]))),
        ("sign_test", lambda g: npst.sign_test(g(pairs))),
        ("wald_wolfowitz", lambda g: npst.wald_wolfowitz(g(x), g(y))),
        ("median_test", lambda g: npst.median_test(g(x), g(y))),
        ("control_median", lambda g: npst.control_median_test(g(x), g(y))),
        ("ks_two_sample", lambda g: npst.ks_two_sample(g(x), g(y))),
        ("wilcoxon_rank_sum", lambda g: npst.wilcoxon_rank_sum(g(x), g(y))),
        ("van_der_waerden", lambda g: npst.van_der_waerden(g(x), g(y))),
        ("extended_median", lambda g: npst.extended_median_test([g(s) for s in ks])),
        ("kruskal_wallis", lambda g: npst.kruskal_wallis([g(s) for s in ks])),
        ("jonckheere_terpstra", lambda g: npst.jonckheere_terpstra([g(s) for s in ks])),
        ("chakraborti_desu", lambda g: npst.chakraborti_desu([g(s) for s in ks])),
        ("kendall", lambda g: npst.kendall(g(pairs))),
        ("spearman", lambda g: npst.spearman(g(pairs))),
        ("daniels_trend", lambda g: npst.daniels_trend(g(seq))),
        ("friedman", lambda g: npst.friedman(g(blocks))),
        ("page", lambda g: npst.page(g(blocks))),
        ("concordance_coefficient", lambda g: npst.concordance_coefficient(g(blocks))),
        ("incomplete_concordance", lambda g: npst.incomplete_concordance(blocks_from_rows(g(bib)), 3)),
        ("partial_correlation", lambda g: npst.partial_correlation(g(triple))),
    ]
    for v in SCALE_VARIANTS:
        if v != "sukhatme":  # built on deviations from the medians, not on ranks
            cases.append((v, lambda g, v=v: npst.scale_test(g(x), g(y), v)))
    return cases


def check_monotone_transform(seed: int = 0) -> int:
    """Bitwise-equal outcomes under x -> exp(x)."""
    rng = np.random.default_rng(seed)
    n = 0
    for name, run in _rank_cases(rng):
        _same(run(lambda v: np.asarray(v, dtype=float)), run(np.exp), name)
        n += 1
    return n


def _swap_cases(rng):
    x, y = rng.normal(size=5), rng.normal(0.3, size=6)
    cases = [
        ("median_test", npst.median_test),
        ("ks_two_sample", npst.ks_two_sample),
        ("wilcoxon_rank_sum", npst.wilcoxon_rank_sum),
        ("van_der_waerden", npst.van_der_waerden),
    ]
    cases += [(v, lambda a, b, v=v: npst.scale_test(a, b, v)) for v in SCALE_VARIANTS]
    return x, y, cases


def check_sample_swap(seed: int = 0) -> int:
    """Swapping the samples trades the left and right tails and keeps the double tail.

    Wald-Wolfowitz is symmetric in the samples, so its outcome must not change.
    """
    rng = np.random.default_rng(seed)
    x, y, cases = _swap_cases(rng)
    n = 0
    for name, f in cases:
        a, b = f(x, y), f(y, x)
        for kind in ("exact", "asymptotic"):
            la, ra, da = (getattr(a, f"{kind}_{s}_p") for s in ("left", "right", "double"))
            lb, rb, db = (getattr(b, f"{kind}_{s}_p") for s in ("left", "right", "double"))
            if not (np.isclose(la, rb, rtol=0, atol=1e-12) and np.isclose(ra, lb, rtol=0, atol=1e-12)
                    and np.isclose(da, db, rtol=0, atol=1e-12)):
                raise AssertionError(f"{name} ({kind}): tails ({la}, {ra}) vs swapped ({lb}, {rb})")
        n += 1
    a, b = npst.wald_wolfowitz(x, y), npst.wald_wolfowitz(y, x)
    # only the reported sizes m and n trade places
    if (a["R"], a["Z"]) != (b["R"], b["Z"]) or any(getattr(a, f) != getattr(b, f) for f in P_FIELDS):
        raise AssertionError("wald_wolfowitz: swapping the samples changed the outcome")
    return n + 1


def check_label_permutation(seed: int = 0) -> int:
    rng = np.random.default_rng(seed)
    ks = [rng.normal(size=4), rng.normal(size=3), rng.normal(size=5)]
    blocks = rng.normal(size=(5, 4))
    counts = [4, 1, 6, 2]
    n = 0
    for order in ([2, 0, 1], [1, 2, 0]):
        a, b = npst.kruskal_wallis(ks), npst.kruskal_wallis([ks[i] for i in order])
        if abs(a["H"] - b["H"]) > 1e-12 or a.exact_right_p != b.exact_right_p:
            raise AssertionError(f"kruskal_wallis: relabelling {order} changed the outcome")
        n += 1
    for order in ([3, 1, 0, 2], [1, 0, 3, 2]):
        a, b = npst.friedman(blocks), npst.friedman(blocks[:, order])
        if abs(a["Q"] - b["Q"]) > 1e-12 or a.exact_right_p != b.exact_right_p:
            raise AssertionError(f"friedman: relabelling {order} changed the outcome")
        a, b = npst.multinomial_equality(counts), npst.multinomial_equality([counts[i] for i in order])
        _same(a, b, "multinomial_equality")
        n += 2
    return n


CHECKS = (
    ("strictly increasing transform (exp)", check_monotone_transform),
    ("sample swap exchanges tails", check_sample_swap),
    ("label permutation", check_label_permutation),
)
