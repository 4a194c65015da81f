from fractions import Fraction
from math import comb

import numpy as np
import pytest

import oracles as O
from npst import (
    DataError,
    DegenerateDataError,
    DomainError,
    TieError,
    control_median_test,
    ks_two_sample,
    median_test,
    scale_test,
    van_der_waerden,
    wald_wolfowitz,
    wilcoxon_rank_sum,
)
from npst.two_sample import SCALE_VARIANTS, scale_scores

LINEAR_VARIANTS = [v for v in SCALE_VARIANTS if v != "sukhatme"]


# ---------------------------------------------------------------- Wald-Wolfowitz


def test_ww_alternating():
    out = wald_wolfowitz([1, 3, 5], [2, 4, 6])
    assert out["R"] == 6 and out.exact_left_p == 1.0


def test_ww_separated():
    out = wald_wolfowitz([1, 2, 3], [4, 5, 6])
    assert out["R"] == 2 and out.exact_left_p == pytest.approx(0.1, abs=1e-15)


def test_ww_single_values():
    out = wald_wolfowitz([7.0], [1.0])
    assert out["R"] == 2 and out.exact_left_p == 1.0


def test_ww_cross_tie():
    with pytest.raises(TieError):
        wald_wolfowitz([1, 2, 3], [3, 4])


def test_ww_within_sample_ties_allowed():
    assert wald_wolfowitz([1, 1, 2], [5, 6])["R"] == 2


# -------------------------------------------------------------------- median


def test_median_separated_pairs():
    out = median_test([1, 2], [3, 4])
    assert out["U"] == 0
    assert out.exact_left_p == pytest.approx(1 / 6, abs=1e-15)


def test_median_separated_triples():
    assert median_test([1, 2, 3], [4, 5, 6]).exact_left_p == pytest.approx(0.05, abs=1e-15)


def test_median_balanced():
    assert median_test([1, 4], [2, 3]).exact_double_p == 1.0


def test_median_degenerate():
    with pytest.raises(DegenerateDataError):
        median_test([2, 2], [2, 2])


# ------------------------------------------------------------- control median


def _control_oracle(control, treatment):
    obs = O.control_median_V(control, treatment)
    return O.tails(obs, O.two_sample_outcomes(control, treatment, O.control_median_V))


def test_control_median_all_below():
    c, t = [5.0, 6.0, 7.0, 8.0, 9.0], [1.0, 2.0, 3.0]
    out = control_median_test(c, t)
    assert out["V"] == 3
    left, right = _control_oracle(c, t)
    assert out.exact_right_p == pytest.approx(float(right), abs=1e-15)


def test_control_median_straddle():
    c, t = [2.0, 4.0, 6.0], [3.0, 5.0]
    out = control_median_test(c, t)
    assert out["V"] == 1
    left, right = _control_oracle(c, t)
    assert (out.exact_left_p, out.exact_right_p) == pytest.approx((float(left), float(right)), abs=1e-15)


def test_control_median_balanced():
    assert control_median_test([1, 3, 5], [2, 6]).exact_double_p == 1.0


def test_control_median_degenerate():
    with pytest.raises(DegenerateDataError):
        control_median_test([1, 2, 3], [2, 2])


# ----------------------------------------------------------------- KS two sample


def test_ks2_identical():
    out = ks_two_sample([1, 2, 3], [1, 2, 3])
    assert out["Dn"] == 0 and out.exact_double_p == 1.0


def test_ks2_separated():
    out = ks_two_sample([1, 2], [3, 4])
    assert out["Dn"] == 1.0
    assert out.exact_double_p == pytest.approx(1 / 3, abs=1e-15)


def test_ks2_sweep_oracle():
    x, y = [0.3, 1.9, 2.2, 4.0], [0.9, 1.0, 3.1, 3.5]
    out = ks_two_sample(x, y)
    plus, minus, d = O.ks_gaps(x, y)
    assert out["Dn"] == pytest.approx(float(d), abs=1e-15)
    assert {round(out["Dn+"], 12), round(out["Dn-"], 12)} == {round(float(plus), 12), round(float(minus), 12)}


@pytest.mark.parametrize("seed", range(5))
def test_ks2_range_and_max(seed):
    rng = np.random.default_rng(seed)
    x, y = rng.normal(size=7), rng.normal(0.5, size=9)
    out = ks_two_sample(x, y)
    assert 0 <= out["Dn"] <= 1
    assert out["Dn"] == max(out["Dn+"], out["Dn-"])


def test_ks2_swap_exchanges_one_sided():
    x, y = [0.1, 0.5, 0.9, 1.4], [0.7, 1.1, 2.0]
    a, b = ks_two_sample(x, y), ks_two_sample(y, x)
    assert (a["Dn+"], a["Dn-"]) == (b["Dn-"], b["Dn+"])
    assert a.exact_double_p == b.exact_double_p


def test_ks2_large_uses_asymptotic():
    rng = np.random.default_rng(1)
    out = ks_two_sample(rng.normal(size=150), rng.normal(size=150))
    assert out.exact_double_p is None and out.asymptotic_double_p is not None


# ---------------------------------------------------------------- rank sum


def test_rank_sum_extreme():
    out = wilcoxon_rank_sum([1, 2], [3, 4])
    assert out["W"] == 7 and out["U"] == 4
    assert out.exact_right_p == pytest.approx(1 / 6, abs=1e-15)


def test_rank_sum_enumeration_3_3():
    x, y = [1.4, 5.2, 3.3], [2.8, 6.1, 4.0]
    out = wilcoxon_rank_sum(x, y)
    left, right = O.tails(O.rank_sum(x, y), O.two_sample_outcomes(x, y, O.rank_sum))
    assert (out.exact_left_p, out.exact_right_p) == pytest.approx((float(left), float(right)), abs=1e-15)


def test_rank_sum_interval_equivariance():
    x = np.array([1.1, 2.5, 3.0, 4.7, 5.2, 6.9])
    y = np.array([2.0, 3.9, 5.5, 6.1, 8.3, 9.0, 9.4])
    a = wilcoxon_rank_sum(x, y, confidence=0.9)
    b = wilcoxon_rank_sum(x, y + 2.5, confidence=0.9)
    lo, hi = a.extras["shift_interval"]
    assert b.extras["shift_interval"] == pytest.approx((lo + 2.5, hi + 2.5), abs=1e-12)
    assert b.extras["hodges_lehmann"] == pytest.approx(a.extras["hodges_lehmann"] + 2.5, abs=1e-12)
    assert a.extras["interval_confidence"] >= 0.9
    assert lo <= a.extras["hodges_lehmann"] <= hi


def test_rank_sum_interval_unattainable_is_reported():
    out = wilcoxon_rank_sum([1, 2], [3, 4], confidence=0.99)
    assert "unattainable" in out.extras["interval_method"]


def test_rank_sum_confidence_domain():
    with pytest.raises(DomainError):
        wilcoxon_rank_sum([1, 2], [3, 4], confidence=1.5)


# ---------------------------------------------------------- van der Waerden


def test_vdw_swap_antisymmetry():
    x, y = [0.4, 2.2, 3.1], [1.0, 4.5, 5.0, 6.2]
    a, b = van_der_waerden(x, y), van_der_waerden(y, x)
    assert a["T"] == pytest.approx(-b["T"], abs=1e-12)
    assert a.exact_left_p == pytest.approx(b.exact_right_p, abs=1e-15)


def test_vdw_2_2_enumeration():
    x, y = [0.5, 3.0], [1.5, 2.5]
    sc = O.normal_scores(4)
    stat = lambda a, b: sum(sc[int(r) - 1] for r in O.midranks(a + b)[len(a):])  # noqa: E731
    left, right = O.tails(stat(x, y), O.two_sample_outcomes(x, y, stat))
    out = van_der_waerden(x, y)
    assert (out.exact_left_p, out.exact_right_p) == pytest.approx((float(left), float(right)), abs=1e-14)


def test_vdw_extreme():
    out = van_der_waerden([1, 2, 3], [4, 5])
    assert out.exact_right_p == pytest.approx(1 / comb(5, 2), abs=1e-15)


# ------------------------------------------------------------------ scale


def test_mood_central():
    out = scale_test([1, 4], [2, 3], "mood")
    assert out.exact_left_p == pytest.approx(1 / 6, abs=1e-15)


def test_fab_score_sum_identity():
    x, y = [0.2, 1.7, 3.3, 4.1], [0.9, 2.5, 5.8]
    N = 7
    total = sum(min(i, N + 1 - i) for i in range(1, N + 1))
    assert scale_test(x, y, "freund_ansari_bradley")["T"] + scale_test(y, x, "freund_ansari_bradley")["T"] == total


def test_siegel_tukey_matches_rank_sum_on_relabelled_data():
    x, y = [1.0, 2.0, 6.0], [3.0, 4.0, 5.0]
    st = scale_test(x, y, "siegel_tukey")
    pos = {v: i for i, v in enumerate(sorted(x + y))}
    lab = scale_scores("siegel_tukey", 6)
    rs = wilcoxon_rank_sum([lab[pos[v]] for v in x], [lab[pos[v]] for v in y])
    assert st["T"] == rs["W"]
    assert (st.exact_left_p, st.exact_right_p) == (rs.exact_left_p, rs.exact_right_p)


def test_siegel_tukey_alternation():
    assert list(scale_scores("siegel_tukey", 8)) == [1, 4, 5, 8, 7, 6, 3, 2]


@pytest.mark.parametrize("variant", LINEAR_VARIANTS)
def test_scale_enumeration(variant):
    x, y = [0.1, 1.2, 2.9], [0.7, 1.9, 3.6, 4.4]
    N = 7
    sc = O.scale_position_scores(variant, N) if variant != "siegel_tukey" else O.siegel_tukey_position_scores(N)
    stat = lambda a, b: sum(sc[int(r) - 1] for r in O.midranks(a + b)[len(a):])  # noqa: E731
    left, right = O.tails(stat(x, y), O.two_sample_outcomes(x, y, stat))
    out = scale_test(x, y, variant)
    assert (out.exact_left_p, out.exact_right_p) == pytest.approx((float(left), float(right)), abs=1e-14)


@pytest.mark.parametrize("variant", SCALE_VARIANTS)
def test_scale_swap_antisymmetry(variant):
    x, y = [0.35, 1.2, 2.9, 5.1], [0.7, 1.9, 3.6, 4.4, 6.0]
    a, b = scale_test(x, y, variant), scale_test(y, x, variant)
    # with the statistic redefined on the other sample, tails trade places
    assert a.exact_left_p == pytest.approx(b.exact_right_p, abs=1e-12)


def test_scale_unknown_variant():
    with pytest.raises(DomainError):
        scale_test([1, 2], [3, 4], "levene")


def test_scale_needs_two_per_sample():
    with pytest.raises(DataError):
        scale_test([1], [3, 4], "mood")


# ------------------------------------------------------------ invariance


@pytest.mark.parametrize(
    "test",
    [wilcoxon_rank_sum, van_der_waerden, median_test, control_median_test, ks_two_sample, wald_wolfowitz]
    + [lambda x, y, v=v: scale_test(x, y, v) for v in LINEAR_VARIANTS],
)
def test_increasing_transform(test):
    rng = np.random.default_rng(8)
    x, y = rng.uniform(0.1, 3, size=6), rng.uniform(0.1, 3, size=5)
    a, b = test(x, y), test(np.log(x), np.log(y))
    assert a.statistics.keys() == b.statistics.keys()
    for k in a.statistics:
        if k != "Z":
            assert a[k] == b[k]
    assert (a.exact_left_p, a.exact_right_p) == (b.exact_left_p, b.exact_right_p)


def test_sukhatme_uses_deviations_not_ranks():
    # deviations from the medians change under a nonlinear map, so Sukhatme is
    # only invariant under location-scale changes
    x, y = np.array([0.35, 1.2, 2.9, 5.1]), np.array([0.7, 1.9, 3.6, 4.4, 6.0])
    a, b = scale_test(x, y, "sukhatme"), scale_test(3 * x - 1, 3 * y - 1, "sukhatme")
    assert a["T"] == b["T"]


def test_fraction_oracle_sanity():
    assert O.tails(2, [(1, 1), (2, 1), (3, 2)]) == (Fraction(1, 2), Fraction(3, 4))
