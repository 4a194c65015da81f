import math

import numpy as np
import pytest

import oracles as O
from npst import (
    DegenerateDataError,
    DomainError,
    chakraborti_desu,
    control_median_test,
    extended_median_test,
    jonckheere_terpstra,
    kruskal_wallis,
    wilcoxon_rank_sum,
)
from npst.core import DataError

SEPARATED = [[1.0, 2.0], [3.0, 4.0], [5.0, 6.0]]


# ------------------------------------------------------------ extended median


def test_extended_median_separated():
    out = extended_median_test(SEPARATED)
    # counts above the pooled median 3.5 are (0, 1, 2); expected 1 everywhere
    assert out.extras["above_median"] == (0, 1, 2)
    assert out["Q"] == pytest.approx(4.0, abs=1e-12)
    assert out["df"] == 2
    assert out.asymptotic_right_p == pytest.approx(math.exp(-2.0), abs=1e-12)


def test_extended_median_balanced():
    out = extended_median_test([[1, 4, 7, 10], [2, 5, 8, 11], [3, 6, 9, 12]])
    assert out["Q"] <= 1.0
    assert out.asymptotic_right_p > 0.6


def test_extended_median_label_permutation():
    rng = np.random.default_rng(3)
    s = [rng.normal(size=5), rng.normal(size=6), rng.normal(1, size=4)]
    assert extended_median_test(s)["Q"] == pytest.approx(extended_median_test(s[::-1])["Q"], abs=1e-12)


def test_extended_median_errors():
    with pytest.raises(DataError):
        extended_median_test([[1], [2], [3, 4]])
    with pytest.raises(DegenerateDataError):
        extended_median_test([[1, 1], [1, 1], [1, 1]])


# --------------------------------------------------------------- Kruskal-Wallis


def test_kw_separated_value_and_enumeration():
    out = kruskal_wallis(SEPARATED)
    h = 12 / 42 * (9 / 2 + 49 / 2 + 121 / 2) - 21
    assert out["H"] == pytest.approx(h, abs=1e-12)
    assert out["H"] == pytest.approx(4.571, abs=5e-4)
    _, right = O.tails(O.kruskal_wallis_H(SEPARATED), O.k_sample_outcomes(SEPARATED, O.kruskal_wallis_H))
    assert out.exact_right_p == pytest.approx(float(right), abs=1e-15)


def test_kw_null_center():
    out = kruskal_wallis([[1, 6], [2, 5], [3, 4]])
    assert out["H"] == pytest.approx(0.0, abs=1e-12)
    assert out.exact_right_p == 1.0 and out.asymptotic_right_p == pytest.approx(1.0)


def test_kw_two_samples_is_squared_rank_sum():
    x, y = [0.3, 1.7, 2.2, 5.0], [0.9, 3.4, 4.1, 6.6, 7.0]
    z = wilcoxon_rank_sum(x, y)["Z"]
    assert kruskal_wallis([x, y])["H"] == pytest.approx(z * z, abs=1e-12)


def test_kw_invariances():
    rng = np.random.default_rng(12)
    s = [rng.uniform(1, 5, size=4) for _ in range(3)]
    base = kruskal_wallis(s)
    assert kruskal_wallis([np.log(v) for v in s])["H"] == base["H"]
    assert kruskal_wallis([s[2], s[0], s[1]])["H"] == pytest.approx(base["H"], abs=1e-12)


def test_kw_all_tied():
    with pytest.raises(DegenerateDataError):
        kruskal_wallis([[2, 2], [2, 2], [2]])


def test_kw_large_is_asymptotic():
    rng = np.random.default_rng(0)
    out = kruskal_wallis([rng.normal(size=12) for _ in range(3)])
    assert out.exact_right_p is None and out.asymptotic_right_p is not None


# ---------------------------------------------------------- Jonckheere-Terpstra


def test_jt_separated():
    out = jonckheere_terpstra(SEPARATED)
    assert out["B"] == 12
    assert out.exact_right_p == pytest.approx(1 / 90, abs=1e-15)


def test_jt_reversal():
    s = [[0.4, 2.1, 3.3], [1.2, 2.6], [0.8, 3.9, 4.4]]
    a, b = jonckheere_terpstra(s), jonckheere_terpstra(s[::-1])
    bmax = 3 * 2 + 3 * 3 + 2 * 3
    assert a["B"] + b["B"] == bmax
    assert a.exact_left_p == pytest.approx(b.exact_right_p, abs=1e-15)


def test_jt_two_samples_is_mann_whitney():
    x, y = [0.3, 1.7, 2.2, 5.0], [0.9, 3.4, 4.1, 6.6, 7.0]
    assert jonckheere_terpstra([x, y])["B"] == wilcoxon_rank_sum(x, y)["U"]


def test_jt_enumeration_with_ties():
    s = [[1.0, 2.0, 2.0], [2.0, 3.0], [1.0, 4.0]]
    _, right = O.tails(O.jonckheere_B(s), O.k_sample_outcomes(s, O.jonckheere_B))
    assert jonckheere_terpstra(s).exact_right_p == pytest.approx(float(right), abs=1e-15)


def test_jt_monotone_in_raised_value():
    s = [[1.0, 5.0], [2.0, 3.0], [4.0, 6.0]]
    b0 = jonckheere_terpstra(s)["B"]
    s[2][0] = 5.5  # last-sample value lifted past an earlier-sample value
    assert jonckheere_terpstra(s)["B"] == b0 + 1
    s[1][1] = 7.0  # middle value lifted past later-sample values lowers B
    assert jonckheere_terpstra(s)["B"] < b0 + 1


def test_jt_rejects_control_alternative():
    with pytest.raises(DomainError):
        jonckheere_terpstra(SEPARATED, "control")


# -------------------------------------------------------------- Chakraborti-Desu


def _cd_oracle(control, treatments):
    pooled_t = [v for t in treatments for v in t]
    obs = O.control_median_V(control, pooled_t)
    return O.tails(obs, O.two_sample_outcomes(control, pooled_t, O.control_median_V))


def test_cd_all_treatments_above():
    control = [1.0, 2.0, 3.0]
    treatments = [[4.0, 5.0], [6.0, 7.0]]
    out = chakraborti_desu([control] + treatments)
    assert out["W"] == 0
    left, _ = _cd_oracle(control, treatments)
    assert out.exact_left_p == pytest.approx(float(left), abs=1e-15)


def test_cd_centered_construction():
    out = chakraborti_desu([[1, 3, 5, 7, 9], [2, 8], [4, 6]])
    assert out["W"] == 2 and out["Z"] == pytest.approx(0.0, abs=1e-12)


def test_cd_two_samples_match_control_median():
    c, t = [2.0, 4.0, 6.0, 8.0], [1.0, 5.0, 9.0]
    a, b = chakraborti_desu([c, t]), control_median_test(c, t)
    assert a["W"] == b["V"]
    assert (a.exact_left_p, a.exact_right_p) == (b.exact_left_p, b.exact_right_p)


def test_cd_control_index():
    a = chakraborti_desu([[4.0, 5.0], [1.0, 2.0, 3.0], [6.0, 7.0]], control_index=1)
    b = chakraborti_desu([[1.0, 2.0, 3.0], [4.0, 5.0], [6.0, 7.0]])
    assert a["W"] == b["W"] and a.exact_left_p == b.exact_left_p
    with pytest.raises(DomainError):
        chakraborti_desu([[1.0], [2.0]], control_index=5)


def test_cd_degenerate():
    with pytest.raises(DegenerateDataError):
        chakraborti_desu([[1.0, 2.0, 3.0], [2.0], [2.0]])
