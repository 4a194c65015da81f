import math
from statistics import NormalDist

import numpy as np
import pytest

import accuracy
from npst import anderson_darling, chi_square_gof, ks_one_sample, lilliefors
from npst.core import DataError, DomainError, NumericalError
from npst.distributions import Exponential, Normal, Uniform, kolmogorov_cdf
from npst.goodness_of_fit import ks_statistics


def ecdf_sweep(x, F):
    """sup |ECDF - F| checked on both sides of every jump."""
    xs = sorted(x)
    n = len(xs)
    best = 0.0
    for i, v in enumerate(xs):
        below = sum(1 for u in xs if u < v) / n
        at = sum(1 for u in xs if u <= v) / n
        best = max(best, abs(at - F(v)), abs(below - F(v)))
    return best


# ------------------------------------------------------------ chi-square


def test_chi_square_separated_counts():
    out = chi_square_gof([10, 0], [5, 5])
    assert out["Q"] == 10.0 and out["df"] == 1
    assert out.asymptotic_right_p == pytest.approx(1 - accuracy.chi2_cdf_quad(10.0, 1), abs=1e-10)
    assert out.asymptotic_right_p == pytest.approx(0.00157, abs=5e-6)


@pytest.mark.parametrize("obs,exp", [([4, 4, 4], [1 / 3, 1 / 3, 1 / 3]), ([3, 7], [3, 7])])
def test_chi_square_identity(obs, exp):
    out = chi_square_gof(obs, exp)
    assert out["Q"] == 0.0 and out.asymptotic_right_p == 1.0


def test_chi_square_zero_expected():
    with pytest.raises(DomainError):
        chi_square_gof([1, 2], [0, 3])


def test_chi_square_small_cells_warn_but_compute():
    out = chi_square_gof([1, 3], [0.5, 0.5])
    assert out["Q"] == pytest.approx(1.0)
    assert any("below 5" in n for n in out.notes)


def test_chi_square_estimated_parameters_reduce_df():
    assert chi_square_gof([5, 6, 9, 10], [7.5] * 4, estimated_parameters=1)["df"] == 2
    with pytest.raises(DomainError):
        chi_square_gof([5, 5], [5, 5], estimated_parameters=1)


def test_chi_square_nonnegative():
    rng = np.random.default_rng(5)
    for _ in range(50):
        obs = rng.integers(0, 20, size=5)
        if obs.sum() == 0:
            continue
        assert chi_square_gof(obs, [0.2] * 5)["Q"] >= 0


# ---------------------------------------------------------------- KS one sample


def test_ks_single_point_at_median():
    assert ks_one_sample([0.0], Normal())["Dn"] == 0.5


@pytest.mark.parametrize("n", [1, 4, 9, 30])
def test_ks_quantile_midpoints(n):
    law = Normal(2, 3)
    x = [NormalDist(2, 3).inv_cdf((2 * i - 1) / (2 * n)) for i in range(1, n + 1)]
    assert ks_one_sample(x, law)["Dn"] == pytest.approx(1 / (2 * n), abs=1e-12)


def test_ks_matches_ecdf_sweep():
    x = [0.91, 0.12, 0.55, 0.33, 0.78]
    out = ks_one_sample(x, Uniform(0, 1))
    assert out["Dn"] == pytest.approx(ecdf_sweep(x, lambda v: v), abs=1e-15)
    assert out["Dn"] == max(out["Dn+"], out["Dn-"])


def test_ks_minus_needs_left_limit():
    # every point sits above its ECDF step; D- comes from the left limit
    out = ks_one_sample([0.9, 0.95], Uniform(0, 1))
    assert out["Dn-"] == pytest.approx(0.9, abs=1e-15)
    assert out["Dn+"] == pytest.approx(0.05, abs=1e-15)


def test_ks_p_values_are_kolmogorov_tail():
    out = ks_one_sample([0.1, 0.4, 0.45, 0.8], Uniform(0, 1))
    assert out.exact_double_p == pytest.approx(1 - kolmogorov_cdf(4, out["Dn"]), abs=1e-14)


def test_ks_accepts_plain_callable():
    a = ks_one_sample([0.2, 0.6], lambda v: min(1.0, max(0.0, v)))
    b = ks_one_sample([0.2, 0.6], Uniform(0, 1))
    assert a.statistics == b.statistics


def test_ks_rejects_bad_cdf():
    with pytest.raises(DomainError):
        ks_one_sample([0.2, 0.6], lambda v: 2.0)


def test_ks_monte_carlo_law():
    rng = np.random.default_rng(11)
    n, trials = 20, 100_000
    u = np.sort(rng.random((trials, n)), axis=1)
    d = np.array([ks_statistics(row, row)[2] for row in u])
    assert np.all((0 <= d) & (d <= 1))
    grid = np.quantile(d, np.linspace(0.0005, 0.9995, 400))
    emp = np.searchsorted(np.sort(d), grid, side="right") / trials
    dist = max(abs(e - kolmogorov_cdf(n, float(g))) for e, g in zip(emp, grid))
    assert dist < 0.01


# ------------------------------------------------------------------ Lilliefors


def test_lilliefors_affine_invariance():
    x = np.random.default_rng(2).normal(size=25)
    a, b = lilliefors(x), lilliefors(4.0 * x - 3.0)
    assert a["Dn"] == pytest.approx(b["Dn"], abs=1e-12)
    c = lilliefors(8.0 * x)  # power-of-two scale is exact in floating point
    assert a["Dn"] == c["Dn"]


def test_lilliefors_exponential_scale_invariance():
    x = np.random.default_rng(4).exponential(size=20)
    assert lilliefors(x, "exponential")["Dn"] == lilliefors(0.25 * x, "exponential")["Dn"]


def test_lilliefors_matches_sweep_against_fitted_law():
    x = [1.2, 0.4, 2.9, 1.7, 3.3, 0.8]
    nd = NormalDist(np.mean(x), np.std(x, ddof=1))
    assert lilliefors(x)["Dn"] == pytest.approx(ecdf_sweep(x, nd.cdf), abs=1e-14)


@pytest.mark.parametrize("n", [5, 10, 50])
def test_lilliefors_midpoint_sample_approaches_floor(n):
    # The fitted sd of midpoint quantiles is below one, so 1/(2n) is a floor
    # that this construction approaches from above rather than hits.
    z = np.array([NormalDist().inv_cdf((2 * i - 1) / (2 * n)) for i in range(1, n + 1)])
    d = lilliefors(z)["Dn"]
    assert 1 / (2 * n) <= d <= 1 / (2 * n) * 1.1


def test_lilliefors_bracket_below_one_percent():
    x = np.random.default_rng(0).exponential(size=40) ** 3
    out = lilliefors(x)
    assert out["Dn"] > out.extras["critical_values"]["0.01"]
    assert out.asymptotic_right_p == 0.01
    assert out.p_bracket_flags == {"asymptotic_right_p": "<"}


def test_lilliefors_errors():
    with pytest.raises(DataError):
        lilliefors([1.0, 1.0, 1.0, 1.0])
    with pytest.raises(DataError):
        lilliefors([1.0, -2.0, 3.0, 4.0], "exponential")
    with pytest.raises(DataError):
        lilliefors([1.0, 2.0, 3.0])
    with pytest.raises(DomainError):
        lilliefors([1.0, 2.0, 3.0, 4.0], "gamma")


# ------------------------------------------------------------ Anderson-Darling


def ad_by_hand(x):
    x = sorted(x)
    n = len(x)
    mean = sum(x) / n
    sd = math.sqrt(sum((v - mean) ** 2 for v in x) / (n - 1))
    F = [NormalDist(mean, sd).cdf(v) for v in x]
    s = 0.0
    for i in range(1, n + 1):
        s += (2 * i - 1) * (math.log(F[i - 1]) + math.log(1 - F[n - i]))
    return -n - s / n


def test_anderson_darling_formula():
    x = [2.1, 3.7, 1.4, 5.0, 2.8]
    out = anderson_darling(x)
    assert out["A2"] == pytest.approx(ad_by_hand(x), abs=1e-12)
    assert out["A2*"] == pytest.approx(out["A2"] * (1 + 0.75 / 5 + 2.25 / 25), abs=1e-14)


def test_anderson_darling_order_and_affine_invariance():
    x = np.random.default_rng(9).normal(size=12)
    assert anderson_darling(x)["A2"] == anderson_darling(x[::-1])["A2"]
    assert anderson_darling(x)["A2"] == pytest.approx(anderson_darling(3 * x + 10)["A2"], abs=1e-12)


def test_anderson_darling_exponential_scale_invariance():
    x = np.random.default_rng(6).exponential(size=15)
    assert anderson_darling(x, "exponential")["A2"] == anderson_darling(2.0 * x, "exponential")["A2"]


def test_anderson_darling_cdf_saturates():
    x = np.zeros(4000)
    x[-1] = 1.0
    with pytest.raises(NumericalError, match="order statistic 4000"):
        anderson_darling(x)


def test_anderson_darling_exponential_family_fits():
    out = anderson_darling(np.random.default_rng(1).exponential(size=30), "exponential")
    assert out.asymptotic_right_p in (0.01, 0.05, 0.1, 0.15, 0.2)
    assert out.p_bracket_flags["asymptotic_right_p"] in ("<", ">")


def test_exponential_target_object():
    out = ks_one_sample([0.5, 1.0, 2.0], Exponential(1.0))
    assert 0 <= out["Dn"] <= 1
