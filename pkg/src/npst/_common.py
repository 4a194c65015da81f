"""Small helpers shared by the test-family modules."""

from __future__ import annotations

import math

from .core import double_tail
from .distributions.classical import chi2_sf, norm_cdf, norm_sf
from .distributions.exact import ExactNullDistribution


def exact_tails(law: ExactNullDistribution, statistic: float) -> dict:
    left, right = law.left_tail(statistic), law.right_tail(statistic)
    return {"exact_left_p": left, "exact_right_p": right, "exact_double_p": double_tail(left, right)}


def normal_tails(z: float) -> dict:
    if math.isnan(z):
        return {}
    left, right = norm_cdf(z), norm_sf(z)
    return {
        "asymptotic_left_p": left,
        "asymptotic_right_p": right,
        "asymptotic_double_p": double_tail(left, right),
    }


def standardize(value: float, mean: float, variance: float) -> float:
    if variance <= 0:
        return math.nan
    return (value - mean) / math.sqrt(variance)


def chi2_right(q: float, df: float) -> dict:
    return {"asymptotic_right_p": chi2_sf(q, df)}
