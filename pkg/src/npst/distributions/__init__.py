"""Classical laws, exact null laws of test statistics and critical-value tables."""

from .classical import (
    Binomial,
    ChiSquare,
    Exponential,
    Normal,
    Poisson,
    Uniform,
    cdf,
    pmf,
    quantile,
)
from .exact import FAMILIES, ExactNullDistribution, exact_distribution
from .kolmogorov import kolmogorov_cdf, kolmogorov_sf, smirnov_sf
from .tables import critical_table

__all__ = [
    "Binomial",
    "ChiSquare",
    "Exponential",
    "ExactNullDistribution",
    "FAMILIES",
    "Normal",
    "Poisson",
    "Uniform",
    "cdf",
    "critical_table",
    "exact_distribution",
    "kolmogorov_cdf",
    "kolmogorov_sf",
    "pmf",
    "quantile",
    "smirnov_sf",
]
