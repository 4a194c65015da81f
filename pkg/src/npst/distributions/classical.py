"""Classical discrete and continuous laws.

Thin, validated wrappers: normal cdf through ``math.erfc``; incomplete-gamma
and inverse functions from :mod:`scipy.special`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from scipy import special

from ..core import DomainError

_SQRT2 = math.sqrt(2.0)


def _check_probability(p: float) -> float:
    p = float(p)
    if not 0.0 < p < 1.0:
        raise DomainError(f"quantile level must lie in (0, 1), got {p!r}")
    return p


@dataclass(frozen=True)
class Binomial:
    n: int
    p: float

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError(f"binomial trials must be a nonnegative integer, got {self.n!r}")
        if not 0.0 <= self.p <= 1.0:
            raise DomainError(f"binomial success probability must lie in [0, 1], got {self.p!r}")

    def pmf(self, k: int) -> float:
        n, p = int(self.n), float(self.p)
        if k != int(k) or k < 0 or k > n:
            return 0.0
        k = int(k)
        if p == 0.5:
            return math.comb(n, k) / 2**n
        if p == 0.0 or p == 1.0:
            return float(k == (n if p == 1.0 else 0))
        if n <= 1000:
            return math.comb(n, k) * p**k * (1.0 - p) ** (n - k)
        logp = (
            math.lgamma(n + 1) - math.lgamma(k + 1) - math.lgamma(n - k + 1)
            + k * math.log(p) + (n - k) * math.log1p(-p)
        )
        return math.exp(logp)

    def cdf(self, x: float) -> float:
        if x < 0:
            return 0.0
        k = math.floor(x)
        if k >= self.n:
            return 1.0
        return float(special.bdtr(k, int(self.n), float(self.p)))

    def sf(self, x: float) -> float:
        """P(X > x)."""
        if x < 0:
            return 1.0
        k = math.floor(x)
        if k >= self.n:
            return 0.0
        return float(special.bdtrc(k, int(self.n), float(self.p)))

    def mean(self) -> float:
        return self.n * self.p

    def variance(self) -> float:
        return self.n * self.p * (1.0 - self.p)


@dataclass(frozen=True)
class Poisson:
    rate: float

    def __post_init__(self):
        if not self.rate > 0:
            raise DomainError(f"Poisson rate must be positive, got {self.rate!r}")

    def pmf(self, k: int) -> float:
        if k != int(k) or k < 0:
            return 0.0
        lam = float(self.rate)
        return math.exp(k * math.log(lam) - lam - math.lgamma(k + 1))

    def cdf(self, x: float) -> float:
        if x < 0:
            return 0.0
        return float(special.pdtr(math.floor(x), float(self.rate)))

    def sf(self, x: float) -> float:
        if x < 0:
            return 1.0
        return float(special.pdtrc(math.floor(x), float(self.rate)))

    def mean(self) -> float:
        return float(self.rate)

    def variance(self) -> float:
        return float(self.rate)


@dataclass(frozen=True)
class Normal:
    mean: float = 0.0
    sigma: float = 1.0

    def __post_init__(self):
        if not (math.isfinite(self.mean) and self.sigma > 0 and math.isfinite(self.sigma)):
            raise DomainError(f"normal law needs finite mean and sigma > 0, got {self.mean!r}, {self.sigma!r}")

    def pdf(self, x: float) -> float:
        z = (x - self.mean) / self.sigma
        return math.exp(-0.5 * z * z) / (self.sigma * math.sqrt(2 * math.pi))

    def cdf(self, x: float) -> float:
        return 0.5 * math.erfc(-(x - self.mean) / (self.sigma * _SQRT2))

    def sf(self, x: float) -> float:
        return 0.5 * math.erfc((x - self.mean) / (self.sigma * _SQRT2))

    def quantile(self, p: float) -> float:
        return self.mean + self.sigma * float(special.ndtri(_check_probability(p)))


@dataclass(frozen=True)
class ChiSquare:
    df: float

    def __post_init__(self):
        if not self.df >= 1:
            raise DomainError(f"chi-square degrees of freedom must be >= 1, got {self.df!r}")

    def pdf(self, x: float) -> float:
        if x <= 0:
            return 0.0
        k = self.df / 2.0
        return math.exp((k - 1) * math.log(x) - x / 2 - k * math.log(2) - math.lgamma(k))

    def cdf(self, x: float) -> float:
        if x <= 0:
            return 0.0
        return float(special.gammainc(self.df / 2.0, x / 2.0))

    def sf(self, x: float) -> float:
        if x <= 0:
            return 1.0
        return float(special.gammaincc(self.df / 2.0, x / 2.0))

    def quantile(self, p: float) -> float:
        return 2.0 * float(special.gammaincinv(self.df / 2.0, _check_probability(p)))


@dataclass(frozen=True)
class Exponential:
    rate: float = 1.0

    def __post_init__(self):
        if not self.rate > 0:
            raise DomainError(f"exponential rate must be positive, got {self.rate!r}")

    def pdf(self, x: float) -> float:
        return self.rate * math.exp(-self.rate * x) if x >= 0 else 0.0

    def cdf(self, x: float) -> float:
        return -math.expm1(-self.rate * x) if x > 0 else 0.0

    def sf(self, x: float) -> float:
        return math.exp(-self.rate * x) if x > 0 else 1.0

    def quantile(self, p: float) -> float:
        return -math.log1p(-_check_probability(p)) / self.rate


@dataclass(frozen=True)
class Uniform:
    lower: float = 0.0
    upper: float = 1.0

    def __post_init__(self):
        if not self.lower < self.upper:
            raise DomainError(f"uniform law needs lower < upper, got {self.lower!r}, {self.upper!r}")

    def pdf(self, x: float) -> float:
        return 1.0 / (self.upper - self.lower) if self.lower <= x <= self.upper else 0.0

    def cdf(self, x: float) -> float:
        if x <= self.lower:
            return 0.0
        if x >= self.upper:
            return 1.0
        return (x - self.lower) / (self.upper - self.lower)

    def sf(self, x: float) -> float:
        return 1.0 - self.cdf(x)

    def quantile(self, p: float) -> float:
        return self.lower + _check_probability(p) * (self.upper - self.lower)


DISCRETE = (Binomial, Poisson)
CONTINUOUS = (Normal, ChiSquare, Exponential, Uniform)


def pmf(dist, k: int) -> float:
    """Probability mass of a discrete law at ``k``."""
    if not isinstance(dist, DISCRETE):
        raise DomainError(f"pmf needs a discrete law, got {type(dist).__name__}")
    if k < 0:
        raise DomainError(f"pmf argument must be >= 0, got {k!r}")
    return dist.pmf(k)


def cdf(dist, x: float) -> float:
    """P(X <= x)."""
    return dist.cdf(x)


def quantile(dist, p: float) -> float:
    """Inverse cdf of a continuous law."""
    if not isinstance(dist, CONTINUOUS):
        raise DomainError(f"quantile needs a continuous law, got {type(dist).__name__}")
    return dist.quantile(p)


STANDARD_NORMAL = Normal()


def norm_cdf(z: float) -> float:
    return 0.5 * math.erfc(-z / _SQRT2)


def norm_sf(z: float) -> float:
    return 0.5 * math.erfc(z / _SQRT2)


def norm_ppf(p: float) -> float:
    return float(special.ndtri(p))


def chi2_sf(x: float, df: float) -> float:
    if x <= 0:
        return 1.0
    return float(special.gammaincc(df / 2.0, x / 2.0))
