"""Kolmogorov-Smirnov null laws for continuous data.

Finite-sample two-sided laws come from :data:`scipy.stats.kstwo` (Simard and
L'Ecuyer's exact algorithm), one-sided ones from :func:`scipy.special.smirnov`
(Birnbaum-Tingey sum).  The limiting laws are the Kolmogorov series and
exp(-2 x^2).
"""

from __future__ import annotations

import math

from scipy import special, stats

from ..core import DomainError


def _check(n: int, d: float):
    if int(n) != n or n < 1:
        raise DomainError(f"sample size must be a positive integer, got {n!r}")
    if not 0.0 <= d <= 1.0:
        raise DomainError(f"KS statistic must lie in [0, 1], got {d!r}")


def kolmogorov_cdf(n: int, d: float) -> float:
    """Exact P(D_n <= d) for a sample of n from a continuous law."""
    _check(n, d)
    if d >= 1.0:
        return 1.0
    return float(stats.kstwo.cdf(d, int(n)))


def kolmogorov_sf(n: int, d: float) -> float:
    """Exact P(D_n >= d) (equal to P(D_n > d) for continuous data)."""
    _check(n, d)
    if d <= 0.0:
        return 1.0
    return float(stats.kstwo.sf(d, int(n)))


def smirnov_sf(n: int, d: float) -> float:
    """Exact P(D_n^+ >= d); D_n^- has the same law."""
    _check(n, d)
    if d <= 0.0:
        return 1.0
    return float(special.smirnov(int(n), d))


def kolmogorov_limit_sf(x: float) -> float:
    """P(K >= x) for the limiting Kolmogorov law of sqrt(n) D_n."""
    if x <= 0:
        return 1.0
    return float(special.kolmogorov(x))


def smirnov_limit_sf(x: float) -> float:
    """P(sqrt(n) D_n^+ >= x) in the limit."""
    if x <= 0:
        return 1.0
    return math.exp(-2.0 * x * x)
