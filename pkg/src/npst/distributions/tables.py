"""Critical-value tables for Lilliefors and Anderson-Darling statistics.

The values live in ``critical_values.txt`` next to this module, one entry per
line, so they can be audited without reading code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from ..core import DomainError

RESOURCE = "critical_values.txt"


@dataclass(frozen=True)
class CriticalTable:
    """Critical values of one statistic for one null family."""

    statistic: str
    family: str
    alphas: tuple[float, ...]  # decreasing
    sizes: tuple[float, ...]  # tabulated n (empty if n-free)
    values: np.ndarray  # shape (len(sizes), len(alphas)) or (1, len(alphas))
    large_coefficients: tuple[float, ...] | None = None

    def critical_values(self, n: int) -> np.ndarray:
        """Critical values at every alpha for sample size n (linear in n between rows)."""
        if not self.sizes:
            return self.values[0].copy()
        lo = self.sizes[0]
        if n < lo:
            raise DomainError(f"{self.statistic} table for {self.family} starts at n = {int(lo)}, got n = {n}")
        if n > self.sizes[-1] and self.large_coefficients is not None:
            return np.asarray(self.large_coefficients) / math.sqrt(n)
        if n >= self.sizes[-1]:
            return self.values[-1].copy()
        return np.array([np.interp(n, self.sizes, self.values[:, j]) for j in range(len(self.alphas))])

    def bracket(self, statistic: float, n: int) -> tuple[float, str]:
        """Tightest table bound on the right-tail p-value.

        Returns ``(alpha, "<")`` when the statistic reaches the critical value
        for alpha (smallest such alpha), or ``(largest alpha, ">")`` when it
        reaches none.
        """
        crit = self.critical_values(n)
        crossed = [a for a, c in zip(self.alphas, crit) if statistic >= c]
        if crossed:
            return min(crossed), "<"
        return max(self.alphas), ">"


@lru_cache(maxsize=1)
def _raw_entries() -> tuple[tuple[str, str, str, float, float], ...]:
    text = resources.files(__package__).joinpath(RESOURCE).read_text(encoding="utf-8")
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 5:
            raise ValueError(f"{RESOURCE}:{lineno}: expected 5 fields, got {len(parts)}")
        stat, fam, n, alpha, crit = parts
        rows.append((stat, fam, n, float(alpha), float(crit)))
    return tuple(rows)


@lru_cache(maxsize=None)
def critical_table(statistic: str, family: str) -> CriticalTable:
    """Load the table for ``statistic`` in {lilliefors, anderson_darling}, ``family`` in {normal, exponential}."""
    entries = [e for e in _raw_entries() if e[0] == statistic and e[1] == family]
    if not entries:
        raise DomainError(f"no critical-value table for {statistic} / {family}")
    alphas = tuple(sorted({e[3] for e in entries}, reverse=True))
    by_n: dict[str, dict[float, float]] = {}
    for _, _, n, a, c in entries:
        by_n.setdefault(n, {})[a] = c
    large = None
    if "inf" in by_n:
        coef = by_n.pop("inf")
        large = tuple(coef[a] for a in alphas)
    if "*" in by_n:
        values = np.array([[by_n["*"][a] for a in alphas]])
        return CriticalTable(statistic, family, alphas, (), values, large)
    sizes = sorted(by_n, key=float)
    values = np.array([[by_n[n][a] for a in alphas] for n in sizes])
    values.setflags(write=False)
    return CriticalTable(statistic, family, alphas, tuple(float(n) for n in sizes), values, large)
