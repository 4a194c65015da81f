"""Exact tails of every test against exhaustive enumeration."""

import pytest

from exact_sweep import CHECKS


@pytest.mark.parametrize("check", [c for _, c in CHECKS], ids=[name for name, _ in CHECKS])
def test_exact_tails_match_enumeration(check):
    assert check() > 0
