import numpy as np
import pytest

from npst import number_of_runs, runs_up_down, runs_up_down_median, von_neumann_ranks
from npst.core import DataError, DegenerateDataError, TieError
from npst.data import StringSequence
from npst.distributions import exact_distribution


def test_alternating_sequence():
    out = number_of_runs("XYXYXY")
    assert out["R"] == 6
    assert out.exact_right_p == pytest.approx(0.1, abs=1e-15)


def test_clustered_sequence():
    out = number_of_runs(StringSequence(list("XXXYYY")))
    assert out["R"] == 2
    assert out.exact_left_p == pytest.approx(0.1, abs=1e-15)


def test_two_symbols_only():
    out = number_of_runs("XY")
    assert out["R"] == 2
    assert out.exact_left_p == 1.0 and out.exact_right_p == 1.0


@pytest.mark.parametrize("seq", ["XXXX", "XYZ"])
def test_symbol_count_error(seq):
    with pytest.raises(DataError):
        number_of_runs(seq)


def test_symbol_labels_do_not_matter():
    a = number_of_runs("XXYXYYYX")
    b = number_of_runs("YYXYXXXY")
    assert a.statistics == b.statistics
    assert (a.exact_left_p, a.exact_right_p) == (b.exact_left_p, b.exact_right_p)


def test_up_down_single_run():
    assert runs_up_down([1, 2, 3, 4, 5])["R"] == 1


def test_up_down_count():
    assert runs_up_down([1, 3, 2, 4])["R"] == 3


def test_up_down_ties():
    with pytest.raises(TieError):
        runs_up_down([1, 2, 2, 3])


def test_median_runs_examples():
    out = runs_up_down_median([1, 5, 1, 5, 1, 5])
    assert out["R"] == 6 and out.exact_right_p == pytest.approx(0.1)
    out = runs_up_down_median([1, 1, 1, 5, 5, 5])
    assert out["R"] == 2 and out.exact_left_p == pytest.approx(0.1)
    with pytest.raises(DegenerateDataError):
        runs_up_down_median([2, 2, 2, 2])


def test_von_neumann_monotone_and_reversal():
    up = von_neumann_ranks([10, 20, 30, 40])
    assert up["NM"] == 3
    assert von_neumann_ranks([1, 2, 3, 4]).statistics == von_neumann_ranks([4, 3, 2, 1]).statistics


def test_tails_partition_support():
    law = exact_distribution("runs_count", (5, 5))
    for r in law.support[:-1]:
        assert law.left_tail(r) + law.right_tail(r + 1) == pytest.approx(1.0, abs=1e-15)


@pytest.mark.parametrize("test", [runs_up_down, von_neumann_ranks])
def test_increasing_transform_invariance(test):
    x = np.random.default_rng(3).normal(size=15)
    a, b = test(x), test(np.exp(x))
    assert a.statistics == b.statistics
    assert a.exact_left_p == b.exact_left_p
