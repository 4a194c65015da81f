"""Nonparametric statistical tests with exact and asymptotic p-values.

Each test is a function taking data and returning a :class:`TestOutcome`;
:func:`format_report` renders it as text.
"""

from .association import (
    concordance_coefficient,
    daniels_trend,
    friedman,
    incomplete_concordance,
    kendall,
    page,
    partial_correlation,
    spearman,
)
from .core import (
    Alternative,
    CoverageError,
    DataError,
    DegenerateDataError,
    DesignError,
    DimensionError,
    DomainError,
    NPSTError,
    NumericalError,
    ParseError,
    TestOutcome,
    TieError,
    UnsupportedExactError,
    format_report,
)
from .count_data import contingency_coefficients, fisher_exact, mcnemar, multinomial_equality, ordered_equality
from .data import (
    DataTable,
    NumericSequence,
    StringSequence,
    read_sequence,
    read_table,
    write_sequence,
    write_table,
)
from .goodness_of_fit import anderson_darling, chi_square_gof, ks_one_sample, lilliefors
from .multi_sample import chakraborti_desu, extended_median_test, jonckheere_terpstra, kruskal_wallis
from .one_sample import population_quantile_test, quantile_confidence_interval, sign_test, wilcoxon_signed_ranks
from .randomness import number_of_runs, runs_up_down, runs_up_down_median, von_neumann_ranks
from .registry import list_tests, run_test
from .two_sample import (
    control_median_test,
    ks_two_sample,
    median_test,
    scale_test,
    van_der_waerden,
    wald_wolfowitz,
    wilcoxon_rank_sum,
)

__version__ = "1.0.0"

__all__ = [
    "Alternative",
    "CoverageError",
    "DataError",
    "DataTable",
    "DegenerateDataError",
    "DesignError",
    "DimensionError",
    "DomainError",
    "NPSTError",
    "NumericSequence",
    "NumericalError",
    "ParseError",
    "StringSequence",
    "TestOutcome",
    "TieError",
    "UnsupportedExactError",
    "anderson_darling",
    "chakraborti_desu",
    "chi_square_gof",
    "concordance_coefficient",
    "contingency_coefficients",
    "control_median_test",
    "daniels_trend",
    "extended_median_test",
    "fisher_exact",
    "format_report",
    "friedman",
    "incomplete_concordance",
    "jonckheere_terpstra",
    "kendall",
    "kruskal_wallis",
    "ks_one_sample",
    "ks_two_sample",
    "lilliefors",
    "list_tests",
    "mcnemar",
    "median_test",
    "multinomial_equality",
    "number_of_runs",
    "ordered_equality",
    "page",
    "partial_correlation",
    "population_quantile_test",
    "quantile_confidence_interval",
    "read_sequence",
    "read_table",
    "run_test",
    "runs_up_down",
    "runs_up_down_median",
    "scale_test",
    "sign_test",
    "spearman",
    "van_der_waerden",
    "von_neumann_ranks",
    "wald_wolfowitz",
    "wilcoxon_rank_sum",
    "wilcoxon_signed_ranks",
    "write_sequence",
    "write_table",
]
