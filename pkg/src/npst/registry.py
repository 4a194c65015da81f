"""Catalogue of the 40 tests: canonical names, families, inputs and parameters.

The catalogue drives the command line front end and can be used directly:

>>> from npst.registry import get_test
>>> get_test("sign_test").title
'Sign test'
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Any, Callable

import numpy as np

from . import association, count_data, goodness_of_fit, multi_sample, one_sample, randomness, two_sample
from .core import DIRECTIONAL, Alternative, DomainError, TestOutcome
from .distributions.classical import Exponential, Normal, Uniform

FAMILIES = (
    "Tests of randomness",
    "Tests of goodness of fit",
    "One-sample and paired-sample procedures",
    "Two-sample general procedures",
    "Tests for the location problem",
    "Tests for the scale problem",
    "Tests of equality of independent samples",
    "Measures of association for bivariate samples",
    "Measures of association in multiple classifications",
    "Analysis of count data",
)

# what the data argument of a test looks like
INPUT_KINDS = {
    "sequence": "numeric sequence",
    "symbols": "sequence of two symbols",
    "counts": "sequence of category counts",
    "paired": "table with 2 columns (pairs)",
    "two_samples": "two sequences, or a table whose 2 columns are the samples",
    "k_samples": "one sequence per sample, or a table whose columns are the samples",
    "table": "table",
    "design": "table with a sentinel value for unranked cells",
}

REQUIRED = object()

_DIST_RE = re.compile(r"^\s*([a-z]+)\s*(?:\(([^)]*)\))?\s*$")
_DISTRIBUTIONS = {"normal": Normal, "exponential": Exponential, "uniform": Uniform}


def parse_distribution(text: str):
    """``normal(0,1)``, ``exponential(2)`` or ``uniform(0,1)`` as a distribution object."""
    m = _DIST_RE.match(str(text).lower())
    if not m or m.group(1) not in _DISTRIBUTIONS:
        raise DomainError(
            f"bad distribution {text!r}; expected normal(mean,sd), exponential(rate) or uniform(lower,upper)"
        )
    args = [float(a) for a in m.group(2).split(",")] if m.group(2) and m.group(2).strip() else []
    try:
        return _DISTRIBUTIONS[m.group(1)](*args)
    except TypeError:
        raise DomainError(f"wrong number of parameters in {text!r}") from None


def _float_list(text: str) -> tuple[float, ...]:
    return tuple(float(t) for t in re.split(r"[,;\s]+", str(text).strip()) if t)


def _choice(*options: str) -> Callable[[str], str]:
    def convert(text: str) -> str:
        value = str(text).strip().lower()
        if value not in options:
            raise ValueError(f"expected one of {', '.join(options)}")
        return value

    convert.__name__ = "|".join(options)
    return convert


@dataclass(frozen=True)
class Param:
    name: str
    convert: Callable[[str], Any]
    default: Any = REQUIRED
    help: str = ""

    def signature(self) -> str:
        kind = getattr(self.convert, "__name__", "value")
        kind = _KIND_WORDS.get(kind, kind)
        if self.default is REQUIRED:
            return f"{self.name}=<{kind}>"
        if self.default is None:
            return f"[{self.name}=<{kind}>]"
        return f"[{self.name}={self.default}]"


_KIND_WORDS = {"float": "real", "int": "integer", "parse_distribution": "distribution", "_float_list": "reals"}


@dataclass(frozen=True)
class TestSpec:
    name: str
    title: str
    family: str
    input: str
    function: Callable[..., TestOutcome]
    alternatives: tuple[Alternative, ...] = ()
    params: tuple[Param, ...] = ()
    fixed: dict = field(default_factory=dict)

    __test__ = False

    def default_alternative(self) -> Alternative | None:
        return self.alternatives[0] if self.alternatives else None

    def signature(self) -> str:
        parts = [f"input: {self.input}"]
        if self.alternatives:
            parts.append("alt: " + "|".join(_ALT_WORDS[a] for a in self.alternatives))
        if self.params:
            parts.append("params: " + " ".join(p.signature() for p in self.params))
        return "; ".join(parts)

    def validate(self, raw: dict[str, str]) -> dict[str, Any]:
        """Convert ``key=value`` strings into keyword arguments."""
        known = {p.name: p for p in self.params}
        unknown = sorted(set(raw) - set(known))
        if unknown:
            allowed = ", ".join(known) or "none"
            raise DomainError(f"{self.name}: unknown parameter(s) {', '.join(unknown)}; allowed: {allowed}")
        out = {}
        for p in self.params:
            if p.name in raw:
                try:
                    out[p.name] = p.convert(raw[p.name])
                except (ValueError, TypeError) as exc:
                    raise DomainError(f"{self.name}: bad value {raw[p.name]!r} for {p.name}: {exc}") from None
            elif p.default is REQUIRED:
                raise DomainError(f"{self.name}: parameter {p.name} is required")
            else:
                out[p.name] = p.default
        return out

    def check_alternative(self, alternative) -> Alternative | None:
        if alternative is None:
            return self.default_alternative()
        alt = Alternative.parse(alternative)
        if not self.alternatives:
            if alt is not Alternative.TWO_SIDED:
                raise DomainError(f"{self.name} takes no alternative")
            return None
        if alt not in self.alternatives:
            raise DomainError(
                f"{self.name} does not support the alternative {_ALT_WORDS[alt]!r} "
                f"(supported: {', '.join(_ALT_WORDS[a] for a in self.alternatives)})"
            )
        return alt


_ALT_WORDS = {
    Alternative.TWO_SIDED: "two",
    Alternative.LEFT: "left",
    Alternative.RIGHT: "right",
    Alternative.ORDERED: "ordered",
    Alternative.CONTROL: "control",
}

_FAMILY_OPTION = Param("family", _choice("normal", "exponential"), "normal")
_ORDERED = (Alternative.ORDERED, Alternative.TWO_SIDED, Alternative.LEFT, Alternative.RIGHT)


def _spec(name, title, family_index, input_kind, function, alternatives=DIRECTIONAL, params=(), **fixed):
    return TestSpec(name, title, FAMILIES[family_index], input_kind, function, tuple(alternatives), tuple(params), fixed)


def _scale(variant: str, title: str) -> TestSpec:
    return _spec(variant, title, 5, "two_samples", two_sample.scale_test, variant=variant)


TESTS: tuple[TestSpec, ...] = (
    _spec("number_of_runs", "Number of runs", 0, "symbols", randomness.number_of_runs),
    _spec("runs_up_down", "Runs up and down", 0, "sequence", randomness.runs_up_down),
    _spec("runs_up_down_median", "Runs up and down (median)", 0, "sequence", randomness.runs_up_down_median),
    _spec("von_neumann", "Von Neumann rank ratio", 0, "sequence", randomness.von_neumann_ranks),
    _spec(
        "chi_square_gof", "Chi-square goodness of fit", 1, "counts", goodness_of_fit.chi_square_gof, (),
        (
            Param("expected", _float_list, None, "expected probabilities or counts (default: uniform)"),
            Param("estimated_parameters", int, 0),
        ),
    ),
    _spec(
        "ks_one_sample", "Kolmogorov-Smirnov one-sample", 1, "sequence", goodness_of_fit.ks_one_sample,
        params=(Param("target", parse_distribution, REQUIRED, "normal(m,s), exponential(rate), uniform(a,b)"),),
    ),
    _spec("lilliefors", "Lilliefors", 1, "sequence", goodness_of_fit.lilliefors, (), (_FAMILY_OPTION,)),
    _spec("anderson_darling", "Anderson-Darling", 1, "sequence", goodness_of_fit.anderson_darling, (), (_FAMILY_OPTION,)),
    _spec(
        "quantile_confidence_interval", "Confidence interval for a quantile", 2, "sequence",
        one_sample.quantile_confidence_interval, (),
        (Param("q", float, 0.5), Param("confidence", float, 0.95)),
    ),
    _spec(
        "population_quantile", "Population quantile", 2, "sequence", one_sample.population_quantile_test,
        params=(Param("q", float, 0.5), Param("hypothesized", float)),
    ),
    _spec("sign_test", "Sign test", 2, "paired", one_sample.sign_test),
    _spec("wilcoxon_signed_ranks", "Wilcoxon signed-ranks", 2, "paired", one_sample.wilcoxon_signed_ranks),
    _spec(
        "wald_wolfowitz", "Wald-Wolfowitz runs", 3, "two_samples", two_sample.wald_wolfowitz,
        (Alternative.LEFT, Alternative.TWO_SIDED, Alternative.RIGHT),
    ),
    _spec("median_test", "Median test", 3, "two_samples", two_sample.median_test),
    _spec("control_median", "Control median", 3, "two_samples", two_sample.control_median_test),
    _spec("ks_two_sample", "Kolmogorov-Smirnov two-sample", 3, "two_samples", two_sample.ks_two_sample),
    _spec(
        "wilcoxon_rank_sum", "Wilcoxon rank-sum", 4, "two_samples", two_sample.wilcoxon_rank_sum,
        params=(Param("confidence", float, None, "level of the shift interval"),),
    ),
    _spec("van_der_waerden", "Van der Waerden", 4, "two_samples", two_sample.van_der_waerden),
    _scale("david_barton", "David-Barton"),
    _scale("freund_ansari_bradley", "Freund-Ansari-Bradley"),
    _scale("mood", "Mood"),
    _scale("klotz", "Klotz"),
    _scale("siegel_tukey", "Siegel-Tukey"),
    _scale("sukhatme", "Sukhatme"),
    _spec("extended_median", "Extended median test", 6, "k_samples", multi_sample.extended_median_test, ()),
    _spec("kruskal_wallis", "Kruskal-Wallis", 6, "k_samples", multi_sample.kruskal_wallis, ()),
    _spec("jonckheere_terpstra", "Jonckheere-Terpstra", 6, "k_samples", multi_sample.jonckheere_terpstra, _ORDERED),
    _spec(
        "chakraborti_desu", "Chakraborti-Desu", 6, "k_samples", multi_sample.chakraborti_desu,
        (Alternative.CONTROL, Alternative.TWO_SIDED, Alternative.LEFT, Alternative.RIGHT),
        (Param("control_index", int, 0, "0-based index of the control sample"),),
    ),
    _spec("kendall", "Kendall tau", 7, "table", association.kendall),
    _spec("daniels_trend", "Daniels trend", 7, "sequence", association.daniels_trend),
    _spec("friedman", "Friedman", 8, "table", association.friedman, ()),
    _spec("page", "Page", 8, "table", association.page, _ORDERED),
    _spec("concordance_coefficient", "Concordance coefficient", 8, "table", association.concordance_coefficient, ()),
    _spec(
        "incomplete_concordance", "Incomplete concordance", 8, "design", association.incomplete_concordance, (),
        (
            Param("missing", float, REQUIRED, "cell value marking an object a judge did not rank"),
            Param("design", _choice("youden", "latin"), None),
        ),
    ),
    _spec("partial_correlation", "Partial correlation (Kendall)", 8, "table", association.partial_correlation),
    _spec("contingency_coefficient", "Contingency coefficient", 9, "table", count_data.contingency_coefficients, ()),
    _spec("fisher_exact", "Fisher exact", 9, "table", count_data.fisher_exact),
    _spec("mcnemar", "McNemar", 9, "table", count_data.mcnemar, ()),
    _spec("multinomial_equality", "Multinomial equality", 9, "counts", count_data.multinomial_equality, ()),
    _spec("ordered_equality", "Ordered equality", 9, "counts", count_data.ordered_equality, _ORDERED),
)

_BY_NAME = {t.name: t for t in TESTS}


def test_names() -> list[str]:
    return [t.name for t in TESTS]


def get_test(name: str) -> TestSpec:
    key = str(name).strip().lower().replace("-", "_")
    try:
        return _BY_NAME[key]
    except KeyError:
        raise DomainError(f"unknown test {name!r}; valid names: {', '.join(test_names())}") from None


def run_test(name: str, data, alternative=None, **params) -> TestOutcome:
    """Run a catalogued test on already-parsed data.

    ``data`` is a single object, or a list of samples for the ``two_samples``
    and ``k_samples`` kinds.  ``params`` may be strings (as typed on a
    command line) or already converted values.
    """
    spec = get_test(name)
    raw = {k: v for k, v in params.items() if isinstance(v, str)}
    kwargs = spec.validate(raw)
    kwargs.update({k: v for k, v in params.items() if not isinstance(v, str)})
    alt = spec.check_alternative(alternative)
    if alt is not None:
        kwargs["alternative"] = alt
    kwargs.update(spec.fixed)
    if spec.name == "chi_square_gof":
        expected = kwargs.pop("expected")
        n = len(data)
        return spec.function(data, expected if expected is not None else [1.0 / n] * n, **kwargs)
    if spec.name == "incomplete_concordance":
        layout = np.asarray(data, dtype=float)
        blocks = association.blocks_from_rows(layout, kwargs.pop("missing"))
        return spec.function(blocks, n_objects=layout.shape[1], **kwargs)
    if spec.input == "two_samples":
        x, y = data
        return spec.function(x, y, **kwargs)
    return spec.function(data, **kwargs)


def list_tests() -> str:
    """All tests grouped by family, one line each with its signature."""
    lines = []
    for family in FAMILIES:
        lines.append(f"{family}:")
        for t in TESTS:
            if t.family == family:
                lines.append(f"  {t.name:<30} {t.signature()}")
    return "\n".join(lines) + "\n"


__all__ = ["FAMILIES", "TESTS", "TestSpec", "Param", "get_test", "run_test", "list_tests", "test_names", "parse_distribution"]
