"""Outcome container, alternative vocabulary and report formatting.

Every test in the package is a pure function returning a :class:`TestOutcome`.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Iterable, Mapping


class NPSTError(Exception):
    """Base class for all errors raised by the package."""


class DataError(NPSTError, ValueError):
    """Input data violate a precondition of the requested operation."""


class ParseError(DataError):
    """A data file does not follow its grammar."""


class DimensionError(ParseError):
    """Table dimensions are inconsistent (ragged rows, wrong header counts)."""


class TieError(DataError):
    """Ties make the requested statistic ill-defined."""


class DegenerateDataError(DataError):
    """The data leave nothing to test (all values equal, no informative pairs...)."""


class DesignError(DataError):
    """An incomplete block design is not balanced."""


class CoverageError(DataError):
    """No order-statistic interval reaches the requested confidence."""

    def __init__(self, message: str, max_confidence: float):
        super().__init__(message)
        self.max_confidence = max_confidence


class DomainError(NPSTError, ValueError):
    """A parameter lies outside the domain of a distribution or operation."""


class NumericalError(NPSTError, ArithmeticError):
    """A statistic cannot be evaluated in floating point (log of zero...)."""


class UnsupportedExactError(NPSTError):
    """The exact null law is outside the computable budget."""


class Alternative(str, enum.Enum):
    """Shape of the alternative hypothesis."""

    TWO_SIDED = "two_sided"
    LEFT = "left"
    RIGHT = "right"
    ORDERED = "ordered_increasing"
    CONTROL = "control_comparison"

    @classmethod
    def parse(cls, value: "Alternative | str") -> "Alternative":
        if isinstance(value, Alternative):
            return value
        key = str(value).strip().lower().replace("-", "_")
        try:
            return _ALIASES[key]
        except KeyError:
            raise DomainError(
                f"unknown alternative {value!r}; expected one of "
                + ", ".join(sorted(_ALIASES))
            ) from None


_ALIASES = {
    "two_sided": Alternative.TWO_SIDED,
    "two": Alternative.TWO_SIDED,
    "double": Alternative.TWO_SIDED,
    "left": Alternative.LEFT,
    "less": Alternative.LEFT,
    "right": Alternative.RIGHT,
    "greater": Alternative.RIGHT,
    "ordered_increasing": Alternative.ORDERED,
    "ordered": Alternative.ORDERED,
    "control_comparison": Alternative.CONTROL,
    "control": Alternative.CONTROL,
}

DIRECTIONAL = (Alternative.TWO_SIDED, Alternative.LEFT, Alternative.RIGHT)
OMNIBUS = (Alternative.TWO_SIDED,)


def check_alternative(alternative, allowed: Iterable[Alternative], test_name: str) -> Alternative:
    alt = Alternative.parse(alternative)
    allowed = tuple(allowed)
    if alt not in allowed:
        raise DomainError(
            f"{test_name} does not define the alternative {alt.value!r} "
            f"(supported: {', '.join(a.value for a in allowed)})"
        )
    return alt


P_FIELDS = (
    "exact_left_p",
    "exact_right_p",
    "exact_double_p",
    "asymptotic_left_p",
    "asymptotic_right_p",
    "asymptotic_double_p",
)

# how the two-sided p-value was obtained
DOUBLING = "doubling"
TWO_SIDED_STATISTIC = "two_sided_statistic"
POINT_PROBABILITY = "point_probability"


def double_tail(left: float | None, right: float | None) -> float | None:
    """Two-sided p-value by the doubling convention, capped at one."""
    if left is None or right is None:
        return None
    return min(1.0, 2.0 * min(left, right))


def _clip_probability(name: str, value: float | None) -> float | None:
    if value is None:
        return None
    value = float(value)
    if math.isnan(value):
        raise NumericalError(f"{name} is NaN")
    # cumulative sums of floats may overshoot by an ulp or two
    if -1e-12 < value < 0.0:
        value = 0.0
    elif 1.0 < value < 1.0 + 1e-12:
        value = 1.0
    if not 0.0 <= value <= 1.0:
        raise NumericalError(f"{name}={value!r} is not a probability")
    return value


@dataclass(frozen=True)
class TestOutcome:
    """Statistics and p-values produced by one test run.

    Attributes
    ----------
    test_name : str
        Human readable name of the procedure.
    statistics : mapping
        Named statistics in reporting order (``"W+"``, ``"Dn"``, ``"H"``...).
    alternative : Alternative
        Alternative the caller asked for; selects :meth:`p_value`.
    exact_left_p, exact_right_p, exact_double_p : float or None
        Tail probabilities under the exact null law. Absent when the exact
        law is out of budget or only tabulated.
    asymptotic_left_p, asymptotic_right_p, asymptotic_double_p : float or None
        Tail probabilities under the limiting law.
    p_bracket_flags : mapping
        ``field name -> "<" or ">"`` for p-values that are table bounds
        rather than point values.
    double_rule : str
        ``"doubling"``, ``"two_sided_statistic"`` or ``"point_probability"``.
    notes : tuple of str
        Conventions applied (dropped zeros, tie handling, adjustments...).
    extras : mapping
        Non-scalar results such as confidence intervals or score vectors.
    """

    __test__ = False  # keep pytest from collecting this class

    test_name: str
    statistics: Mapping[str, float]
    alternative: Alternative = Alternative.TWO_SIDED
    exact_left_p: float | None = None
    exact_right_p: float | None = None
    exact_double_p: float | None = None
    asymptotic_left_p: float | None = None
    asymptotic_right_p: float | None = None
    asymptotic_double_p: float | None = None
    p_bracket_flags: Mapping[str, str] = field(default_factory=dict)
    double_rule: str = DOUBLING
    notes: tuple[str, ...] = ()
    extras: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not self.statistics:
            raise ValueError("a test outcome needs at least one statistic")
        stats = {str(k): float(v) for k, v in self.statistics.items()}
        object.__setattr__(self, "statistics", MappingProxyType(stats))
        object.__setattr__(self, "alternative", Alternative.parse(self.alternative))
        for name in P_FIELDS:
            object.__setattr__(self, name, _clip_probability(name, getattr(self, name)))
        flags = dict(self.p_bracket_flags)
        for name, flag in flags.items():
            if name not in P_FIELDS or flag not in ("<", ">"):
                raise ValueError(f"bad bracket flag {name}={flag!r}")
        object.__setattr__(self, "p_bracket_flags", MappingProxyType(flags))
        object.__setattr__(self, "notes", tuple(self.notes))
        object.__setattr__(self, "extras", MappingProxyType(dict(self.extras)))

    def __getitem__(self, name: str) -> float:
        return self.statistics[name]

    def p_value(self, exact: bool | None = None) -> float | None:
        """P-value matching :attr:`alternative`.

        Exact values are preferred when present unless ``exact=False``.
        Omnibus statistics (chi-square type) fall back to the right tail.
        """
        alt = self.alternative
        if alt is Alternative.LEFT or alt is Alternative.CONTROL:
            tails = ("left",)
        elif alt is Alternative.TWO_SIDED:
            tails = ("double", "right")
        else:
            tails = ("right",)
        kinds = {None: ("exact", "asymptotic"), True: ("exact",), False: ("asymptotic",)}[exact]
        for tail in tails:
            for kind in kinds:
                value = getattr(self, f"{kind}_{tail}_p")
                if value is not None:
                    return value
        return None

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "test_name": self.test_name,
            "alternative": self.alternative.value,
            "statistics": dict(self.statistics),
        }
        for name in P_FIELDS:
            out[name] = getattr(self, name)
        out["p_bracket_flags"] = dict(self.p_bracket_flags)
        out["double_rule"] = self.double_rule
        out["notes"] = list(self.notes)
        out["extras"] = {k: _plain(v) for k, v in self.extras.items()}
        return out


def _plain(value):
    if hasattr(value, "to_dict"):
        return value.to_dict()
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, Mapping):
        return {str(k): _plain(v) for k, v in value.items()}
    if hasattr(value, "item"):  # numpy scalar
        return value.item()
    return value


_P_LABELS = {
    "exact_left_p": "Exact left-tail p-value",
    "exact_right_p": "Exact right-tail p-value",
    "exact_double_p": "Exact double-tail p-value",
    "asymptotic_left_p": "Asymptotic left-tail p-value",
    "asymptotic_right_p": "Asymptotic right-tail p-value",
    "asymptotic_double_p": "Asymptotic double-tail p-value",
}


def _fmt(value) -> str:
    if isinstance(value, bool):
        return str(value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return f"{value:.4f}"
    if isinstance(value, (list, tuple)):
        return "(" + ", ".join(_fmt(v) for v in value) + ")"
    if hasattr(value, "to_dict"):
        value = value.to_dict()
    if isinstance(value, Mapping):
        return ", ".join(f"{k}={_fmt(v)}" for k, v in value.items())
    if hasattr(value, "item"):
        return _fmt(value.item())
    return str(value)


def format_report(outcome: TestOutcome) -> str:
    """Render an outcome as deterministic plain text (4-decimal numbers)."""
    lines = [outcome.test_name, "=" * len(outcome.test_name)]
    lines.append(f"Alternative: {outcome.alternative.value}")
    lines.append("Statistics:")
    for name, value in outcome.statistics.items():
        lines.append(f"  {name}: {value:.4f}")
    present = [f for f in P_FIELDS if getattr(outcome, f) is not None]
    if not present:
        lines.append("p-values: not available")
    for name in present:
        value = getattr(outcome, name)
        flag = outcome.p_bracket_flags.get(name)
        if flag:
            lines.append(f"{_P_LABELS[name]}: {flag} {value:.4f} (table bound)")
        else:
            lines.append(f"{_P_LABELS[name]}: {value:.4f}")
    if outcome.exact_double_p is not None or outcome.asymptotic_double_p is not None:
        rule = {
            DOUBLING: "doubled smaller tail, capped at 1",
            TWO_SIDED_STATISTIC: "tail of the two-sided statistic",
            POINT_PROBABILITY: "sum of outcomes no more probable than the observed one",
        }.get(outcome.double_rule, outcome.double_rule)
        lines.append(f"Double-tail rule: {rule}")
    if outcome.extras:
        lines.append("Additional results:")
        for name, value in outcome.extras.items():
            lines.append(f"  {name}: {_fmt(value)}")
    if outcome.notes:
        lines.append("Notes:")
        lines.extend(f"  - {note}" for note in outcome.notes)
    return "\n".join(lines) + "\n"
