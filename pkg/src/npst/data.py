"""Sequences and tables, and their XML / CSV / TXT file formats.

CSV and TXT share one grammar: values separated by ``;``, rows separated by
newlines, a trailing ``;`` at the end of a line is tolerated and whitespace
around tokens is trimmed.  Sequence files treat newlines as plain separators.
"""

from __future__ import annotations

import math
import re
import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .core import DataError, DimensionError, ParseError

FORMATS = ("xml", "csv", "txt")

_REAL = re.compile(r"[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?\Z")


def parse_real(token: str, where: str = "") -> float:
    """Parse a decimal real (``.`` separator, optional exponent)."""
    text = token.strip()
    if not _REAL.match(text):
        raise ParseError(f"non-numeric token {token!r}{where}")
    value = float(text)
    if not math.isfinite(value):
        raise ParseError(f"value {token!r} overflows{where}")
    return value


def format_real(value: float) -> str:
    # shortest repr that round-trips exactly
    return repr(float(value))


class NumericSequence:
    """Immutable ordered sample of finite reals."""

    __slots__ = ("_values",)

    def __init__(self, values: Iterable[float]):
        arr = np.array([float(v) for v in values], dtype=float)
        if arr.size == 0:
            raise DataError("a sequence needs at least one value")
        bad = np.flatnonzero(~np.isfinite(arr))
        if bad.size:
            raise DataError(f"element {bad[0] + 1} is not finite")
        arr.setflags(write=False)
        self._values = arr

    @property
    def values(self) -> np.ndarray:
        return self._values

    def __len__(self) -> int:
        return self._values.size

    def __iter__(self):
        return iter(self._values.tolist())

    def __getitem__(self, index):
        return self._values[index]

    def __array__(self, dtype=None, copy=None):
        return self._values if dtype is None else self._values.astype(dtype)

    def __eq__(self, other) -> bool:
        if not isinstance(other, NumericSequence):
            return NotImplemented
        return np.array_equal(self._values, other._values)

    def __hash__(self):
        return hash(self._values.tobytes())

    def __repr__(self) -> str:
        return f"NumericSequence({self._values.tolist()!r})"


class StringSequence:
    """Immutable ordered sequence of non-empty text labels."""

    __slots__ = ("_tokens",)

    def __init__(self, tokens: Iterable[str]):
        toks = tuple(str(t) for t in tokens)
        if not toks:
            raise DataError("a sequence needs at least one token")
        for i, tok in enumerate(toks, 1):
            if tok == "":
                raise DataError(f"token {i} is empty")
        self._tokens = toks

    @classmethod
    def from_text(cls, text: str) -> "StringSequence":
        """One symbol per character, e.g. ``"XYXYXY"``."""
        return cls(ch for ch in text if not ch.isspace())

    @property
    def tokens(self) -> tuple[str, ...]:
        return self._tokens

    def __len__(self) -> int:
        return len(self._tokens)

    def __iter__(self):
        return iter(self._tokens)

    def __getitem__(self, index):
        return self._tokens[index]

    def __eq__(self, other) -> bool:
        if not isinstance(other, StringSequence):
            return NotImplemented
        return self._tokens == other._tokens

    def __hash__(self):
        return hash(self._tokens)

    def __repr__(self) -> str:
        return f"StringSequence({list(self._tokens)!r})"


class DataTable:
    """Immutable rows x columns grid of finite reals.

    Values in one column belong to the same sample unless a test says
    otherwise (blocks x treatments, contingency counts).
    """

    __slots__ = ("_cells",)

    def __init__(self, rows: Iterable[Iterable[float]]):
        grid = [list(r) for r in rows]
        if not grid or not grid[0]:
            raise DimensionError("a table needs at least one row and one column")
        width = len(grid[0])
        for i, row in enumerate(grid, 1):
            if len(row) != width:
                raise DimensionError(f"row {i} has {len(row)} values, expected {width}")
        cells = np.array(grid, dtype=float)
        bad = np.argwhere(~np.isfinite(cells))
        if bad.size:
            i, j = bad[0]
            raise DataError(f"cell ({i + 1}, {j + 1}) is not finite")
        cells.setflags(write=False)
        self._cells = cells

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[float]]) -> "DataTable":
        return cls(zip(*columns, strict=True))

    @property
    def cells(self) -> np.ndarray:
        return self._cells

    @property
    def rows(self) -> int:
        return self._cells.shape[0]

    @property
    def columns(self) -> int:
        return self._cells.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self._cells.shape

    def row(self, i: int) -> np.ndarray:
        return self._cells[i]

    def column(self, j: int) -> np.ndarray:
        return self._cells[:, j]

    def __array__(self, dtype=None, copy=None):
        return self._cells if dtype is None else self._cells.astype(dtype)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DataTable):
            return NotImplemented
        return np.array_equal(self._cells, other._cells)

    def __hash__(self):
        return hash((self._cells.shape, self._cells.tobytes()))

    def __repr__(self) -> str:
        return f"DataTable({self._cells.tolist()!r})"


def _resolve_format(path, fmt: str | None) -> str:
    if fmt is None:
        fmt = Path(path).suffix.lstrip(".").lower()
    fmt = fmt.lower()
    if fmt not in FORMATS:
        raise ParseError(f"unknown data format {fmt!r}; expected one of {', '.join(FORMATS)}")
    return fmt


def _split_line(line: str) -> list[str]:
    tokens = [t.strip() for t in line.split(";")]
    if len(tokens) > 1 and tokens[-1] == "":
        tokens.pop()  # trailing separator
    return tokens


def _delimited_tokens(text: str) -> list[tuple[str, int]]:
    """Sequence tokens with their 1-based line numbers."""
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        out.extend((tok, lineno) for tok in _split_line(line))
    return out


def _xml_root(text: str, expected: str) -> ET.Element:
    try:
        root = ET.fromstring(text)
    except ET.ParseError as exc:
        raise ParseError(f"malformed XML: {exc}") from None
    if root.tag != expected:
        raise ParseError(f"expected root <{expected}>, found <{root.tag}>")
    return root


def _element_texts(parent: ET.Element, where: str) -> list[str]:
    texts = []
    for i, child in enumerate(parent, 1):
        if child.tag != "element":
            raise ParseError(f"unexpected <{child.tag}> at position {i}{where}")
        texts.append((child.text or "").strip())
    return texts


def parse_sequence(text: str, fmt: str, kind: str = "numeric"):
    """Parse sequence file content; see :func:`read_sequence`."""
    if kind not in ("numeric", "string"):
        raise ValueError(f"kind must be 'numeric' or 'string', not {kind!r}")
    if fmt == "xml":
        root = _xml_root(text, "sequence")
        located = [(t, f" (element {i})") for i, t in enumerate(_element_texts(root, ""), 1)]
    else:
        located = [
            (t, f" (token {i}, line {line})")
            for i, (t, line) in enumerate(_delimited_tokens(text), 1)
        ]
    if not located:
        raise ParseError("empty sequence")
    if kind == "string":
        for tok, where in located:
            if tok == "":
                raise ParseError(f"empty token{where}")
        return StringSequence(t for t, _ in located)
    return NumericSequence(parse_real(t, where) for t, where in located)


def parse_table(text: str, fmt: str) -> DataTable:
    """Parse table file content; see :func:`read_table`."""
    rows: list[list[float]] = []
    if fmt == "xml":
        root = _xml_root(text, "tabular")
        try:
            n_rows = int(root.attrib["rows"])
            n_cols = int(root.attrib["columns"])
        except (KeyError, ValueError):
            raise ParseError("<tabular> needs integer 'rows' and 'columns' attributes") from None
        for i, row in enumerate(root, 1):
            if row.tag != "row":
                raise ParseError(f"unexpected <{row.tag}> at row position {i}")
            texts = _element_texts(row, f" in row {i}")
            if len(texts) != n_cols:
                raise DimensionError(f"row {i} has {len(texts)} elements, header says {n_cols}")
            rows.append([parse_real(t, f" (row {i}, element {j})") for j, t in enumerate(texts, 1)])
        if len(rows) != n_rows:
            raise DimensionError(f"found {len(rows)} rows, header says {n_rows}")
    else:
        for lineno, line in enumerate(text.splitlines(), 1):
            if not line.strip():
                continue
            rows.append(
                [parse_real(t, f" (line {lineno}, token {j})") for j, t in enumerate(_split_line(line), 1)]
            )
        if not rows:
            raise ParseError("empty table")
    return DataTable(rows)


def read_sequence(path, format: str | None = None, kind: str = "numeric"):
    """Load a :class:`NumericSequence` or :class:`StringSequence`.

    Parameters
    ----------
    path : path-like
    format : {'xml', 'csv', 'txt'}, optional
        Inferred from the file extension when omitted.
    kind : {'numeric', 'string'}
    """
    fmt = _resolve_format(path, format)
    return parse_sequence(Path(path).read_text(encoding="utf-8"), fmt, kind)


def read_table(path, format: str | None = None) -> DataTable:
    """Load a :class:`DataTable`; cell (i, j) is the j-th value of row i."""
    fmt = _resolve_format(path, format)
    return parse_table(Path(path).read_text(encoding="utf-8"), fmt)


def _sequence_tokens(seq) -> list[str]:
    if isinstance(seq, NumericSequence):
        return [format_real(v) for v in seq]
    if isinstance(seq, StringSequence):
        return list(seq.tokens)
    raise TypeError(f"expected a sequence, got {type(seq).__name__}")


def dump_sequence(seq, fmt: str) -> str:
    tokens = _sequence_tokens(seq)
    if fmt == "xml":
        root = ET.Element("sequence")
        for tok in tokens:
            if tok != tok.strip():
                raise DataError(f"token {tok!r} has surrounding whitespace that XML would not keep")
            ET.SubElement(root, "element").text = tok
        ET.indent(root)
        return ET.tostring(root, encoding="unicode") + "\n"
    for tok in tokens:
        if ";" in tok or "\n" in tok or "\r" in tok or tok != tok.strip():
            raise DataError(f"token {tok!r} cannot be written in {fmt.upper()} format")
    return ";".join(tokens) + "\n"


def dump_table(table: DataTable, fmt: str) -> str:
    if fmt == "xml":
        root = ET.Element("tabular", rows=str(table.rows), columns=str(table.columns))
        for row in table.cells:
            node = ET.SubElement(root, "row")
            for v in row:
                ET.SubElement(node, "element").text = format_real(v)
        ET.indent(root)
        return ET.tostring(root, encoding="unicode") + "\n"
    return "".join(";".join(format_real(v) for v in row) + "\n" for row in table.cells)


def write_sequence(seq, path, format: str | None = None) -> None:
    fmt = _resolve_format(path, format)
    Path(path).write_text(dump_sequence(seq, fmt), encoding="utf-8")


def write_table(table: DataTable, path, format: str | None = None) -> None:
    fmt = _resolve_format(path, format)
    Path(path).write_text(dump_table(table, fmt), encoding="utf-8")


def as_array(sample, name: str = "sample", min_size: int = 1) -> np.ndarray:
    """Validated 1-D float array from a sequence or array-like."""
    if isinstance(sample, NumericSequence):
        arr = sample.values
    else:
        arr = np.asarray(sample, dtype=float)
        if arr.ndim != 1:
            raise DataError(f"{name} must be one-dimensional")
        if not np.all(np.isfinite(arr)):
            raise DataError(f"{name} contains non-finite values")
    if arr.size < min_size:
        raise DataError(f"{name} needs at least {min_size} values, got {arr.size}")
    return arr


def as_matrix(table, name: str = "table") -> np.ndarray:
    if isinstance(table, DataTable):
        return table.cells
    arr = np.asarray(table, dtype=float)
    if arr.ndim != 2 or arr.size == 0:
        raise DataError(f"{name} must be a non-empty two-dimensional table")
    if not np.all(np.isfinite(arr)):
        raise DataError(f"{name} contains non-finite values")
    return arr


__all__ = [
    "NumericSequence",
    "StringSequence",
    "DataTable",
    "read_sequence",
    "read_table",
    "write_sequence",
    "write_table",
    "parse_sequence",
    "parse_table",
    "dump_sequence",
    "dump_table",
]
