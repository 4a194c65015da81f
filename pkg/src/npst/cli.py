"""Command line front end.

Usage::

    npst list
    npst datasets
    npst run --test sign_test --input pairs.xml
    npst run --test kruskal_wallis --input a.csv --input b.csv --input c.csv
    npst run --test ks_one_sample --input x.txt --param "target=normal(0,1)" --alt right --json

Exit status: 0 success, 2 usage or parameter error, 3 data error,
4 numerical or degenerate-data error.
"""

from __future__ import annotations

import argparse
import json
import sys
from importlib import resources
from typing import Sequence

from .core import DataError, DegenerateDataError, DomainError, NPSTError, NumericalError, format_report
from .data import FORMATS, read_sequence, read_table
from .registry import get_test, list_tests, run_test, test_names

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_NUMERIC = 0, 2, 3, 4
ALTERNATIVES = ("two", "left", "right", "ordered", "control")


class UsageError(Exception):
    pass


def bundled_datasets() -> dict[str, str]:
    """Name -> path of the data files shipped with the package."""
    root = resources.files("npst") / "datasets"
    return {p.name: str(p) for p in sorted(root.iterdir(), key=lambda p: p.name) if p.is_file()}


def _parse_params(items: Sequence[str]) -> dict[str, str]:
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise UsageError(f"--param expects key=value, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def load_data(kind: str, paths: Sequence[str], fmt: str | None):
    """Read the input files in the layout a test of the given input kind expects."""
    if not paths:
        raise UsageError("at least one --input file is required")
    many = kind in ("two_samples", "k_samples")
    if len(paths) > 1 and not many:
        raise UsageError(f"this test reads a single input file, got {len(paths)}")
    if kind in ("sequence", "counts"):
        return read_sequence(paths[0], fmt)
    if kind == "symbols":
        return read_sequence(paths[0], fmt, kind="string")
    if kind in ("paired", "table", "design"):
        return read_table(paths[0], fmt)
    if len(paths) == 1:
        table = read_table(paths[0], fmt)
        samples = [table.column(j) for j in range(table.columns)]
    else:
        samples = [read_sequence(p, fmt).values for p in paths]
    if kind == "two_samples" and len(samples) != 2:
        raise DataError(f"two-sample tests need exactly 2 samples, got {len(samples)}")
    return samples


def run(test: str, inputs: Sequence[str], fmt: str | None = None, alternative: str | None = None,
        params: Sequence[str] = (), as_json: bool = False) -> str:
    """Run one test and return the text that the command prints."""
    if test.strip().lower().replace("-", "_") not in test_names():
        raise UsageError(f"unknown test {test!r}; valid tests:\n  " + "\n  ".join(test_names()))
    spec = get_test(test)
    raw = _parse_params(params)
    spec.validate(raw)  # before touching any file
    spec.check_alternative(alternative)
    data = load_data(spec.input, inputs, fmt)
    outcome = run_test(spec.name, data, alternative, **raw)
    if as_json:
        return json.dumps(outcome.to_dict(), indent=2) + "\n"
    return format_report(outcome)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="npst", description="Nonparametric statistical tests.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("list", help="list the available tests grouped by family")
    sub.add_parser("datasets", help="print the paths of the bundled data files")
    p = sub.add_parser("run", help="run one test on data files")
    p.add_argument("--test", required=True, help="test name (see 'npst list')")
    p.add_argument("--input", action="append", default=[], metavar="PATH",
                   help="data file; repeat for tests taking several samples")
    p.add_argument("--format", choices=FORMATS, help="file format (default: from the extension)")
    p.add_argument("--alt", choices=ALTERNATIVES, help="alternative hypothesis (default: the test's own)")
    p.add_argument("--param", action="append", default=[], metavar="KEY=VALUE", help="test parameter")
    p.add_argument("--json", action="store_true", help="print the outcome as JSON")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "list":
            sys.stdout.write(list_tests())
        elif args.command == "datasets":
            for name, path in bundled_datasets().items():
                print(f"{name}\t{path}")
        else:
            sys.stdout.write(run(args.test, args.input, args.format, args.alt, args.param, args.json))
        return EXIT_OK
    except (UsageError, DomainError) as exc:
        print(f"npst: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DegenerateDataError, NumericalError) as exc:
        print(f"npst: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (DataError, OSError) as exc:
        print(f"npst: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except NPSTError as exc:
        print(f"npst: error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
