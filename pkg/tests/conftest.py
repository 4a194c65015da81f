import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from npst.cli import bundled_datasets  # noqa: E402


@pytest.fixture(scope="session")
def table2_path() -> str:
    return bundled_datasets()["drop3_vs_chc.xml"]


def pytest_terminal_summary(terminalreporter):
    module = sys.modules.get("test_acceptance")
    if module is None or not module.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in module.result_lines():
        terminalreporter.write_line(line)
