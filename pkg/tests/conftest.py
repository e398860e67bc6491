from pathlib import Path

import pytest

from glosswsd import load_inventory, load_stopwords, load_vectors

FIXTURES = Path(__file__).parent / "fixtures"
CHESS = FIXTURES / "chess_mini"

_criteria: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): acceptance criterion covered by a test")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None or report.when not in ("setup", "call"):
        return
    number, title = marker.args
    if report.failed:
        _criteria[number] = (title, "FAIL")
    elif report.when == "call" and report.passed:
        _criteria.setdefault(number, (title, "PASS"))


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        title, status = _criteria[number]
        terminalreporter.write_line(f"criterion {number}: {status}  {title}")


@pytest.fixture(scope="session")
def chess_inventory():
    return load_inventory(CHESS)


@pytest.fixture(scope="session")
def chess_vectors():
    return load_vectors(CHESS / "vectors.tsv")


@pytest.fixture(scope="session")
def chess_stopwords():
    return load_stopwords(CHESS)
