import pytest

from toricmonoid.toric import build_variety

QUADRATIC_CONE = ((0, 1), (2, -1))
THREEFOLD = ((1, 0, 0), (0, 1, 0), (1, 0, 1), (0, 1, 1))
ORTHANT = ((1, 0), (0, 1))
LINE_TIMES_TORUS = ((1, 0),)


@pytest.fixture(scope="session")
def surface():
    return build_variety(QUADRATIC_CONE)


@pytest.fixture(scope="session")
def threefold():
    return build_variety(THREEFOLD)


@pytest.fixture(scope="session")
def orthant():
    return build_variety(ORTHANT)


@pytest.fixture(scope="session")
def line_torus():
    return build_variety(LINE_TIMES_TORUS)


@pytest.fixture(scope="session")
def torus():
    return build_variety((), 2)


# one summary line per acceptance criterion, keyed by test_criterion_<n>_...
_criteria: dict = {}


def pytest_runtest_logreport(report):
    path, _, name = report.nodeid.partition("::")
    if not path.endswith("test_acceptance.py") or not name.startswith("test_criterion_"):
        return
    if report.when == "call" or report.failed:
        n = int(name.split("_")[2])
        title = name.split("[")[0][len(f"test_criterion_{n}_"):]
        ok, titles = _criteria.get(n, (True, []))
        if title not in titles:
            titles.append(title)
        _criteria[n] = (ok and report.passed, titles)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        ok, titles = _criteria[n]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {n}: {', '.join(titles)}")
