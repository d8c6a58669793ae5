import pytest

from liecontract import builtin_algebra

CRITERIA = {
    1: "catalog soundness",
    2: "basis transcription",
    3: "shared subalgebra",
    4: "contraction",
    5: "invariant spaces",
    6: "reference-polynomial membership",
    7: "Casimir limits",
    8: "rest-frame evaluations",
    9: "invariant counts",
    10: "printed-operator audit",
    11: "property suites",
}

_outcomes = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n): acceptance criterion covered by the test")


def pytest_runtest_logreport(report):
    n = getattr(report, "criterion", None)
    if n is None:
        return
    if report.when == "call" or report.failed:
        _outcomes.setdefault(n, []).append(report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    marker = item.get_closest_marker("criterion")
    if marker is not None:
        outcome.get_result().criterion = marker.args[0]


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        results = _outcomes.get(n)
        if results is None:
            continue
        verdict = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d} ({title}): {verdict}  [{sum(results)}/{len(results)} tests]")


@pytest.fixture
def poincare():
    return builtin_algebra("poincare")


@pytest.fixture
def ext_galilei():
    return builtin_algebra("extended_galilei")


@pytest.fixture
def ext_hbar():
    return builtin_algebra("extended_poincare_hbar")
