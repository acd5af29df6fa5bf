import itertools

import pytest

from kbrealize.core import ModelSet, Vocabulary

_acceptance_results: dict[int, tuple[str, str]] = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        prev = _acceptance_results.get(number)
        status = "PASS" if report.passed else "FAIL"
        if prev is not None and prev[1] == "FAIL":
            status = "FAIL"
        _acceptance_results[number] = (title, status)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance_results):
        title, status = _acceptance_results[number]
        terminalreporter.write_line(f"{status} criterion {number}: {title}")


def brute_models(atoms, predicate):
    """Independent enumeration: every subset of ``atoms`` on which ``predicate(set)`` holds."""
    out = []
    for bits in itertools.product((False, True), repeat=len(atoms)):
        s = frozenset(a for a, b in zip(atoms, bits) if b)
        if predicate(s):
            out.append(s)
    return set(out)


@pytest.fixture
def xyz():
    return Vocabulary("xyz")


@pytest.fixture
def x1(xyz):
    return ModelSet.from_sets(xyz, [[], ["x", "y"], ["x", "z"], ["y", "z"]])


@pytest.fixture
def x2(xyz):
    return ModelSet.from_sets(xyz, [["x", "y"], ["x", "z"], ["y", "z"]])
