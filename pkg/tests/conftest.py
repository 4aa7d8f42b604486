from __future__ import annotations

import pytest

_RESULTS: list[tuple[int, bool, str]] = []


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False,
                     help="run tests marked slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture
def criterion():
    """Record one pass/fail line per acceptance criterion."""

    def record(number: int, ok: bool, detail: str):
        _RESULTS.append((number, bool(ok), detail))
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    done = {number for number, _, _ in _RESULTS}
    for number, ok, detail in sorted(_RESULTS):
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
    for number in sorted(set(range(1, 9)) - done):
        terminalreporter.write_line(f"criterion {number}: NOT RUN (slow criteria need --slow)")
