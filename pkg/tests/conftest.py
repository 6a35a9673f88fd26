import logging

import pytest

_ACCEPTANCE: list[str] = []


@pytest.fixture
def acceptance():
    """Records one pass/fail line per acceptance criterion for the terminal summary."""

    def record(number: int, title: str, ok: bool, detail: str) -> None:
        line = f"criterion {number} {'PASS' if ok else 'FAIL'}: {title} ({detail})"
        _ACCEPTANCE.append(line)
        print(line)

    return record


@pytest.fixture(autouse=True)
def _quiet_fallback_warnings():
    logging.getLogger("supergrid").setLevel(logging.ERROR)
    yield


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_ACCEPTANCE):
            terminalreporter.write_line(line)
