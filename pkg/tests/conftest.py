"""Shared fixtures: acceptance-verdict recording with end-of-run summary."""

import pytest

_ACCEPTANCE: list[tuple[str, bool]] = []


@pytest.fixture
def acceptance():
    """Record and print one acceptance verdict; returns the boolean.

    Usage: ``assert acceptance("criterion-name", ok)`` — the verdict line is
    printed immediately (visible in captured output on failure) and repeated
    in the terminal summary after the run (visible always).
    """

    def _record(name: str, ok: bool) -> bool:
        _ACCEPTANCE.append((name, ok))
        print(f"[acceptance] {name}: {'PASS' if ok else 'FAIL'}")
        return ok

    return _record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.write_line("")
    terminalreporter.write_line("acceptance criteria:")
    for name, ok in _ACCEPTANCE:
        terminalreporter.write_line(f"[acceptance] {name}: {'PASS' if ok else 'FAIL'}")
