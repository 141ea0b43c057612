"""Collects acceptance verdicts and prints one line per criterion at the end of the run."""
import pytest

VERDICTS: list[tuple[str, bool, str]] = []


@pytest.fixture
def criterion():
    def record(name: str, ok: bool, detail: str = "") -> bool:
        VERDICTS.append((name, bool(ok), detail))
        return bool(ok)
    return record


def pytest_terminal_summary(terminalreporter):
    if not VERDICTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in VERDICTS:
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}" + (f"  [{detail}]" if detail else ""))
