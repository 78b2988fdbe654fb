import pytest

_acceptance_lines = []


@pytest.fixture
def acceptance_report():
    """Record and print one pass/fail line per acceptance criterion."""
    def report(criterion: str, ok: bool, detail: str) -> bool:
        line = f"[acceptance {criterion}] {'PASS' if ok else 'FAIL'} - {detail}"
        _acceptance_lines.append(line)
        print(line)
        return ok
    return report


def pytest_terminal_summary(terminalreporter):
    if _acceptance_lines:
        terminalreporter.section("acceptance criteria")
        for line in _acceptance_lines:
            terminalreporter.write_line(line)
