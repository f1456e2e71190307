import pytest

_VERDICTS: list[str] = []


@pytest.fixture
def verdict():
    """Record ``criterion N: PASS|FAIL ...`` lines for the terminal summary."""

    def record(number: int, ok: bool, detail: str = ""):
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'}"
        if detail:
            line += f"  {detail}"
        _VERDICTS.append(line)
        print(line)
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if _VERDICTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_VERDICTS, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
