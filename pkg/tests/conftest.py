import pytest

_ACCEPTANCE: dict[str, str] = {}


@pytest.fixture
def acceptance_record():
    """Record a one-line verdict for an acceptance criterion."""

    def record(key: str, title: str, ok: bool, detail: str = ""):
        _ACCEPTANCE[key] = f"{key:>4}  {'PASS' if ok else 'FAIL'}  {title}" + (f"  ({detail})" if detail else "")
        return ok

    return record


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(_ACCEPTANCE, key=lambda k: int(k[1:])):
        terminalreporter.write_line(_ACCEPTANCE[key])
