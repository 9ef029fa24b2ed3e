from pathlib import Path

import pytest

from smcard import load_text

FIXTURES = Path(__file__).parent / "fixtures"
GOLDEN = FIXTURES / "golden.yaml"


def golden_text() -> str:
    return GOLDEN.read_text(encoding="utf-8")


def mutate(old: str, new: str, text: str | None = None) -> str:
    """Replace exactly one occurrence of *old* in the golden fixture."""
    text = golden_text() if text is None else text
    assert text.count(old) == 1, f"{old!r} occurs {text.count(old)} times"
    return text.replace(old, new)


@pytest.fixture
def golden() -> str:
    return golden_text()


@pytest.fixture
def golden_path() -> Path:
    return GOLDEN


@pytest.fixture
def card():
    loaded = load_text(golden_text())
    assert loaded.card is not None
    return loaded.card


# criterion id -> (passed, title); filled by tests/test_acceptance.py
ACCEPTANCE_RESULTS: dict[str, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE_RESULTS):
        passed, title = ACCEPTANCE_RESULTS[key]
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {key}  {title}")
