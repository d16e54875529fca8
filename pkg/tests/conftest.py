import pytest

from vispath import make_path, validate

FIX_L = [(0, 0), (0, 2), (1, 2), (1, 1), (2, 1), (2, 0)]
FIX_U = [(0, 0), (0, 3), (1, 3), (1, 1), (2, 1), (2, 3), (3, 3), (3, 0)]
SQUARE = [(0, 0), (0, 1), (1, 1), (1, 0)]

# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE_LINES: dict[int, str] = {}


@pytest.fixture
def fix_l():
    return validate(FIX_L)


@pytest.fixture
def fix_u():
    return validate(FIX_U)


@pytest.fixture
def square():
    return validate(SQUARE)


@pytest.fixture
def full_path(fix_u):
    return make_path(fix_u, [(0.5, 0.5), (2.5, 0.5)])


@pytest.fixture
def short_path(fix_u):
    return make_path(fix_u, [(0.5, 0.5), (1.5, 0.5)])


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(ACCEPTANCE_LINES):
        terminalreporter.write_line(ACCEPTANCE_LINES[k])
