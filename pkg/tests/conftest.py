import pytest
from hypothesis import settings

from corestar import GF, QI, Q, Matrix

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

# acceptance criteria append (label, passed, detail) here; printed at session end
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for label, passed, detail in ACCEPTANCE_LINES:
        terminalreporter.write_line(f"{'PASS' if passed else 'FAIL'}  {label}  {detail}")


def mat(field, rows, cols=None):
    return Matrix.from_rows(field, rows, cols=cols)


@pytest.fixture
def A_q():
    """The worked rank-one example [[1,0],[1,0]] over Q."""
    return mat(Q, [[1, 0], [1, 0]])


@pytest.fixture
def nil_q():
    return mat(Q, [[0, 1], [0, 0]])


@pytest.fixture(params=[Q, QI, GF(2), GF(3), GF(5)], ids=str)
def field(request):
    return request.param
