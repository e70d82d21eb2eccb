import pytest

from fuglede import make_group
from fuglede.counterexample import paper_fixtures


@pytest.fixture
def z888():
    return make_group([8, 8, 8])


@pytest.fixture
def hla():
    return paper_fixtures()


def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
