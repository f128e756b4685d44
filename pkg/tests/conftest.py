import pytest

from reeunital.conic import build_context
from reeunital.design import automorphism_group, build_ree_unital


@pytest.fixture(scope="session")
def ctx():
    return build_context()


@pytest.fixture(scope="session")
def r3(ctx):
    return build_ree_unital(ctx)


@pytest.fixture(scope="session")
def aut(r3):
    return automorphism_group(r3)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
