import pytest

from somos import SomosRecurrence, generate

# Acceptance lines collected by tests/test_acceptance.py and echoed at the end.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


SOMOS4 = (1, 1, (1, 1, 1, 1))
ORBIT_1331 = (1331, 119790, (1, 3, 121, 177023))
ORBIT_14641 = (14641, 1771561, (1, 1, 33, 6655, 19487171))  # tau1..tau5
ORBIT_14641_BACK = (805255, 847, 8)  # tau-2, tau-1, tau0


@pytest.fixture(scope="session")
def somos4_orbit():
    return generate(SomosRecurrence.somos4(1, 1), [1, 1, 1, 1], lo=-20, hi=40)


@pytest.fixture(scope="session")
def orbit_1331():
    return generate(SomosRecurrence.somos4(1331, 119790), [1, 3, 121, 177023], lo=-20, hi=40)


@pytest.fixture(scope="session")
def orbit_14641():
    a, b, inits = ORBIT_14641
    return generate(SomosRecurrence.somos5(a, b), list(inits), lo=-20, hi=40)
