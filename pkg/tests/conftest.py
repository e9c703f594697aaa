import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from camoca.ca import rule_from_wolfram  # noqa: E402
from camoca.gf import field_make  # noqa: E402
from camoca.latin import make_family  # noqa: E402


@pytest.fixture(scope="session")
def f2():
    return field_make(2)


@pytest.fixture(scope="session")
def f3():
    return field_make(3)


@pytest.fixture(scope="session")
def f4():
    return field_make(2, 2)


@pytest.fixture(scope="session")
def r90():
    return rule_from_wolfram(90)


@pytest.fixture(scope="session")
def r150():
    return rule_from_wolfram(150)


@pytest.fixture(scope="session")
def fam(r90, r150):
    # order used by the worked example: rule 90 is index 1
    return make_family([r90, r150])


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import REPORT

    if REPORT:
        terminalreporter.section("acceptance criteria")
        for n in sorted(REPORT):
            terminalreporter.write_line(REPORT[n])
