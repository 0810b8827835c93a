import warnings
from fractions import Fraction

import pytest

from seqpivot import ProjectInstance
from seqpivot.verification import build_grid

EXAMPLE_POINTS = (110, 80, 250, 60, 70)

ACCEPTANCE: dict[str, str] = {}


@pytest.fixture(scope="session")
def inst():
    return ProjectInstance(3, 300)


@pytest.fixture(scope="session")
def grid6(inst):
    return build_grid(inst, 6)


@pytest.fixture(scope="session")
def grid3(inst):
    return build_grid(inst, 3)


@pytest.fixture(scope="session")
def rich6(inst):
    return build_grid(inst, 6, EXAMPLE_POINTS)


@pytest.fixture(scope="session")
def rich3(inst):
    return build_grid(inst, 3, EXAMPLE_POINTS)


def F(*values):
    return tuple(Fraction(v) for v in values)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(ACCEPTANCE, key=lambda k: int(k.split(".")[0])):
        terminalreporter.write_line(f"{ACCEPTANCE[name]}  {name}")


@pytest.fixture(autouse=True)
def _quiet_grid_warnings():
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", UserWarning)
        yield
