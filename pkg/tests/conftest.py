import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

import oracles  # noqa: E402
from ranksec.cli import FIXTURES  # noqa: E402
from ranksec.fields import field  # noqa: E402


@pytest.fixture(scope="session")
def F8():
    return field(2, 3)


@pytest.fixture(scope="session")
def F4():
    return field(2, 2)


@pytest.fixture(scope="session")
def slow8():
    return oracles.SlowField(2, 3, (1, 1, 0, 1))


@pytest.fixture(scope="session")
def slow4():
    return oracles.SlowField(2, 2, (1, 1, 1))


@pytest.fixture(scope="session")
def pairs():
    return {name: make() for name, make in FIXTURES.items()}


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
