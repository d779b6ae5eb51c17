import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from ladder_asym import new_ladder  # noqa: E402
from ladder_asym.cli import PRESETS  # noqa: E402


def preset(name):
    return new_ladder(PRESETS[name]["segments"], PRESETS[name]["weights"], name)


@pytest.fixture(scope="session")
def cantor():
    return preset("cantor")


@pytest.fixture(scope="session")
def cantor3():
    return preset("cantor3")


@pytest.fixture(scope="session")
def rho13():
    return preset("rho13-23")


@pytest.fixture(scope="session")
def identity():
    return preset("identity")


@pytest.fixture(scope="session")
def asym():
    return preset("asym")


@pytest.fixture(scope="session")
def cantor_profile(cantor):
    from ladder_asym import extract_profile
    return extract_profile(cantor)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(RESULTS):
        terminalreporter.write_line(RESULTS[n])
