import random

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from gnoop import fixtures
from gnoop.generate import random_env

settings.register_profile("default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@st.composite
def envs(draw, **kwargs):
    """A generated well-formed environment, keyed by a drawn seed so shrinking stays meaningful."""
    seed = draw(st.integers(0, 2**31))
    return random_env(random.Random(seed), **kwargs)


@pytest.fixture
def pair():
    return fixtures.pair()


@pytest.fixture
def mini_pair():
    return fixtures.mini_pair()


@pytest.fixture
def javac():
    return fixtures.javac()


@pytest.fixture
def javac_top():
    return fixtures.javac_top()


@pytest.fixture
def enum_env():
    return fixtures.enum()


@pytest.fixture
def expansive_env():
    return fixtures.expansive()


def pytest_terminal_summary(terminalreporter):
    import sys

    acceptance = sys.modules.get("test_acceptance")
    if acceptance is None or not acceptance.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for key in acceptance.CRITERIA:
        if key in acceptance.RESULTS:
            terminalreporter.write_line(acceptance.RESULTS[key])
