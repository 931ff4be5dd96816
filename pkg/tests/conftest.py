import numpy as np
import pytest

from ifzcz.constructions import S1Params, S2Params, build_s1, build_s2
from ifzcz.seqcore import make_polyphase


@pytest.fixture(scope="session")
def example1_params():
    return S1Params.uniform(4, make_polyphase(16, [0, 0, 0, 8]))


@pytest.fixture(scope="session")
def example1(example1_params):
    return build_s1(example1_params)


@pytest.fixture(scope="session")
def example2_params():
    return S2Params(2, 4, [(0, 1, 2, 3), (2, 0, 3, 1)], offsets=[1, 0])


@pytest.fixture(scope="session")
def example2(example2_params):
    return build_s2(example2_params)


@pytest.fixture
def rng():
    return np.random.default_rng(20240607)


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.result_lines():
        terminalreporter.write_line(line)
