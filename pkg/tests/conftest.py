import pytest

from ecpaths import corpus
from ecpaths.graph import Mode


@pytest.fixture
def trap_cddp():
    return corpus.two_route_trap(Mode.CDDP)


@pytest.fixture
def trap_cdp():
    return corpus.two_route_trap(Mode.CDP)


@pytest.fixture
def k4():
    return corpus.k4_graph()


@pytest.fixture
def ts_demo():
    return corpus.threshold_demo_source()
