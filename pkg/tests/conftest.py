import random

import pytest

from umlattice.instances import ModuleLattice, Tree, Zn


@pytest.fixture
def rng():
    return random.Random(12345)


INSTANCES = {
    "zn3": lambda: Zn(3),
    "tree33": lambda: Tree(3, 3),
    "mod22": lambda: ModuleLattice(2, 2, 4),
    "mod32": lambda: ModuleLattice(3, 2, 4),
}


@pytest.fixture(params=sorted(INSTANCES))
def lattice(request):
    return INSTANCES[request.param]()


def pytest_terminal_summary(terminalreporter):
    try:
        import test_acceptance
    except ImportError:
        return
    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)
