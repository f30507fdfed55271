import pytest
from hypothesis import settings

from tournspan.core import Tournament, circulant, from_arcs, transitive

# single-core sandbox: wall-clock deadlines only add flakiness
settings.register_profile("repo", deadline=None)
settings.load_profile("repo")

# filled in by test_acceptance; printed at the end of the run
ACCEPTANCE = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"AC{key:<3} {'PASS' if ok else 'FAIL'}  {detail}")


@pytest.fixture
def c3():
    return from_arcs(3, [(0, 1), (1, 2), (2, 0)])


@pytest.fixture
def tt3():
    return transitive(3)


@pytest.fixture
def tt4():
    return transitive(4)


@pytest.fixture
def r5():
    return circulant(5, [1, 2])


@pytest.fixture
def r7():
    return circulant(7, [1, 2, 3])


@pytest.fixture
def two_triangles():
    arcs = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]
    arcs += [(u, v) for u in range(3) for v in range(3, 6)]
    return from_arcs(6, arcs)
