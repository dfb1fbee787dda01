import pytest

from multipark.graph import gamma, k3, path2
from multipark.infinity import INF
from multipark.multiparking import VertexFunction


def vf(*xs):
    return VertexFunction(tuple(INF if x is None else x for x in xs))


# Traversals of the example graph with R = {1, 4} and the function each maps to.
PSI_TABLE = [
    ("v1,e4,e1,v4,e5,v3,e3,v2,e2", vf(None, 1, 1, None)),
    ("v1,e4,e1,v4,e5,v3,e3,e2,v2", vf(None, 2, 1, None)),
    ("v1,e4,e1,v4,e5,e2,v2,e3,v3", vf(None, 1, 2, None)),
    ("v1,e4,v2,e3,e2,v4,e5,e1,v3", vf(None, 0, 2, None)),
    ("v1,e4,v2,e3,e2,e1,v4,e5,v3", vf(None, 0, 2, None)),
    ("v1,e4,e1,v3,e5,v4,e3,v2,e2", vf(None, 1, 0, None)),
    ("v1,e4,e1,v3,e5,e3,v2,e2,v4", vf(None, 1, 0, None)),
    ("v1,e4,e1,v3,e5,v4,e3,e2,v2", vf(None, 2, 0, None)),
    ("v1,e4,e1,v3,e5,e3,v4,e2,v2", vf(None, 2, 0, None)),
    ("v1,e4,v2,e3,e2,v4,e5,v3,e1", vf(None, 0, 1, None)),
    ("v1,e4,v2,e3,e2,e1,v3,e5,v4", vf(None, 0, 1, None)),
    ("v1,e4,v2,e3,v3,e5,e2,e1,v4", vf(None, 0, 0, None)),
    ("v1,e4,v2,e3,v3,e5,e2,v4,e1", vf(None, 0, 0, None)),
]

# The canonical traversal of every multiparking function for R = {1, 4}.
PHI_TABLE = [
    (vf(None, 1, 1, None), "v1,e4,e1,v4,e5,v3,e3,v2,e2"),
    (vf(None, 2, 1, None), "v1,e4,e1,v4,e5,v3,e3,e2,v2"),
    (vf(None, 1, 2, None), "v1,e4,e1,v4,e5,e2,v2,e3,v3"),
    (vf(None, 0, 2, None), "v1,e4,v2,e3,e2,e1,v4,e5,v3"),
    (vf(None, 1, 0, None), "v1,e4,e1,v3,e5,e3,v2,e2,v4"),
    (vf(None, 2, 0, None), "v1,e4,e1,v3,e5,e3,v4,e2,v2"),
    (vf(None, 0, 1, None), "v1,e4,v2,e3,e2,e1,v3,e5,v4"),
    (vf(None, 0, 0, None), "v1,e4,v2,e3,v3,e5,e2,e1,v4"),
]

EXAMPLE_TRAVERSALS = [
    ({1}, "v1,e4,v2,e3,e2,v4,e5,v3,e1"),
    ({1}, "v1,e4,e1,v3,e5,e3,v2,e2,v4"),
    ({2, 3}, "v2,e4,e3,e2,v4,e5,v3,e1,v1"),
    ({1, 2, 4}, "v1,e4,e1,v2,e3,v3,e5,e2,v4"),
]

# Listed alongside the others but breaks the vertex condition at position 9.
INCONSISTENT_EXAMPLE = ({2, 3}, "v2,e4,e3,e2,v3,e5,e1,v1,v4")


@pytest.fixture
def G():
    return gamma()


@pytest.fixture
def P2():
    return path2()


@pytest.fixture
def K3():
    return k3()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
