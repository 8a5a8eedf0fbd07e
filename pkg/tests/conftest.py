import pytest

from quiverpi1.algebra import AlgebraElement
from quiverpi1.field import QQ, Field
from quiverpi1.ideal import from_generators
from quiverpi1.quiver import Quiver

GF2 = Field.GF(2)

# Acceptance criteria register their outcome here; printed after the run.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def single_bypass_quiver():
    return Quiver([1, 2, 3, 4], [("a", 1, 2), ("b", 1, 3), ("c", 3, 2), ("d", 2, 4)])


def two_bypass_quiver():
    return Quiver(
        [1, 2, 3, 4, 5],
        [("a", 1, 2), ("alpha", 2, 3), ("u1", 1, 4), ("u2", 4, 2), ("v1", 2, 5), ("v2", 5, 3)],
    )


def elem(q, k, terms):
    return AlgebraElement(q, k, terms)


def ideal(q, k, *gens):
    return from_generators(q, k, [elem(q, k, g) for g in gens])


VU = "v2*v1*u2*u1"
VA = "v2*v1*a"
AU = "alpha*u2*u1"
AA = "alpha*a"


@pytest.fixture
def q1():
    return single_bypass_quiver()


@pytest.fixture
def q5():
    return two_bypass_quiver()


@pytest.fixture
def ex1(q1):
    """The ideals <da> and <da - dcb>."""
    return ideal(q1, QQ, {"d*a": 1}), ideal(q1, QQ, {"d*a": 1, "d*c*b": -1})


def i1(q, k):
    return ideal(q, k, {AA: 1, VU: 1}, {VA: 1, AU: 1})
