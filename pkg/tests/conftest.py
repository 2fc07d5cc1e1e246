import random

import pytest

from multiinterval.catalog import iter_catalog_graphs
from multiinterval.graphs import ColoredGraph, Graph

# One line per acceptance criterion, printed after the run so the
# verdicts survive even when an individual test fails mid-assert.
_ACCEPTANCE_LINES = {}


@pytest.fixture
def acceptance():
    def record(number: int, ok: bool, detail: str) -> None:
        word = "PASS" if ok else "FAIL"
        _ACCEPTANCE_LINES[number] = f"acceptance {number:2d}: {word} - {detail}"
    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE_LINES:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE_LINES):
        terminalreporter.write_line(_ACCEPTANCE_LINES[number])


@pytest.fixture(scope="session")
def catalog5():
    out = []
    for n in range(1, 6):
        out.extend(iter_catalog_graphs(n))
    return out


@pytest.fixture(scope="session")
def catalog6(catalog5):
    return catalog5 + list(iter_catalog_graphs(6))


def make_graph(labels, edges=()):
    return Graph(list(labels), list(edges))


def color(g: Graph, colors: str) -> ColoredGraph:
    """Colors as a string of w/b characters in vertex order."""
    names = {"w": "white", "b": "black"}
    return ColoredGraph(g, {v: names[c] for v, c in zip(g.vertices, colors)})


def random_coloring(g: Graph, rng: random.Random) -> ColoredGraph:
    return ColoredGraph(
        g, {v: rng.choice(("white", "black")) for v in g.vertices})
