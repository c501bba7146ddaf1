from __future__ import annotations

import pytest

from acyclica.complex import cubical_lattice, cycle_graph, load_complex, simplicial_skeleton


def single_edge():
    return load_complex({"dims": [2, 1], "boundary": [{"k": 1, "entries": [[0, 0, -1], [1, 0, 1]]}]})


@pytest.fixture
def c4():
    return cycle_graph(4)


@pytest.fixture
def delta4():
    return simplicial_skeleton(4, 2)


@pytest.fixture
def delta5():
    return simplicial_skeleton(5, 2)


@pytest.fixture
def cl2():
    return cubical_lattice((2, 2), 1)


@pytest.fixture
def edge():
    return single_edge()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in RESULTS:
            terminalreporter.write_line(line)
