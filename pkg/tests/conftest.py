import numpy as np
import pytest

from fgwalk.features.freegroup.model import build_gr
from fgwalk.graphcore.families import (
    complete_graph,
    cycle_graph,
    petersen_graph,
    random_regular_graph,
)
from fgwalk.graphcore.graph import Graph


@pytest.fixture
def k4():
    return complete_graph(4)


@pytest.fixture
def petersen():
    return petersen_graph()


@pytest.fixture
def c5():
    return cycle_graph(5)


@pytest.fixture
def c3():
    return cycle_graph(3)


@pytest.fixture
def g2():
    return build_gr(2)


@pytest.fixture
def cubic8():
    return random_regular_graph(3, 8, seed=7)


@pytest.fixture
def complete_digraph3():
    """Both orientations of every edge of a triangle: 2-regular, loopless, primitive."""
    adj = np.ones((3, 3), dtype=np.int64) - np.eye(3, dtype=np.int64)
    return Graph.from_matrix(adj, directed=True)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


C3_TEXT = """\
# triangle
graph undirected
vertices 3
edge 0 1
edge 1 2
edge 0 2
"""


@pytest.fixture
def c3_file(tmp_path):
    path = tmp_path / "c3.graph"
    path.write_text(C3_TEXT, encoding="utf-8")
    return path
