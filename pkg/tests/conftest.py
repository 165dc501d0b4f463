"""Shared fixtures and hypothesis strategies"""
import random

import pytest
from hypothesis import strategies as st

from src.services.constructions import GadgetGame, useful_complete
from src.services.dynamics import ChipConfiguration
from src.services.graph_core import DirectedMultigraph, UndirectedGraph

K4_GAME_TEXT = """\
digraph 4
e 0 1
e 1 2
e 2 3
e 3 0
e 0 2
e 3 1
chips 0 1
chips 2 2
chips 3 2
"""

# Orbit of the useful K_4 game started from (1,0,2,2)
K4_ORBIT = [(1, 0, 2, 2), (2, 1, 1, 1), (0, 1, 2, 2), (1, 1, 2, 1)]


@pytest.fixture
def k4():
    return useful_complete(4)


@pytest.fixture
def k4_game(k4):
    return GadgetGame(k4, ChipConfiguration((1, 0, 2, 2)), label="useful K_4")


@pytest.fixture
def k4_file(tmp_path):
    path = tmp_path / "k4_example.game"
    path.write_text(K4_GAME_TEXT)
    return path


@pytest.fixture
def rng():
    return random.Random(12345)


@st.composite
def digraphs(draw, min_vertices=1, max_vertices=6, max_edges=12):
    """Loop-free directed multigraphs"""
    n = draw(st.integers(min_vertices, max_vertices))
    if n < 2:
        return DirectedMultigraph(n, ())
    pair = st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)).filter(lambda e: e[0] != e[1])
    return DirectedMultigraph(n, tuple(draw(st.lists(pair, max_size=max_edges))))


@st.composite
def simple_graphs(draw, min_vertices=1, max_vertices=6):
    n = draw(st.integers(min_vertices, max_vertices))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return UndirectedGraph(n, tuple(chosen))


@st.composite
def games(draw, graph_strategy=None, max_chips=8):
    """(graph, configuration) pairs"""
    g = draw(graph_strategy or digraphs())
    chips = draw(st.lists(st.integers(0, max_chips), min_size=g.vertex_count, max_size=g.vertex_count))
    return g, ChipConfiguration(tuple(chips))
