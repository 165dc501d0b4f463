"""Tests for graph representations, SCCs, distances and orientations"""
import networkx as nx
import pytest
from hypothesis import given, settings, strategies as st

from src.errors import DomainError
from src.services.constructions import complete_graph, cycle_graph, directed_cycle, useful_complete
from src.services.graph_core import (
    DirectedMultigraph,
    UndirectedGraph,
    bfs_distance,
    enumerate_orientations,
    induced_subgraph,
    is_connected,
    is_dag,
    is_strongly_connected,
    relabel,
    scc_partition,
    underlying_graph,
)
from tests.conftest import digraphs, simple_graphs


class TestDirectedMultigraph:
    def test_degrees_count_parallel_edges(self):
        g = DirectedMultigraph(3, ((0, 1), (0, 1), (1, 2), (2, 0)))
        assert g.out_degree == (2, 1, 1)
        assert g.in_degree == (1, 2, 1)
        assert g.multiplicity(0, 1) == 2
        assert g.edge_count == 4

    def test_edges_are_stored_sorted(self):
        assert DirectedMultigraph(3, ((2, 0), (0, 1))) == DirectedMultigraph(3, ((0, 1), (2, 0)))

    def test_self_loop_rejected(self):
        with pytest.raises(DomainError):
            DirectedMultigraph(2, ((1, 1),))

    def test_out_of_range_endpoint_rejected(self):
        with pytest.raises(DomainError, match="out of range"):
            DirectedMultigraph(2, ((0, 5),))

    def test_hashable(self):
        assert len({directed_cycle(3), directed_cycle(3)}) == 1


class TestUndirectedGraph:
    def test_edges_normalized(self):
        g = UndirectedGraph(3, ((2, 0), (1, 0)))
        assert g.edges == ((0, 1), (0, 2))
        assert g.degrees == (2, 1, 1)

    def test_duplicate_edge_rejected(self):
        with pytest.raises(DomainError, match="duplicate"):
            UndirectedGraph(2, ((0, 1), (1, 0)))

    def test_symmetric_digraph(self):
        d = complete_graph(4).as_directed()
        assert d.edge_count == 12
        assert d.out_degree == (3, 3, 3, 3)


class TestStrongComponents:
    def test_cycle_is_one_component(self):
        report = scc_partition(directed_cycle(5))
        assert report.is_strongly_connected
        assert report.sink_components == (0,)

    def test_empty_graph_is_singletons(self):
        report = scc_partition(DirectedMultigraph(3, ()))
        assert report.components == ((0,), (1,), (2,))
        assert report.sink_components == (0, 1, 2)
        assert is_dag(DirectedMultigraph(3, ()))

    def test_two_cycles_joined_one_way(self):
        # {0,1} -> {2,3}
        g = DirectedMultigraph(4, ((0, 1), (1, 0), (2, 3), (3, 2), (1, 2)))
        report = scc_partition(g)
        assert report.components == ((0, 1), (2, 3))
        assert report.condensation_edges == frozenset({(0, 1)})
        assert report.sink_vertices() == {2, 3}
        assert report.topological_order() == [0, 1]
        assert not is_strongly_connected(g)

    def test_deep_path_does_not_recurse(self):
        n = 5000
        g = DirectedMultigraph(n, tuple((i, i + 1) for i in range(n - 1)))
        report = scc_partition(g)
        assert len(report.components) == n
        assert report.sink_components == (n - 1,)

    @settings(max_examples=60, deadline=None)
    @given(digraphs(max_vertices=8, max_edges=16))
    def test_matches_networkx(self, g):
        nxg = nx.MultiDiGraph()
        nxg.add_nodes_from(g.vertices)
        nxg.add_edges_from(g.edges)
        expected = sorted(tuple(sorted(c)) for c in nx.strongly_connected_components(nxg))
        assert list(scc_partition(g).components) == expected
        assert is_dag(g) == nx.is_directed_acyclic_graph(nxg)

    @settings(max_examples=40, deadline=None)
    @given(digraphs(max_vertices=8, max_edges=16))
    def test_sinks_have_no_exit(self, g):
        report = scc_partition(g)
        sinks = report.sink_vertices()
        assert sinks
        assert all(report.component_of[v] == report.component_of[u] for u, v in g.edges if u in sinks)


class TestDistances:
    def test_cycle_distances(self):
        assert bfs_distance(cycle_graph(6), 0) == [0, 1, 2, 3, 2, 1]

    def test_unreachable_is_none(self):
        g = UndirectedGraph(3, ((0, 1),))
        assert bfs_distance(g, 0) == [0, 1, None]
        assert not is_connected(g)

    @settings(max_examples=40, deadline=None)
    @given(simple_graphs(max_vertices=7))
    def test_connectivity_matches_networkx(self, g):
        nxg = nx.Graph()
        nxg.add_nodes_from(g.vertices)
        nxg.add_edges_from(g.edges)
        assert is_connected(g) == nx.is_connected(nxg)


class TestOrientations:
    def test_k4_has_64(self):
        orientations = list(enumerate_orientations(complete_graph(4)))
        assert len(orientations) == 64
        assert len(set(orientations)) == 64

    def test_bit_reverses_edge(self):
        g = UndirectedGraph(3, ((0, 1), (1, 2)))
        first, second, *_ = enumerate_orientations(g)
        assert first.edges == ((0, 1), (1, 2))
        assert second.edges == ((1, 0), (1, 2))

    def test_edge_limit(self):
        with pytest.raises(DomainError):
            list(enumerate_orientations(complete_graph(6), limit=10))

    def test_zero_limit_is_honoured(self):
        with pytest.raises(DomainError):
            list(enumerate_orientations(complete_graph(3), limit=0))
        assert len(list(enumerate_orientations(UndirectedGraph(2, ()), limit=0))) == 1

    @settings(max_examples=20, deadline=None)
    @given(simple_graphs(max_vertices=5))
    def test_degree_sums(self, g):
        for d in enumerate_orientations(g):
            assert all(a + b == g.degree(v) for v, (a, b) in enumerate(zip(d.out_degree, d.in_degree)))
            assert underlying_graph(d) == g


class TestSubgraphs:
    def test_induced_subgraph(self):
        sub, index = induced_subgraph(useful_complete(4), [1, 2, 3])
        assert index == {1: 0, 2: 1, 3: 2}
        assert sub.edges == ((0, 1), (1, 2), (2, 0))

    def test_relabel(self):
        g = DirectedMultigraph(3, ((0, 1), (1, 2)))
        assert relabel(g, [2, 0, 1]).edges == ((0, 1), (2, 0))

    def test_relabel_needs_permutation(self):
        with pytest.raises(DomainError):
            relabel(DirectedMultigraph(3, ()), [0, 0, 1])

    @settings(max_examples=60, deadline=None)
    @given(digraphs(max_vertices=7, max_edges=14), st.data())
    def test_components_survive_relabeling(self, g, data):
        permutation = data.draw(st.permutations(range(g.vertex_count)))
        inverse = [0] * g.vertex_count
        for v, w in enumerate(permutation):
            inverse[w] = v
        moved = relabel(g, permutation)
        assert relabel(moved, inverse) == g
        back = sorted(tuple(sorted(inverse[w] for w in c)) for c in scc_partition(moved).components)
        assert back == list(scc_partition(g).components)
