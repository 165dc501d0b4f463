"""Tests for graph families, gadgets and random generators"""
import itertools
import random

import pytest

from src.errors import ContractViolation, DomainError, UnrealizableSequence
from src.services.constructions import (
    GadgetGame,
    bipartite_with_sink,
    complete_bipartite_graph,
    complete_graph,
    cycle_divisor_game,
    cycle_graph,
    directed_cycle,
    identify_useful_family,
    random_configuration,
    random_connected_graph,
    random_dag,
    random_strongly_connected,
    realize_sequence,
    star_graph,
    undirected_t2_game,
    useful_bipartite,
    useful_complete,
)
from src.services.dynamics import ChipConfiguration
from src.services.graph_core import (
    UndirectedGraph,
    is_connected,
    is_dag,
    is_strongly_connected,
    scc_partition,
    underlying_graph,
)
from src.services.period_analysis import atomic_firing_sequence, detect_period


def run(game: GadgetGame):
    summary = detect_period(game.graph, game.initial)
    return summary, str(atomic_firing_sequence(summary, game.designated_vertex))


class TestDirectedFamilies:
    def test_directed_cycle_edges(self):
        assert directed_cycle(4).edges == ((0, 3), (1, 0), (2, 1), (3, 2))
        with pytest.raises(DomainError):
            directed_cycle(1)

    @pytest.mark.parametrize("n, i", [(4, 1), (4, 2), (4, 4), (6, 3), (9, 3)])
    def test_cycle_divisor_game(self, n, i):
        summary, _ = run(cycle_divisor_game(n, i))
        assert summary.period == i

    def test_non_divisor(self):
        with pytest.raises(DomainError):
            cycle_divisor_game(6, 4)

    def test_useful_k4_matches_known_game(self, k4):
        assert k4.edges == ((0, 1), (0, 2), (1, 2), (2, 3), (3, 0), (3, 1))

    @pytest.mark.parametrize("n", range(3, 10))
    def test_useful_complete_is_tournament(self, n):
        g = useful_complete(n)
        assert g.edge_count == n * (n - 1) // 2
        assert underlying_graph(g) == complete_graph(n)
        assert is_strongly_connected(g)

    @pytest.mark.parametrize("a", range(2, 7))
    def test_useful_bipartite_orients_kaa(self, a):
        g = useful_bipartite(a)
        assert g.edge_count == a * a
        assert all((u - v) % 2 == 1 for u, v in g.edges)
        assert len(set(underlying_graph(g).edges)) == a * a
        assert is_strongly_connected(g)

    def test_bipartite_with_sink(self):
        g = bipartite_with_sink(2, 3)
        assert g.vertex_count == 5
        assert g.edge_count == 6
        report = scc_partition(g)
        assert report.sink_vertices() == {0, 1, 2, 3}
        assert g.out_neighbors[4] == (0, 2)

    def test_bipartite_with_sink_domain(self):
        with pytest.raises(DomainError):
            bipartite_with_sink(3, 3)

    def test_identify_useful_family(self):
        assert identify_useful_family(useful_complete(5)) == ("complete", 5)
        assert identify_useful_family(useful_bipartite(3)) == ("bipartite", 3)
        assert identify_useful_family(directed_cycle(5)) is None


class TestUndirectedFamilies:
    def test_sizes(self):
        assert len(complete_graph(5).edges) == 10
        assert len(complete_bipartite_graph(2, 3).edges) == 6
        assert star_graph(3).degrees == (3, 1, 1, 1)
        assert cycle_graph(5).degrees == (2,) * 5

    def test_k4_t2_game(self):
        game = undirected_t2_game(complete_graph(4))
        assert game.initial.chips == (3, 2, 2, 2)
        summary, _ = run(game)
        assert summary.period == 2
        assert summary.fire_counts == (1, 1, 1, 1)

    def test_even_cycle_t2_game(self):
        game = undirected_t2_game(cycle_graph(4))
        assert game.initial.chips == (2, 0, 2, 0)
        assert run(game)[0].period == 2

    @pytest.mark.parametrize("anchor", range(5))
    def test_t2_any_anchor(self, anchor):
        summary, _ = run(undirected_t2_game(cycle_graph(5), anchor))
        assert summary.period == 2

    def test_t2_needs_connected_graph(self):
        with pytest.raises(DomainError):
            undirected_t2_game(UndirectedGraph(3, ((0, 1),)))


class TestRealizeSequence:
    @pytest.mark.parametrize("bits", ["0", "1", "10", "01", "11"])
    def test_short_strings(self, bits):
        summary, got = run(realize_sequence(bits))
        assert summary.period == len(bits)
        assert got == bits

    @pytest.mark.parametrize("bits", ["110", "1000", "01101"])
    def test_aperiodic_strings_use_a_cycle(self, bits):
        game = realize_sequence(bits)
        assert game.graph == directed_cycle(len(bits))
        summary, got = run(game)
        assert (summary.period, got) == (len(bits), bits)

    @pytest.mark.parametrize("bits", ["1010", "111", "0101", "100100", "110", "0110", "011"])
    def test_gadget(self, bits):
        summary, got = run(realize_sequence(bits, force_gadget=True))
        assert summary.transient == 0
        assert summary.period == len(bits)
        assert got == bits

    def test_gadget_1010_size(self):
        game = realize_sequence("1010")
        # v, 4 cycles of 3 extra vertices, u, 2 waterfalls of one vertex
        assert game.graph.vertex_count == 1 + 4 * 3 + 1 + 2
        assert game.predicted_period == 4

    def test_all_lengths_up_to_five(self):
        for length in range(1, 6):
            for letters in itertools.product("01", repeat=length):
                bits = "".join(letters)
                if "1" not in bits and length > 1:
                    continue
                summary, got = run(realize_sequence(bits))
                assert (summary.period, got) == (length, bits)

    def test_flush_chips_option(self):
        with_extra = realize_sequence("111", extra_chips_when_flush=True)
        without = realize_sequence("111", extra_chips_when_flush=False)
        assert with_extra.graph == without.graph
        assert with_extra.initial[0] == without.initial[0] + 3

    @pytest.mark.parametrize("bits", ["00", "0000"])
    def test_all_zero_rejected(self, bits):
        with pytest.raises(UnrealizableSequence):
            realize_sequence(bits)

    def test_empty_rejected(self):
        with pytest.raises(DomainError):
            realize_sequence("")


class TestGadgetGame:
    def test_label_not_part_of_equality(self):
        g = directed_cycle(3)
        assert GadgetGame(g, ChipConfiguration.zeros(3), label="a") == GadgetGame(g, ChipConfiguration.zeros(3))

    def test_chip_length_checked(self):
        with pytest.raises(ContractViolation):
            GadgetGame(directed_cycle(3), ChipConfiguration.zeros(2))

    def test_designated_vertex_checked(self):
        with pytest.raises(DomainError):
            GadgetGame(directed_cycle(3), ChipConfiguration.zeros(3), designated_vertex=3)


class TestRandomFamilies:
    def test_seeded_generators_are_reproducible(self):
        assert random_dag(8, random.Random(3)) == random_dag(8, random.Random(3))

    def test_generated_properties(self, rng):
        for n in range(2, 10):
            assert is_dag(random_dag(n, rng))
            assert is_connected(random_connected_graph(n, rng))
            assert is_strongly_connected(random_strongly_connected(n, rng))
            c = random_configuration(n, 20, rng)
            assert len(c) == n and c.total <= 20
