"""Tests for the parallel firing rule"""
import pytest
from hypothesis import given, settings, strategies as st

from src.errors import BudgetExhausted, ContractViolation, DomainError
from src.services.constructions import complete_graph, directed_cycle, path_graph
from src.services.dynamics import (
    ChipConfiguration,
    GameMode,
    run_trajectory,
    step,
    step_directed,
    step_undirected,
)
from src.services.graph_core import DirectedMultigraph, relabel
from tests.conftest import K4_ORBIT, digraphs, games, simple_graphs


def test_k4_single_step(k4):
    result = step_directed(k4, ChipConfiguration((1, 0, 2, 2)))
    assert result.next.chips == (2, 1, 1, 1)
    assert result.fired == (False, False, True, True)


def test_k4_orbit(k4):
    trajectory = run_trajectory(k4, ChipConfiguration(K4_ORBIT[0]), 4)
    assert [c.chips for c in trajectory.configurations] == K4_ORBIT + [K4_ORBIT[0]]
    assert trajectory.rounds == 4


def test_sink_never_fires():
    g = DirectedMultigraph(2, ((0, 1),))
    result = step(g, ChipConfiguration((0, 7)))
    assert result.fired == (False, False)
    assert result.next.chips == (0, 7)


def test_undirected_path_step():
    # middle vertex has degree 2
    result = step_undirected(path_graph(3), ChipConfiguration((0, 2, 0)))
    assert result.next.chips == (1, 0, 1)
    assert result.fired == (False, True, False)


def test_undirected_step_through_dispatch():
    assert step(complete_graph(3), ChipConfiguration((2, 0, 0))).next.chips == (0, 1, 1)


def test_negative_chips_rejected():
    with pytest.raises(DomainError):
        ChipConfiguration((1, -1))


def test_length_mismatch():
    with pytest.raises(ContractViolation):
        step(directed_cycle(3), ChipConfiguration((1, 0)))


def test_mode_mismatch():
    with pytest.raises(ContractViolation):
        run_trajectory(directed_cycle(3), ChipConfiguration.zeros(3), 2, mode=GameMode.UNDIRECTED)
    run_trajectory(directed_cycle(3), ChipConfiguration.zeros(3), 2, mode="directed")


def test_zero_rounds():
    trajectory = run_trajectory(directed_cycle(3), ChipConfiguration((1, 2, 3)), 0)
    assert trajectory.final.chips == (1, 2, 3)
    assert trajectory.firings == ()


def test_negative_rounds():
    with pytest.raises(DomainError):
        run_trajectory(directed_cycle(3), ChipConfiguration.zeros(3), -1)


def test_trajectory_cap():
    with pytest.raises(BudgetExhausted):
        run_trajectory(directed_cycle(3), ChipConfiguration.zeros(3), 11, cap=10)


def test_zero_cap_rejected():
    with pytest.raises(DomainError):
        run_trajectory(directed_cycle(3), ChipConfiguration((1, 0, 0)), 5, cap=0)


@settings(max_examples=80, deadline=None)
@given(games())
def test_chips_conserved(game):
    g, c = game
    trajectory = run_trajectory(g, c, 10)
    assert all(x.total == c.total for x in trajectory.configurations)


@settings(max_examples=40, deadline=None)
@given(games(graph_strategy=simple_graphs(min_vertices=2)))
def test_undirected_chips_conserved(game):
    g, c = game
    assert all(x.total == c.total for x in run_trajectory(g, c, 10).configurations)


@settings(max_examples=60, deadline=None)
@given(games())
def test_fired_means_enough_chips(game):
    g, c = game
    result = step(g, c)
    for v, fired in enumerate(result.fired):
        assert fired == (g.out_degree[v] > 0 and c[v] >= g.out_degree[v])


@settings(max_examples=60, deadline=None)
@given(games())
def test_deterministic(game):
    g, c = game
    assert run_trajectory(g, c, 6) == run_trajectory(g, c, 6)


@settings(max_examples=60, deadline=None)
@given(games(graph_strategy=digraphs(min_vertices=2)))
def test_relabeling_commutes_with_step(game):
    g, c = game
    n = g.vertex_count
    permutation = [(v + 1) % n for v in range(n)]
    moved = [0] * n
    for v in range(n):
        moved[permutation[v]] = c[v]
    expected = [0] * n
    nxt = step(g, c).next
    for v in range(n):
        expected[permutation[v]] = nxt[v]
    assert step(relabel(g, permutation), ChipConfiguration(tuple(moved))).next.chips == tuple(expected)


@settings(max_examples=60, deadline=None)
@given(st.integers(2, 8).flatmap(lambda n: st.lists(st.integers(0, 1), min_size=n, max_size=n)))
def test_cycle_never_stacks_chips(chips):
    n = len(chips)
    trajectory = run_trajectory(directed_cycle(n), ChipConfiguration(tuple(chips)), 3 * n)
    assert all(max(c.chips) <= 1 for c in trajectory.configurations)
