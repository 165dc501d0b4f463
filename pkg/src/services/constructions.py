"""
Builders for the graph families and games used throughout the toolkit

Index conventions:
- directed_cycle(n): vertices v_0..v_{n-1}, edges v_{i+1} -> v_i and v_0 -> v_{n-1}.
- useful_complete / useful_bipartite: label v_i is index i-1.
- bipartite_with_sink(a, b): indices 0..2a-1 are the embedded useful K_{a,a}
  (its odd labels, i.e. even indices, form the left side); 2a..a+b-1 are the
  extra right-side vertices.
- realize_sequence gadget: shared vertex v = 0, then each cycle copy's
  v_1..v_{l-1} in copy order, then u, then the waterfalls in order.
"""
import logging
import random
from dataclasses import dataclass, field
from typing import Optional, Union

from src.errors import ContractViolation, DomainError, UnrealizableSequence
from src.services.dynamics import ChipConfiguration, Graph
from src.services.graph_core import (
    DirectedMultigraph,
    UndirectedGraph,
    bfs_distance,
)
from src.services.period_analysis import FiringString, minimal_string_period

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GadgetGame:
    """A ready-to-run game: graph, initial chips, and optional annotations"""
    graph: Graph
    initial: ChipConfiguration
    designated_vertex: Optional[int] = None
    predicted_period: Optional[int] = None
    label: str = field(default="", compare=False)

    def __post_init__(self):
        n = self.graph.vertex_count
        if len(self.initial) != n:
            raise ContractViolation(
                f"initial configuration has {len(self.initial)} entries for {n} vertices"
            )
        if self.designated_vertex is not None and not 0 <= self.designated_vertex < n:
            raise DomainError(f"designated vertex {self.designated_vertex} out of range")
        if self.predicted_period is not None and self.predicted_period < 1:
            raise DomainError(f"predicted period must be positive, got {self.predicted_period}")

    @property
    def is_directed(self) -> bool:
        return isinstance(self.graph, DirectedMultigraph)


# ========== Directed families ==========

def directed_cycle(n: int) -> DirectedMultigraph:
    if n < 2:
        raise DomainError(f"directed cycle needs n >= 2, got {n}")
    edges = [(i + 1, i) for i in range(n - 1)] + [(0, n - 1)]
    return DirectedMultigraph(n, tuple(edges))


def directed_path(n: int) -> DirectedMultigraph:
    """v_0 -> v_1 -> ... -> v_{n-1}"""
    if n < 1:
        raise DomainError(f"directed path needs n >= 1, got {n}")
    return DirectedMultigraph(n, tuple((i, i + 1) for i in range(n - 1)))


def cycle_divisor_game(n: int, i: int) -> GadgetGame:
    """One chip on every v_j with j = 0 mod i; the period is i"""
    if i < 1 or n % i:
        raise DomainError(f"period {i} does not divide cycle length {n}")
    g = directed_cycle(n)
    chips = tuple(1 if j % i == 0 else 0 for j in range(n))
    return GadgetGame(g, ChipConfiguration(chips), designated_vertex=0, predicted_period=i,
                      label=f"C_{n} divisor game, period {i}")


def useful_complete(n: int) -> DirectedMultigraph:
    """Useful orientation of K_n"""
    if n < 3:
        raise DomainError(f"useful orientation of K_n needs n >= 3, got {n}")
    edges = [(i, i + 1) for i in range(n - 1)] + [(n - 1, 0)]
    # v_1 -> v_k for 3 <= k <= n-1
    edges += [(0, k - 1) for k in range(3, n)]
    # v_j -> v_k for 1 < k <= j-2
    edges += [(j - 1, k - 1) for j in range(4, n + 1) for k in range(2, j - 1)]
    return DirectedMultigraph(n, tuple(edges))


def useful_bipartite(a: int) -> DirectedMultigraph:
    """Useful orientation of K_{a,a}; odd labels form one side, even labels the other"""
    if a < 2:
        raise DomainError(f"useful orientation of K_(a,a) needs a >= 2, got {a}")
    m = 2 * a
    edges = [(i, i + 1) for i in range(m - 1)] + [(m - 1, 0)]
    # v_1 -> v_{2i} for 1 < i < a
    edges += [(0, 2 * i - 1) for i in range(2, a)]
    # v_{2j+1} -> v_{2k} for 1 <= k < j
    edges += [(2 * j, 2 * k - 1) for j in range(2, a) for k in range(1, j)]
    # v_{2j} -> v_{2k-1} for 1 < k < j
    edges += [(2 * j - 1, 2 * k - 2) for j in range(3, a + 1) for k in range(2, j)]
    return DirectedMultigraph(m, tuple(edges))


def bipartite_with_sink(a: int, b: int) -> DirectedMultigraph:
    """Orientation of K_{a,b} whose only sink component is the useful K_{a,a}"""
    if not 2 <= a < b:
        raise DomainError(f"need 2 <= a < b, got a={a}, b={b}")
    core = useful_bipartite(a)
    left = range(0, 2 * a, 2)
    extra = range(2 * a, a + b)
    edges = list(core.edges) + [(x, w) for x in extra for w in left]
    return DirectedMultigraph(a + b, tuple(edges))


def identify_useful_family(g: DirectedMultigraph) -> Optional[tuple[str, int]]:
    """("complete", n) or ("bipartite", a) when g is exactly a useful orientation"""
    n = g.vertex_count
    if n >= 3 and g.edge_count == n * (n - 1) // 2 and g == useful_complete(n):
        return ("complete", n)
    if n >= 4 and n % 2 == 0 and g.edge_count == (n // 2) ** 2 and g == useful_bipartite(n // 2):
        return ("bipartite", n // 2)
    return None


# ========== Undirected families ==========

def complete_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph(n, tuple((u, v) for u in range(n) for v in range(u + 1, n)))


def complete_bipartite_graph(a: int, b: int) -> UndirectedGraph:
    """Left side 0..a-1, right side a..a+b-1"""
    return UndirectedGraph(a + b, tuple((u, a + w) for u in range(a) for w in range(b)))


def cycle_graph(n: int) -> UndirectedGraph:
    if n < 3:
        raise DomainError(f"undirected cycle needs n >= 3, got {n}")
    return UndirectedGraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> UndirectedGraph:
    return UndirectedGraph(n, tuple((i, i + 1) for i in range(max(n - 1, 0))))


def star_graph(leaves: int) -> UndirectedGraph:
    """Center 0 joined to leaves 1..leaves"""
    return UndirectedGraph(leaves + 1, tuple((0, i) for i in range(1, leaves + 1)))


# ========== Firing-sequence realization ==========

def _short_sequence_game(s: FiringString) -> GadgetGame:
    """Strings of length 1 or 2 (00 excluded)"""
    label = f"sequence {s}"
    if s.bits == "0":
        return GadgetGame(directed_cycle(3), ChipConfiguration.zeros(3), 0, 1, label)
    if s.bits == "1":
        return GadgetGame(directed_cycle(3), ChipConfiguration((1, 1, 1)), 0, 1, label)
    if s.bits in ("10", "01"):
        designated = 0 if s.bits == "10" else 1
        return GadgetGame(directed_cycle(4), ChipConfiguration((1, 0, 1, 0)), designated, 2, label)
    # "11": edges (1,2),(2,3),(2,4),(3,1),(4,1), two chips on v_1 and v_2
    g = DirectedMultigraph(4, ((0, 1), (1, 2), (1, 3), (2, 0), (3, 0)))
    return GadgetGame(g, ChipConfiguration((2, 2, 0, 0)), 0, 2, label)


def _cycle_sequence_game(s: FiringString) -> GadgetGame:
    """Plain C_l with c_0(v_i) = s_i; v_0 reads s when s is not periodic"""
    chips = tuple(int(b) for b in s.bits)
    return GadgetGame(directed_cycle(s.length), ChipConfiguration(chips), 0, s.length,
                      f"sequence {s} (cycle)")


def _motor_gadget(s: FiringString, extra_chips_when_flush: bool) -> GadgetGame:
    """
    2n copies of C_l glued at v, plus u and n waterfalls

    v fires exactly when s_t = 1; u collects one chip per firing of v and
    releases them down the waterfalls so they reach v again on round l.
    """
    length, n, d = s.length, s.ones, s.trailing_zeros
    copies = 2 * n
    fall = max(d, 1)
    v = 0

    def cycle_vertex(j: int, i: int) -> int:
        # v_i^j for 1 <= i <= l-1
        return 1 + j * (length - 1) + (i - 1)

    u = 1 + copies * (length - 1)

    def waterfall_vertex(j: int, i: int) -> int:
        return u + 1 + j * fall + i

    vertex_count = u + 1 + n * fall
    chips = [0] * vertex_count
    edges: list[tuple[int, int]] = []

    for j in range(copies):
        for i in range(1, length - 1):
            edges.append((cycle_vertex(j, i + 1), cycle_vertex(j, i)))
        edges.append((cycle_vertex(j, 1), v))
        edges.append((v, cycle_vertex(j, length - 1)))
        for i in range(1, length):
            chips[cycle_vertex(j, i)] = s[i]
    chips[v] = copies * s[0]

    edges.append((v, u))
    for j in range(n):
        edges.append((u, waterfall_vertex(j, 0)))
        for i in range(fall - 1):
            edges.append((waterfall_vertex(j, i), waterfall_vertex(j, i + 1)))
        edges.append((waterfall_vertex(j, fall - 1), v))

    if d >= 1:
        for j in range(n):
            chips[waterfall_vertex(j, d - 1)] = 1
        chips[v] += n
    else:
        chips[u] = n
        if extra_chips_when_flush:
            chips[v] += n

    logger.debug(f"Gadget for {s}: {vertex_count} vertices, {len(edges)} edges")
    return GadgetGame(
        DirectedMultigraph(vertex_count, tuple(edges)),
        ChipConfiguration(tuple(chips)),
        designated_vertex=v,
        predicted_period=length,
        label=f"sequence {s} (gadget)",
    )


def realize_sequence(
    s: Union[FiringString, str],
    force_gadget: bool = False,
    extra_chips_when_flush: bool = True,
) -> GadgetGame:
    """
    A game whose designated vertex has atomic firing sequence s and period len(s)

    Strings of length >= 3 that are not periodic use the plain cycle unless
    force_gadget is set. extra_chips_when_flush controls whether v also gets
    the n extra chips when s ends in 1.
    """
    s = s if isinstance(s, FiringString) else FiringString(s)
    if s.length == 0:
        raise DomainError("cannot realize the empty string")
    if s.is_all_zero and s.length >= 2:
        raise UnrealizableSequence(
            f"{s} is all zeros: on a strongly connected graph a periodic game "
            f"with T >= 2 has no forever-passive vertex"
        )
    if s.length <= 2:
        return _short_sequence_game(s)
    if not force_gadget and minimal_string_period(s) == s.length:
        return _cycle_sequence_game(s)
    return _motor_gadget(s, extra_chips_when_flush)


# ========== Undirected period-2 game ==========

def undirected_t2_game(g: UndirectedGraph, anchor: int = 0) -> GadgetGame:
    """
    Period-2 game: deg(u) chips at even distance from the anchor,
    deg(u) - n(u) at odd distance, n(u) counting neighbors at another distance
    """
    if g.vertex_count < 2:
        raise DomainError("period-2 game needs at least 2 vertices")
    distance = bfs_distance(g, anchor)
    if any(x is None for x in distance):
        raise DomainError("period-2 game needs a connected graph")
    chips = []
    for w in g.vertices:
        degree = g.degree(w)
        if distance[w] % 2 == 0:
            chips.append(degree)
        else:
            crossing = sum(1 for x in g.neighbors[w] if distance[x] != distance[w])
            chips.append(degree - crossing)
    return GadgetGame(g, ChipConfiguration(tuple(chips)), designated_vertex=anchor,
                      predicted_period=2, label=f"undirected period-2 game anchored at {anchor}")


# ========== Seeded random families ==========

def random_configuration(vertex_count: int, max_total: int, rng: random.Random) -> ChipConfiguration:
    """Total drawn uniformly from [0, max_total], each chip dropped on a uniform vertex"""
    chips = [0] * vertex_count
    if vertex_count:
        for _ in range(rng.randint(0, max_total)):
            chips[rng.randrange(vertex_count)] += 1
    return ChipConfiguration(tuple(chips))


def random_dag(vertex_count: int, rng: random.Random, edge_probability: float = 0.3) -> DirectedMultigraph:
    """Edges only go from a lower to a higher position of a random vertex order"""
    order = list(range(vertex_count))
    rng.shuffle(order)
    edges = [
        (order[i], order[j])
        for i in range(vertex_count)
        for j in range(i + 1, vertex_count)
        if rng.random() < edge_probability
    ]
    return DirectedMultigraph(vertex_count, tuple(edges))


def random_connected_graph(vertex_count: int, rng: random.Random, edge_probability: float = 0.3) -> UndirectedGraph:
    """Random spanning tree plus independent extra edges"""
    edges = set()
    for v in range(1, vertex_count):
        w = rng.randrange(v)
        edges.add((w, v))
    for u in range(vertex_count):
        for v in range(u + 1, vertex_count):
            if rng.random() < edge_probability:
                edges.add((u, v))
    return UndirectedGraph(vertex_count, tuple(sorted(edges)))


def random_strongly_connected(vertex_count: int, rng: random.Random, extra_edges: int = 3) -> DirectedMultigraph:
    """Hamiltonian cycle through a random order plus random extra edges (parallel allowed)"""
    if vertex_count < 2:
        raise DomainError("strongly connected random graph needs at least 2 vertices")
    order = list(range(vertex_count))
    rng.shuffle(order)
    edges = [(order[i], order[(i + 1) % vertex_count]) for i in range(vertex_count)]
    for _ in range(extra_edges):
        u, v = rng.sample(range(vertex_count), 2)
        edges.append((u, v))
    return DirectedMultigraph(vertex_count, tuple(edges))
