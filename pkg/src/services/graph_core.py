"""
Graph representations for chip-firing games

Vertices are dense indices 0..n-1 (the usual label v_i is index i-1 unless a
construction says otherwise). Directed graphs are multigraphs: parallel
edges are kept and every degree counts multiplicity. Self-loops are refused.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Optional, Sequence

from src.config import config
from src.errors import DomainError

logger = logging.getLogger(__name__)


def _check_vertex(v: int, vertex_count: int) -> None:
    if not 0 <= v < vertex_count:
        raise DomainError(f"vertex index {v} out of range for {vertex_count} vertices")


@dataclass(frozen=True)
class DirectedMultigraph:
    """Vertex count plus a multiset of directed edges (stored sorted)"""
    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()
    out_degree: tuple[int, ...] = field(init=False, repr=False, compare=False)
    in_degree: tuple[int, ...] = field(init=False, repr=False, compare=False)
    out_neighbors: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)
    in_neighbors: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise DomainError(f"vertex count must be nonnegative, got {n}")
        edges = tuple(sorted((int(u), int(v)) for u, v in self.edges))
        out_lists: list[list[int]] = [[] for _ in range(n)]
        in_lists: list[list[int]] = [[] for _ in range(n)]
        for u, v in edges:
            _check_vertex(u, n)
            _check_vertex(v, n)
            if u == v:
                raise DomainError(f"self-loop at vertex {u} is not allowed")
            out_lists[u].append(v)
            in_lists[v].append(u)
        object.__setattr__(self, "edges", edges)
        object.__setattr__(self, "out_neighbors", tuple(tuple(a) for a in out_lists))
        object.__setattr__(self, "in_neighbors", tuple(tuple(a) for a in in_lists))
        object.__setattr__(self, "out_degree", tuple(len(a) for a in out_lists))
        object.__setattr__(self, "in_degree", tuple(len(a) for a in in_lists))

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def multiplicity(self, u: int, v: int) -> int:
        """Number of parallel edges u -> v"""
        return self.out_neighbors[u].count(v)


@dataclass(frozen=True)
class UndirectedGraph:
    """Simple undirected graph; edges stored as sorted (min, max) pairs"""
    vertex_count: int
    edges: tuple[tuple[int, int], ...] = ()
    neighbors: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = self.vertex_count
        if n < 0:
            raise DomainError(f"vertex count must be nonnegative, got {n}")
        seen: set[tuple[int, int]] = set()
        adjacency: list[list[int]] = [[] for _ in range(n)]
        for u, v in self.edges:
            u, v = int(u), int(v)
            _check_vertex(u, n)
            _check_vertex(v, n)
            if u == v:
                raise DomainError(f"self-loop at vertex {u} is not allowed")
            pair = (min(u, v), max(u, v))
            if pair in seen:
                raise DomainError(f"duplicate edge {pair[0]}-{pair[1]}")
            seen.add(pair)
            adjacency[u].append(v)
            adjacency[v].append(u)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        object.__setattr__(self, "neighbors", tuple(tuple(sorted(a)) for a in adjacency))

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.neighbors)

    @cached_property
    def symmetric(self) -> DirectedMultigraph:
        """Both directions of every edge; out-degree equals the undirected degree"""
        arcs = [(u, v) for u, v in self.edges] + [(v, u) for u, v in self.edges]
        return DirectedMultigraph(self.vertex_count, tuple(arcs))

    def as_directed(self) -> DirectedMultigraph:
        return self.symmetric


@dataclass(frozen=True)
class CondensationReport:
    """Strong components, the condensation DAG and its sinks"""
    component_of: tuple[int, ...]
    components: tuple[tuple[int, ...], ...]
    condensation_edges: frozenset[tuple[int, int]]
    sink_components: tuple[int, ...]

    @property
    def is_strongly_connected(self) -> bool:
        return len(self.components) == 1

    def sink_vertices(self) -> set[int]:
        return {v for c in self.sink_components for v in self.components[c]}

    def topological_order(self) -> list[int]:
        """Component ids, sources first (Kahn)"""
        indegree = [0] * len(self.components)
        successors: list[list[int]] = [[] for _ in self.components]
        for a, b in sorted(self.condensation_edges):
            indegree[b] += 1
            successors[a].append(b)
        queue = deque(c for c, d in enumerate(indegree) if d == 0)
        order = []
        while queue:
            c = queue.popleft()
            order.append(c)
            for b in successors[c]:
                indegree[b] -= 1
                if indegree[b] == 0:
                    queue.append(b)
        return order


def _tarjan(g: DirectedMultigraph) -> list[list[int]]:
    """Iterative Tarjan; components come out in reverse topological order"""
    index: dict[int, int] = {}
    lowlink: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    result: list[list[int]] = []
    counter = 0

    for root in g.vertices:
        if root in index:
            continue
        work = [(root, 0)]
        while work:
            v, i = work.pop()
            if i == 0:
                index[v] = lowlink[v] = counter
                counter += 1
                stack.append(v)
                on_stack.add(v)
            recurse = False
            successors = g.out_neighbors[v]
            while i < len(successors):
                w = successors[i]
                i += 1
                if w not in index:
                    work.append((v, i))
                    work.append((w, 0))
                    recurse = True
                    break
                if w in on_stack:
                    lowlink[v] = min(lowlink[v], index[w])
            if recurse:
                continue
            if lowlink[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    component.append(w)
                    if w == v:
                        break
                result.append(component)
            if work:
                parent = work[-1][0]
                lowlink[parent] = min(lowlink[parent], lowlink[v])
    return result


def scc_partition(g: DirectedMultigraph) -> CondensationReport:
    """
    Maximal strongly connected components of g

    Component ids are assigned in order of each component's smallest vertex,
    so the report does not depend on traversal details.
    """
    raw = sorted((sorted(c) for c in _tarjan(g)), key=lambda c: c[0])
    component_of = [0] * g.vertex_count
    for cid, members in enumerate(raw):
        for v in members:
            component_of[v] = cid
    condensation = frozenset(
        (component_of[u], component_of[v])
        for u, v in g.edges
        if component_of[u] != component_of[v]
    )
    has_out = {a for a, _ in condensation}
    sinks = tuple(c for c in range(len(raw)) if c not in has_out)
    logger.debug(f"SCC: {len(raw)} components, {len(sinks)} sinks")
    return CondensationReport(
        component_of=tuple(component_of),
        components=tuple(tuple(c) for c in raw),
        condensation_edges=condensation,
        sink_components=sinks,
    )


def is_strongly_connected(g: DirectedMultigraph) -> bool:
    return g.vertex_count > 0 and scc_partition(g).is_strongly_connected


def is_dag(g: DirectedMultigraph) -> bool:
    """True iff g has no directed cycle (self-loops cannot occur)"""
    return all(len(c) == 1 for c in scc_partition(g).components)


def bfs_distance(g: UndirectedGraph, source: int) -> list[Optional[int]]:
    """Edge-count distances from source; None marks unreachable vertices"""
    _check_vertex(source, g.vertex_count)
    distance: list[Optional[int]] = [None] * g.vertex_count
    distance[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.neighbors[u]:
            if distance[w] is None:
                distance[w] = distance[u] + 1
                queue.append(w)
    return distance


def is_connected(g: UndirectedGraph) -> bool:
    if g.vertex_count == 0:
        return True
    return all(d is not None for d in bfs_distance(g, 0))


def enumerate_orientations(g: UndirectedGraph, limit: Optional[int] = None) -> Iterator[DirectedMultigraph]:
    """
    All 2^m orientations of g

    Orientation k reverses edge i (in g.edges order, stored as (min, max))
    exactly when bit i of k is set, so k = 0 points every edge upward.
    """
    limit = limit if limit is not None else config.ORIENTATION_EDGE_LIMIT
    if limit < 0:
        raise DomainError(f"orientation limit must be nonnegative, got {limit}")
    m = len(g.edges)
    if m > limit:
        raise DomainError(
            f"{m} edges exceed the orientation limit of {limit} (2^{m} orientations)",
            edges=m, limit=limit,
        )
    for mask in range(1 << m):
        yield DirectedMultigraph(
            g.vertex_count,
            tuple((v, u) if mask >> i & 1 else (u, v) for i, (u, v) in enumerate(g.edges)),
        )


def underlying_graph(g: DirectedMultigraph) -> UndirectedGraph:
    """Forget directions; two edges on the same pair raise DomainError"""
    return UndirectedGraph(g.vertex_count, g.edges)


def induced_subgraph(g: DirectedMultigraph, vertices: Iterable[int]) -> tuple[DirectedMultigraph, dict[int, int]]:
    """Subgraph on the given vertices, relabeled 0..k-1 in increasing order"""
    keep = sorted(set(vertices))
    for v in keep:
        _check_vertex(v, g.vertex_count)
    index = {v: i for i, v in enumerate(keep)}
    edges = tuple((index[u], index[v]) for u, v in g.edges if u in index and v in index)
    return DirectedMultigraph(len(keep), edges), index


def relabel(g: DirectedMultigraph, permutation: Sequence[int]) -> DirectedMultigraph:
    """Vertex v becomes permutation[v]"""
    if sorted(permutation) != list(g.vertices):
        raise DomainError("relabeling must be a permutation of the vertex indices")
    return DirectedMultigraph(g.vertex_count, tuple((permutation[u], permutation[v]) for u, v in g.edges))
