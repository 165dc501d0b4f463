"""
Parallel chip-firing update rule

Every vertex holding at least deg+(v) chips (and with deg+(v) > 0) fires,
all at once, sending one chip along each out-edge. Undirected games run the
same rule on the symmetric digraph, where deg+ is the undirected degree.
"""
import logging
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Union

from src.config import config
from src.errors import BudgetExhausted, ContractViolation, DomainError
from src.services.graph_core import DirectedMultigraph, UndirectedGraph

logger = logging.getLogger(__name__)

Graph = Union[DirectedMultigraph, UndirectedGraph]


class GameMode(str, Enum):
    DIRECTED = "directed"
    UNDIRECTED = "undirected"


@dataclass(frozen=True)
class ChipConfiguration:
    """Chip count per vertex"""
    chips: tuple[int, ...]

    def __post_init__(self):
        chips = tuple(int(c) for c in self.chips)
        if any(c < 0 for c in chips):
            raise DomainError(f"chip counts must be nonnegative: {chips}")
        object.__setattr__(self, "chips", chips)

    @classmethod
    def zeros(cls, vertex_count: int) -> "ChipConfiguration":
        return cls((0,) * vertex_count)

    @classmethod
    def of(cls, chips: Iterable[int]) -> "ChipConfiguration":
        return cls(tuple(chips))

    @property
    def total(self) -> int:
        return sum(self.chips)

    def __len__(self) -> int:
        return len(self.chips)

    def __getitem__(self, v: int) -> int:
        return self.chips[v]

    def __str__(self) -> str:
        return ",".join(str(c) for c in self.chips)


@dataclass(frozen=True)
class StepResult:
    next: ChipConfiguration
    fired: tuple[bool, ...]


@dataclass(frozen=True)
class TrajectoryRecord:
    """Configurations for rounds 0..R and firing vectors for rounds 0..R-1"""
    configurations: tuple[ChipConfiguration, ...]
    firings: tuple[tuple[bool, ...], ...]

    @property
    def rounds(self) -> int:
        return len(self.firings)

    @property
    def final(self) -> ChipConfiguration:
        return self.configurations[-1]


def arena(g: Graph) -> DirectedMultigraph:
    """The digraph a game on g actually runs on"""
    if isinstance(g, UndirectedGraph):
        return g.as_directed()
    return g


def advance(
    out_degree: tuple[int, ...],
    out_neighbors: tuple[tuple[int, ...], ...],
    chips: tuple[int, ...],
) -> tuple[tuple[int, ...], tuple[bool, ...]]:
    """One parallel round on raw tuples (hot path for detectors and audits)"""
    fired = tuple(d > 0 and c >= d for c, d in zip(chips, out_degree))
    nxt = list(chips)
    for v, f in enumerate(fired):
        if f:
            nxt[v] -= out_degree[v]
            for w in out_neighbors[v]:
                nxt[w] += 1
    return tuple(nxt), fired


def _check_paired(g: DirectedMultigraph, c: ChipConfiguration) -> None:
    if len(c) != g.vertex_count:
        raise ContractViolation(
            f"configuration has {len(c)} entries but the graph has {g.vertex_count} vertices"
        )


def step_directed(g: DirectedMultigraph, c: ChipConfiguration) -> StepResult:
    _check_paired(g, c)
    nxt, fired = advance(g.out_degree, g.out_neighbors, c.chips)
    return StepResult(ChipConfiguration(nxt), fired)


def step_undirected(g: UndirectedGraph, c: ChipConfiguration) -> StepResult:
    return step_directed(g.as_directed(), c)


def step(g: Graph, c: ChipConfiguration) -> StepResult:
    if isinstance(g, UndirectedGraph):
        return step_undirected(g, c)
    return step_directed(g, c)


def run_trajectory(
    g: Graph,
    c0: ChipConfiguration,
    rounds: int,
    mode: Optional[Union[GameMode, str]] = None,
    cap: Optional[int] = None,
) -> TrajectoryRecord:
    """
    Apply the firing rule `rounds` times and keep every state

    mode defaults to the graph's own kind; an explicit mode must agree with it.
    """
    cap = cap if cap is not None else config.TRAJECTORY_CAP
    if cap < 1:
        raise DomainError(f"trajectory cap must be at least 1, got {cap}")
    expected = GameMode.UNDIRECTED if isinstance(g, UndirectedGraph) else GameMode.DIRECTED
    if mode is not None and GameMode(mode) != expected:
        raise ContractViolation(f"mode {GameMode(mode).value} does not match a {expected.value} graph")
    if rounds < 0:
        raise DomainError(f"rounds must be nonnegative, got {rounds}")
    if rounds > cap:
        raise BudgetExhausted(f"{rounds} rounds exceed the trajectory cap of {cap}")

    d = arena(g)
    _check_paired(d, c0)
    chips = c0.chips
    configurations = [c0]
    firings = []
    for _ in range(rounds):
        chips, fired = advance(d.out_degree, d.out_neighbors, chips)
        configurations.append(ChipConfiguration(chips))
        firings.append(fired)
    logger.debug(f"Trajectory of {rounds} rounds on {d.vertex_count} vertices")
    return TrajectoryRecord(tuple(configurations), tuple(firings))
