"""
Period detection and firing-sequence analysis

detect_period keeps every visited configuration in a table keyed by the full
chip vector. The first revisit closes the eventual cycle of a deterministic
system, so the reported transient and period are exact and the period is
minimal.
"""
import itertools
import logging
from collections import Counter
from dataclasses import dataclass
from typing import Optional, Union

from pydantic import BaseModel, Field

from src.config import config
from src.errors import BudgetExhausted, ContractViolation, DomainError
from src.services.dynamics import ChipConfiguration, Graph, advance, arena

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PeriodSummary:
    """Transient t0, period T, and the orbit's configurations and firings"""
    transient: int
    period: int
    fire_counts: tuple[int, ...]
    cycle_configurations: tuple[ChipConfiguration, ...]
    firing_rows: tuple[tuple[bool, ...], ...]
    rounds_simulated: int = 0

    @property
    def vertex_count(self) -> int:
        return len(self.fire_counts)

    @property
    def is_fixed_point(self) -> bool:
        return self.period == 1


@dataclass(frozen=True)
class FiringString:
    """Binary firing string s with its length, ones, last one and trailing zeros"""
    bits: str

    def __post_init__(self):
        if any(ch not in "01" for ch in self.bits):
            raise DomainError(f"firing string may only contain 0 and 1: {self.bits!r}")

    @classmethod
    def from_flags(cls, flags) -> "FiringString":
        return cls("".join("1" if f else "0" for f in flags))

    @property
    def length(self) -> int:
        return len(self.bits)

    @property
    def ones(self) -> int:
        return self.bits.count("1")

    @property
    def last_one_index(self) -> Optional[int]:
        k = self.bits.rfind("1")
        return None if k < 0 else k

    @property
    def trailing_zeros(self) -> int:
        k = self.last_one_index
        return self.length if k is None else self.length - 1 - k

    @property
    def is_all_zero(self) -> bool:
        return self.ones == 0

    def __getitem__(self, i: int) -> int:
        return int(self.bits[i])

    def __str__(self) -> str:
        return self.bits


class PeriodDetector:
    """Exact transient/period detection with a round budget"""

    def __init__(self, max_rounds: Optional[int] = None):
        self.max_rounds = max_rounds if max_rounds is not None else config.MAX_ROUNDS
        if self.max_rounds < 1:
            raise DomainError(f"max_rounds must be at least 1, got {self.max_rounds}")

    def detect(self, g: Graph, c0: ChipConfiguration) -> PeriodSummary:
        d = arena(g)
        if len(c0) != d.vertex_count:
            raise ContractViolation(
                f"configuration has {len(c0)} entries but the graph has {d.vertex_count} vertices"
            )
        out_degree, out_neighbors = d.out_degree, d.out_neighbors
        seen: dict[tuple[int, ...], int] = {}
        history: list[tuple[int, ...]] = []
        rows: list[tuple[bool, ...]] = []
        chips = c0.chips
        t = 0
        while True:
            first = seen.get(chips)
            if first is not None:
                return self._summarize(history, rows, first, t)
            if t >= self.max_rounds:
                logger.warning(f"No repeat within {self.max_rounds} rounds")
                raise BudgetExhausted(
                    f"no repeated configuration within {self.max_rounds} rounds",
                    rounds_simulated=t,
                )
            seen[chips] = t
            history.append(chips)
            chips, fired = advance(out_degree, out_neighbors, chips)
            rows.append(fired)
            t += 1

    @staticmethod
    def _summarize(history, rows, t0: int, t: int) -> PeriodSummary:
        orbit_rows = tuple(rows[t0:t])
        counts = tuple(sum(col) for col in zip(*orbit_rows))
        logger.debug(f"Period {t - t0} after transient {t0}")
        return PeriodSummary(
            transient=t0,
            period=t - t0,
            fire_counts=counts,
            cycle_configurations=tuple(ChipConfiguration(c) for c in history[t0:t]),
            firing_rows=orbit_rows,
            rounds_simulated=t,
        )


def detect_period(g: Graph, c0: ChipConfiguration, max_rounds: Optional[int] = None) -> PeriodSummary:
    detector = period_detector if max_rounds is None else PeriodDetector(max_rounds)
    return detector.detect(g, c0)


def atomic_firing_sequence(summary: PeriodSummary, v: int) -> FiringString:
    """F_t0(v) ... F_{t0+T-1}(v)"""
    if not 0 <= v < summary.vertex_count:
        raise DomainError(f"vertex index {v} out of range for {summary.vertex_count} vertices")
    return FiringString.from_flags(row[v] for row in summary.firing_rows)


def minimal_string_period(bits: Union[FiringString, str]) -> int:
    """Smallest r dividing len(bits) such that bits is its length-r prefix repeated"""
    s = str(bits)
    if not s:
        raise DomainError("minimal period of an empty string is undefined")
    n = len(s)
    for r in range(1, n + 1):
        if n % r == 0 and s[:r] * (n // r) == s:
            return r
    return n


def joint_firing_period(summary: PeriodSummary) -> int:
    """Smallest r such that every vertex's orbit firing sequence is r-periodic"""
    T = summary.period
    for r in range(1, T + 1):
        if T % r:
            continue
        if all(summary.firing_rows[i] == summary.firing_rows[i % r] for i in range(T)):
            return r
    return T


def forever_passive_vertices(summary: PeriodSummary) -> list[int]:
    """Vertices that never fire once the game is periodic"""
    return [v for v, f in enumerate(summary.fire_counts) if f == 0]


class SearchReport(BaseModel):
    """Outcome of a bounded convergent-period search"""
    min_period: Optional[int] = None
    witness: Optional[list[int]] = None
    witness_cycle: Optional[list[int]] = None
    configurations_tested: int = 0
    complete: bool = True
    periods_seen: dict[int, int] = Field(default_factory=dict)
    parameters: dict = Field(default_factory=dict)


def convergent_period_search(
    g: Graph,
    min_chips: int,
    per_vertex_bound: int,
    max_rounds: Optional[int] = None,
    budget: Optional[int] = None,
) -> SearchReport:
    """
    Minimum period over every configuration with entries in [0, B] and total >= c

    Configurations are visited in lexicographic order; the witness is the first
    one attaining the minimum, and witness_cycle is the first periodic
    configuration it reaches. Running out of budget returns a partial report
    with complete=False.
    """
    if per_vertex_bound < 0 or min_chips < 0:
        raise DomainError("chip bounds must be nonnegative")
    budget = budget if budget is not None else config.SEARCH_BUDGET
    if budget < 1:
        raise DomainError(f"budget must be at least 1, got {budget}")
    detector = PeriodDetector(max_rounds)
    n = arena(g).vertex_count
    report = SearchReport(parameters={
        "min_chips": min_chips,
        "per_vertex_bound": per_vertex_bound,
        "max_rounds": detector.max_rounds,
        "budget": budget,
    })
    periods: Counter = Counter()
    space = (per_vertex_bound + 1) ** n
    if space > budget:
        logger.warning(f"Search space {space} exceeds budget {budget}; report will be partial")

    for chips in itertools.product(range(per_vertex_bound + 1), repeat=n):
        if sum(chips) < min_chips:
            continue
        if report.configurations_tested >= budget:
            report.complete = False
            break
        report.configurations_tested += 1
        try:
            summary = detector.detect(g, ChipConfiguration(chips))
        except BudgetExhausted:
            report.complete = False
            continue
        periods[summary.period] += 1
        if report.min_period is None or summary.period < report.min_period:
            report.min_period = summary.period
            report.witness = list(chips)
            report.witness_cycle = list(summary.cycle_configurations[0].chips)

    report.periods_seen = dict(sorted(periods.items()))
    logger.info(
        f"Search tested {report.configurations_tested} configurations, "
        f"min period {report.min_period}, complete={report.complete}"
    )
    return report


# Default detector built from config
period_detector = PeriodDetector()
