"""
Exhaustive and sampled audits

Each audit turns one claim about parallel chip-firing into a machine-checked
AuditReport. Pass/fail is derived only from the other services (period
detection, the exact solver, the constructions). Random sampling is driven by
a seeded random.Random recorded in the report parameters, so a report can be
replayed exactly.
"""
import itertools
import logging
import random
import time
from multiprocessing import Pool
from pathlib import Path
from typing import Any, Iterable, Iterator, Optional

from pydantic import BaseModel, Field

from src.config import config
from src.errors import BudgetExhausted, DomainError, UnrealizableSequence
from src.services.constructions import (
    cycle_divisor_game,
    directed_cycle,
    identify_useful_family,
    random_configuration,
    random_connected_graph,
    random_dag,
    random_strongly_connected,
    realize_sequence,
    undirected_t2_game,
    useful_bipartite,
    useful_complete,
)
from src.services.dynamics import ChipConfiguration, run_trajectory
from src.services.exact_linalg import (
    bipartite_lower_bound,
    complete_graph_recurrence,
    minimal_positive_kernel_vector,
    primitive_vector,
    reduced_system_rank,
)
from src.services.graph_core import (
    DirectedMultigraph,
    UndirectedGraph,
    enumerate_orientations,
    is_dag,
    scc_partition,
)
from src.services.period_analysis import (
    PeriodDetector,
    atomic_firing_sequence,
)

logger = logging.getLogger(__name__)


class AuditReport(BaseModel):
    """Result of one audit; passing means no violations"""
    claim: str
    instances_checked: int = 0
    violations: list[str] = Field(default_factory=list)
    parameters: dict[str, Any] = Field(default_factory=dict)
    elapsed: float = 0.0
    complete: bool = True
    details: dict[str, Any] = Field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary_line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        partial = "" if self.complete else " (incomplete)"
        return (f"{self.claim}: {status}{partial} - {self.instances_checked} instances, "
                f"{len(self.violations)} violations, {self.elapsed:.2f}s")


def save_report(report: AuditReport, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(report.model_dump_json(indent=2))
    return path


def load_report(path: Path) -> AuditReport:
    return AuditReport.model_validate_json(Path(path).read_text())


def configurations_up_to(vertex_count: int, max_total: int) -> Iterator[tuple[int, ...]]:
    """Every chip vector with the given length and total <= max_total, lexicographic"""
    if vertex_count == 0:
        yield ()
        return
    for first in range(max_total + 1):
        for rest in configurations_up_to(vertex_count - 1, max_total - first):
            yield (first,) + rest


def _is_least_rotation(chips: tuple[int, ...]) -> bool:
    return all(chips <= chips[k:] + chips[:k] for k in range(1, len(chips)))


def _seeded(seed: Optional[int]) -> tuple[int, random.Random]:
    seed = config.AUDIT_SEED if seed is None else seed
    return seed, random.Random(seed)


# ========== Orientation audit (no period 2) ==========

def _scan_orientation(task: tuple) -> tuple[int, int, list[str], list[int], bool]:
    """Worker: every configuration with total <= bound on one orientation"""
    index, vertex_count, edges, bound, max_rounds = task
    g = DirectedMultigraph(vertex_count, edges)
    detector = PeriodDetector(max_rounds)
    checked = 0
    violations = []
    periods = set()
    complete = True
    for chips in configurations_up_to(vertex_count, bound):
        checked += 1
        try:
            summary = detector.detect(g, ChipConfiguration(chips))
        except BudgetExhausted:
            complete = False
            continue
        periods.add(summary.period)
        if summary.period == 2:
            violations.append(f"orientation {index} edges {list(edges)} chips {list(chips)}: period 2")
    return checked, index, violations, sorted(periods), complete


def audit_no_period2_orientations(
    base: UndirectedGraph,
    total_chip_bound: int = 8,
    max_rounds: Optional[int] = None,
    jobs: Optional[int] = None,
) -> AuditReport:
    """Look for eventual period 2 over every orientation and every small configuration"""
    started = time.perf_counter()
    jobs = jobs if jobs is not None else config.AUDIT_JOBS
    if jobs < 1:
        raise DomainError(f"jobs must be at least 1, got {jobs}")
    orientations = list(enumerate_orientations(base))
    strongly_connected = sum(1 for o in orientations if scc_partition(o).is_strongly_connected)
    tasks = [(k, o.vertex_count, o.edges, total_chip_bound, max_rounds) for k, o in enumerate(orientations)]
    logger.info(f"Scanning {len(tasks)} orientations with total chips <= {total_chip_bound} using {jobs} jobs")

    if jobs > 1:
        with Pool(jobs) as pool:
            results = pool.map(_scan_orientation, tasks)
    else:
        results = [_scan_orientation(t) for t in tasks]

    report = AuditReport(
        claim="no-period-2-orientations",
        parameters={
            "vertex_count": base.vertex_count,
            "edges": [list(e) for e in base.edges],
            "total_chip_bound": total_chip_bound,
            "max_rounds": max_rounds if max_rounds is not None else config.MAX_ROUNDS,
        },
    )
    periods: set[int] = set()
    for checked, _, violations, seen, complete in sorted(results, key=lambda r: r[1]):
        report.instances_checked += checked
        report.violations.extend(violations)
        periods.update(seen)
        report.complete = report.complete and complete
    report.details = {
        "orientations": len(orientations),
        "strongly_connected_orientations": strongly_connected,
        "periods_seen": sorted(periods),
    }
    report.elapsed = time.perf_counter() - started
    logger.info(report.summary_line())
    return report


# ========== Cycle periods ==========

def audit_cycle_periods(
    n: int,
    total_chip_bound: Optional[int] = None,
    max_rounds: Optional[int] = None,
) -> AuditReport:
    """
    Every period on directed C_n divides n, and every divisor is realized

    Rotations of a configuration have the same period, so only the
    lexicographically least rotation of each configuration is simulated.
    """
    if n < 2:
        raise DomainError(f"cycle audit needs n >= 2, got {n}")
    started = time.perf_counter()
    bound = n if total_chip_bound is None else total_chip_bound
    g = directed_cycle(n)
    detector = PeriodDetector(max_rounds)
    report = AuditReport(
        claim="cycle-periods-divide-n",
        parameters={"n": n, "total_chip_bound": bound, "max_rounds": detector.max_rounds},
    )
    observed: set[int] = set()
    covered = 0
    for chips in configurations_up_to(n, bound):
        covered += 1
        if not _is_least_rotation(chips):
            continue
        report.instances_checked += 1
        try:
            period = detector.detect(g, ChipConfiguration(chips)).period
        except BudgetExhausted:
            report.complete = False
            continue
        observed.add(period)
        if n % period:
            report.violations.append(f"chips {list(chips)}: period {period} does not divide {n}")

    realized = []
    for i in (d for d in range(1, n + 1) if n % d == 0):
        game = cycle_divisor_game(n, i)
        period = detector.detect(game.graph, game.initial).period
        report.instances_checked += 1
        if period != i:
            report.violations.append(f"divisor game for i={i} has period {period}")
        else:
            realized.append(i)

    report.details = {
        "configurations_covered": covered,
        "observed_periods": sorted(observed),
        "realized_divisors": realized,
    }
    report.elapsed = time.perf_counter() - started
    logger.info(report.summary_line())
    return report


# ========== Stationary fire counts ==========

def audit_stationary_fire_counts(
    g: DirectedMultigraph,
    games: Optional[Iterable[ChipConfiguration]] = None,
    samples: int = 500,
    chip_bound: int = 12,
    seed: Optional[int] = None,
    max_rounds: Optional[int] = None,
) -> AuditReport:
    """
    Fire counts of every T > 1 game: no passive vertex, f/gcd equals the
    solver's minimal vector, and the designated maximum on useful families
    (f_3 on K_n, f_4 on K_{a,a})
    """
    if not scc_partition(g).is_strongly_connected:
        raise DomainError("fire-count audit needs a strongly connected graph")
    started = time.perf_counter()
    seed, rng = _seeded(seed)
    detector = PeriodDetector(max_rounds)
    expected = minimal_positive_kernel_vector(g).counts
    family = identify_useful_family(g)
    report = AuditReport(
        claim="stationary-fire-counts",
        parameters={
            "vertex_count": g.vertex_count,
            "samples": samples,
            "chip_bound": chip_bound,
            "seed": seed,
            "max_rounds": detector.max_rounds,
        },
    )
    configurations = list(games or [])
    configurations += [random_configuration(g.vertex_count, chip_bound, rng) for _ in range(samples)]

    cyclic = 0
    for c0 in configurations:
        report.instances_checked += 1
        try:
            summary = detector.detect(g, c0)
        except BudgetExhausted:
            report.complete = False
            continue
        if summary.period == 1:
            continue
        cyclic += 1
        f = summary.fire_counts
        if min(f) < 1:
            report.violations.append(f"chips {list(c0.chips)}: forever passive vertex, f={list(f)}")
        if primitive_vector(f) != expected:
            report.violations.append(
                f"chips {list(c0.chips)}: f/gcd={list(primitive_vector(f))} != solver {list(expected)}"
            )
        if family is not None:
            kind, size = family
            special = 2 if kind == "complete" else 3
            if (kind == "complete" and size >= 4) or (kind == "bipartite" and size >= 3):
                if f[special] != max(f):
                    report.violations.append(
                        f"chips {list(c0.chips)}: f_{special + 1}={f[special]} is not the maximum of {list(f)}"
                    )

    report.details = {
        "expected_vector": list(expected),
        "family": list(family) if family else None,
        "games_with_period_above_1": cyclic,
    }
    report.elapsed = time.perf_counter() - started
    logger.info(report.summary_line())
    return report


# ========== Sampled structural audits ==========

def audit_dag_stabilization(
    samples: int = 200,
    max_vertices: int = 12,
    chip_bound: int = 30,
    seed: Optional[int] = None,
    max_rounds: Optional[int] = None,
) -> AuditReport:
    """Games on directed acyclic graphs end in a fixed point"""
    started = time.perf_counter()
    seed, rng = _seeded(seed)
    detector = PeriodDetector(max_rounds)
    report = AuditReport(
        claim="dag-stabilization",
        parameters={"samples": samples, "max_vertices": max_vertices, "chip_bound": chip_bound, "seed": seed},
    )
    for _ in range(samples):
        n = rng.randint(1, max_vertices)
        g = random_dag(n, rng)
        c0 = random_configuration(n, chip_bound, rng)
        report.instances_checked += 1
        if not is_dag(g):
            report.violations.append(f"generated graph {list(g.edges)} has a cycle")
            continue
        try:
            summary = detector.detect(g, c0)
        except BudgetExhausted:
            report.complete = False
            continue
        if summary.period != 1:
            report.violations.append(f"DAG {list(g.edges)} chips {list(c0.chips)}: period {summary.period}")
    report.elapsed = time.perf_counter() - started
    logger.info(report.summary_line())
    return report


def audit_undirected_t2(
    samples: int = 100,
    max_vertices: int = 10,
    seed: Optional[int] = None,
    max_rounds: Optional[int] = None,
) -> AuditReport:
    """The distance-parity game has period 2 and every vertex fires once per period"""
    started = time.perf_counter()
    seed, rng = _seeded(seed)
    detector = PeriodDetector(max_rounds)
    report = AuditReport(
        claim="undirected-period-2",
        parameters={"samples": samples, "max_vertices": max_vertices, "seed": seed},
    )
    for _ in range(samples):
        n = rng.randint(2, max_vertices)
        g = random_connected_graph(n, rng)
        game = undirected_t2_game(g, rng.randrange(n))
        report.instances_checked += 1
        summary = detector.detect(game.graph, game.initial)
        where = f"graph {list(g.edges)} anchor {game.designated_vertex}"
        if summary.period != 2:
            report.violations.append(f"{where}: period {summary.period}")
        if any(f != 1 for f in summary.fire_counts):
            report.violations.append(f"{where}: fire counts {list(summary.fire_counts)}")
    report.elapsed = time.perf_counter() - started
    logger.info(report.summary_line())
    return report


def audit_sequence_realization(
    max_length: int = 8,
    force_gadget: bool = False,
    extra_chips_when_flush: bool = True,
    max_rounds: Optional[int] = None,
) -> AuditReport:
    """Every string containing a 1 (and "0") is realized exactly; longer all-zero strings are refused"""
    started = time.perf_counter()
    detector = PeriodDetector(max_rounds)
    report = AuditReport(
        claim="atomic-sequence-realization",
        parameters={
            "max_length": max_length,
            "force_gadget": force_gadget,
            "extra_chips_when_flush": extra_chips_when_flush,
        },
    )
    realized = rejected = 0
    for length in range(1, max_length + 1):
        for letters in itertools.product("01", repeat=length):
            bits = "".join(letters)
            report.instances_checked += 1
            if "1" not in bits and length >= 2:
                try:
                    realize_sequence(bits, force_gadget, extra_chips_when_flush)
                except UnrealizableSequence:
                    rejected += 1
                else:
                    report.violations.append(f"{bits}: all-zero string was not rejected")
                continue
            game = realize_sequence(bits, force_gadget, extra_chips_when_flush)
            summary = detector.detect(game.graph, game.initial)
            got = atomic_firing_sequence(summary, game.designated_vertex).bits
            if summary.period != length or got != bits:
                report.violations.append(f"{bits}: period {summary.period}, designated vertex reads {got}")
            else:
                realized += 1
    report.details = {"realized": realized, "rejected": rejected}
    report.elapsed = time.perf_counter() - started
    logger.info(report.summary_line())
    return report


def audit_sink_passivity(
    g: DirectedMultigraph,
    samples: int = 200,
    chip_bound: Optional[int] = None,
    seed: Optional[int] = None,
    max_rounds: Optional[int] = None,
) -> AuditReport:
    """Vertices outside sink components never fire in the periodic regime"""
    started = time.perf_counter()
    seed, rng = _seeded(seed)
    bound = 3 * g.edge_count if chip_bound is None else chip_bound
    detector = PeriodDetector(max_rounds)
    sinks = scc_partition(g).sink_vertices()
    outside = [v for v in g.vertices if v not in sinks]
    report = AuditReport(
        claim="nonsink-passivity",
        parameters={"vertex_count": g.vertex_count, "samples": samples, "chip_bound": bound, "seed": seed},
        details={"nonsink_vertices": outside},
    )
    for _ in range(samples):
        c0 = random_configuration(g.vertex_count, bound, rng)
        report.instances_checked += 1
        try:
            summary = detector.detect(g, c0)
        except BudgetExhausted:
            report.complete = False
            continue
        active = [v for v in outside if summary.fire_counts[v] > 0]
        if active:
            report.violations.append(f"chips {list(c0.chips)}: nonsink vertices {active} keep firing")
    report.elapsed = time.perf_counter() - started
    logger.info(report.summary_line())
    return report


# ========== Exact-solver audits ==========

def audit_complete_recurrence(n_max: int = 12, growth_n_max: int = 20) -> AuditReport:
    """
    On the useful K_n: f_1 = 1, f_3 = T_n = max f, the dropped-row system
    has rank n-1, and T_n / T_{n-1} >= n-1
    """
    started = time.perf_counter()
    report = AuditReport(claim="complete-graph-recurrence",
                         parameters={"n_max": n_max, "growth_n_max": growth_n_max})
    solved = {}
    for n in range(4, n_max + 1):
        g = useful_complete(n)
        f = minimal_positive_kernel_vector(g)
        expected = complete_graph_recurrence(n)
        report.instances_checked += 1
        solved[str(n)] = f[2]
        if f[0] != 1:
            report.violations.append(f"n={n}: f_1={f[0]}")
        if f[2] != expected:
            report.violations.append(f"n={n}: solver f_3={f[2]} but recurrence gives {expected}")
        if f[2] != f.maximum:
            report.violations.append(f"n={n}: f_3={f[2]} is not the maximum {f.maximum}")
        rank = reduced_system_rank(g)
        if rank != n - 1:
            report.violations.append(f"n={n}: dropped-row system has rank {rank}, expected {n - 1}")
    for n in range(4, growth_n_max + 1):
        report.instances_checked += 1
        if complete_graph_recurrence(n) < (n - 1) * complete_graph_recurrence(n - 1):
            report.violations.append(f"n={n}: T_n/T_(n-1) < n-1")
    report.details = {"solver_f3": solved}
    report.elapsed = time.perf_counter() - started
    logger.info(report.summary_line())
    return report


def audit_bipartite_bounds(a_max: int = 8) -> AuditReport:
    """On the useful K_{a,a}: f_4 is the maximum and T_a > (a-1) T_{a-1}"""
    started = time.perf_counter()
    report = AuditReport(claim="bipartite-bounds", parameters={"a_max": a_max})
    bounds = {"2": bipartite_lower_bound(2)}
    for a in range(3, a_max + 1):
        g = useful_bipartite(a)
        f = minimal_positive_kernel_vector(g)
        report.instances_checked += 1
        bounds[str(a)] = f[3]
        if f[3] != f.maximum:
            report.violations.append(f"a={a}: f_4={f[3]} is not the maximum {f.maximum}")
        previous = bounds[str(a - 1)]
        if not f[3] > (a - 1) * previous:
            report.violations.append(f"a={a}: T_a={f[3]} is not above (a-1)*T_(a-1)={(a - 1) * previous}")
        rank = reduced_system_rank(g)
        if rank != 2 * a - 1:
            report.violations.append(f"a={a}: dropped-row system has rank {rank}, expected {2 * a - 1}")
    report.details = {"bounds": bounds}
    report.elapsed = time.perf_counter() - started
    logger.info(report.summary_line())
    return report


def _oracle_graph(rng: random.Random, max_vertices: int) -> DirectedMultigraph:
    kind = rng.randrange(4)
    if kind == 0:
        return useful_complete(rng.randint(3, min(max_vertices, 6)))
    if kind == 1:
        return useful_bipartite(rng.randint(2, max(2, min(max_vertices // 2, 3))))
    if kind == 2:
        return directed_cycle(rng.randint(2, max_vertices))
    return random_strongly_connected(rng.randint(2, max_vertices), rng, extra_edges=rng.randint(0, 4))


def audit_solver_oracle(
    samples: int = 1000,
    max_vertices: int = 7,
    seed: Optional[int] = None,
    max_rounds: Optional[int] = None,
) -> AuditReport:
    """Simulated fire counts of T > 1 games agree with the solver; chips are conserved"""
    started = time.perf_counter()
    seed, rng = _seeded(seed)
    detector = PeriodDetector(max_rounds)
    report = AuditReport(
        claim="solver-simulation-oracle",
        parameters={"samples": samples, "max_vertices": max_vertices, "seed": seed},
    )
    solutions: dict[DirectedMultigraph, tuple[int, ...]] = {}
    compared = 0
    for _ in range(samples):
        g = _oracle_graph(rng, max_vertices)
        c0 = random_configuration(g.vertex_count, 3 * g.edge_count, rng)
        report.instances_checked += 1
        try:
            summary = detector.detect(g, c0)
        except BudgetExhausted:
            report.complete = False
            continue
        trajectory = run_trajectory(g, c0, summary.rounds_simulated)
        if any(c.total != c0.total for c in trajectory.configurations):
            report.violations.append(f"edges {list(g.edges)} chips {list(c0.chips)}: chips not conserved")
        if summary.period == 1:
            continue
        if g not in solutions:
            solutions[g] = minimal_positive_kernel_vector(g).counts
        compared += 1
        if primitive_vector(summary.fire_counts) != solutions[g]:
            report.violations.append(
                f"edges {list(g.edges)} chips {list(c0.chips)}: "
                f"f/gcd={list(primitive_vector(summary.fire_counts))} != {list(solutions[g])}"
            )
    report.details = {"games_compared": compared}
    report.elapsed = time.perf_counter() - started
    logger.info(report.summary_line())
    return report

