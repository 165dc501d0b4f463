#!/usr/bin/env python3
"""
Parallel chip-firing command line

Subcommands:
- simulate FILE --rounds R [--trace]
- period FILE [--max-rounds M]
- solve FILE
- search FILE --min-chips C --bound B
- construct {cycle | complete | bipartite | bipartite-sink | sequence | undirected-t2} ...
- recurrence --n N
- audit {no-t2 | cycle-divisors | fire-counts | dags | undirected-t2 | sequences |
         sink | recurrence | bipartite | solver-oracle} ...
- export-dot FILE

Exit codes: 0 success, 1 usage error, 2 domain or contract error,
3 audit violation, 4 budget exhausted.
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Optional, Sequence

# Add parent to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import config
from src.errors import AUDIT_VIOLATION_EXIT, BudgetExhausted, ChipFiringError, UsageError
from src.services import game_io
from src.services.constructions import (
    GadgetGame,
    bipartite_with_sink,
    complete_graph,
    cycle_divisor_game,
    identify_useful_family,
    realize_sequence,
    undirected_t2_game,
    useful_bipartite,
    useful_complete,
)
from src.services.dynamics import ChipConfiguration, run_trajectory
from src.services.exact_linalg import (
    complete_graph_recurrence,
    minimal_positive_kernel_vector,
    reduced_system_rank,
)
from src.services.graph_core import DirectedMultigraph, UndirectedGraph
from src.services.period_analysis import (
    atomic_firing_sequence,
    convergent_period_search,
    detect_period,
)
from src.services import search_verify
from src.services.search_verify import AuditReport

logger = logging.getLogger(__name__)

# Violations echoed to stdout; the JSON report keeps all of them
SHOWN_VIOLATIONS = 10


class ArgumentParser(argparse.ArgumentParser):
    """argparse that raises UsageError instead of exiting"""

    def error(self, message):
        raise UsageError(message)


def _chips(text: str) -> ChipConfiguration:
    try:
        return ChipConfiguration(tuple(int(x) for x in text.split(",")))
    except ValueError:
        raise UsageError(f"--chips must be comma-separated integers, got {text!r}")


def _load(path: str) -> GadgetGame:
    try:
        return game_io.read_game(Path(path))
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}")


def _directed(game: GadgetGame, path: str) -> DirectedMultigraph:
    if not isinstance(game.graph, DirectedMultigraph):
        raise UsageError(f"{path} is not a digraph game")
    return game.graph


def _emit(text: str, output: Optional[str]) -> None:
    if output:
        Path(output).parent.mkdir(parents=True, exist_ok=True)
        Path(output).write_text(text)
        logger.info(f"Wrote {output}")
    else:
        sys.stdout.write(text)


def _csv(values) -> str:
    return ",".join(str(x) for x in values)


# ========== Subcommand handlers ==========

def cmd_simulate(args) -> int:
    game = _load(args.file)
    trajectory = run_trajectory(game.graph, game.initial, args.rounds)
    if args.trace:
        for t, c in enumerate(trajectory.configurations):
            fired = trajectory.firings[t] if t < trajectory.rounds else ()
            fired_vertices = [v for v, f in enumerate(fired) if f]
            print(f"t={t} chips={c} fired={_csv(fired_vertices)}")
    else:
        print(f"rounds={trajectory.rounds} chips={trajectory.final}")
    return 0


def cmd_period(args) -> int:
    game = _load(args.file)
    summary = detect_period(game.graph, game.initial, args.max_rounds)
    print(f"transient={summary.transient} period={summary.period} f={_csv(summary.fire_counts)}")
    if game.designated_vertex is not None:
        sequence = atomic_firing_sequence(summary, game.designated_vertex)
        print(f"designated={game.designated_vertex} sequence={sequence}")
    if not args.designated_only:
        for v in range(summary.vertex_count):
            print(f"vertex {v}: {atomic_firing_sequence(summary, v)}")
    return 0


def cmd_solve(args) -> int:
    game = _load(args.file)
    g = _directed(game, args.file)
    f = minimal_positive_kernel_vector(g)
    print(f"f={_csv(f.counts)}")
    print(f"max={f.maximum} vertex={f.argmax}")
    print(f"rank={reduced_system_rank(g)}")
    family = identify_useful_family(g)
    if family and family[0] == "complete" and family[1] >= 4:
        n = family[1]
        expected = complete_graph_recurrence(n)
        status = "matches" if f[2] == expected else "MISMATCH"
        print(f"recurrence T_{n}={expected} f_3={f[2]} {status}")
    elif family and family[0] == "bipartite":
        print(f"bipartite bound a={family[1]} f_4={f[3]}")
    return 0


def cmd_search(args) -> int:
    game = _load(args.file)
    report = convergent_period_search(game.graph, args.min_chips, args.bound, args.max_rounds, args.budget)
    witness = _csv(report.witness) if report.witness is not None else "-"
    print(f"min_period={report.min_period} witness={witness} tested={report.configurations_tested}")
    if report.witness_cycle is not None:
        print(f"witness_cycle={_csv(report.witness_cycle)}")
    print(f"periods={_csv(f'{p}:{k}' for p, k in report.periods_seen.items())}")
    if args.json:
        Path(args.json).parent.mkdir(parents=True, exist_ok=True)
        Path(args.json).write_text(report.model_dump_json(indent=2))
    if not report.complete:
        print("⚠️  search incomplete", file=sys.stderr)
        return BudgetExhausted.exit_code
    return 0


def cmd_construct(args) -> int:
    chips = _chips(args.chips) if getattr(args, "chips", None) else None

    def with_chips(graph, label: str) -> GadgetGame:
        initial = chips if chips is not None else ChipConfiguration.zeros(graph.vertex_count)
        return GadgetGame(graph, initial, label=label)

    family = args.family
    if family == "cycle":
        game = cycle_divisor_game(args.n, args.i)
    elif family == "complete":
        game = with_chips(useful_complete(args.n), f"useful orientation of K_{args.n}")
    elif family == "bipartite":
        game = with_chips(useful_bipartite(args.a), f"useful orientation of K_({args.a},{args.a})")
    elif family == "bipartite-sink":
        game = with_chips(bipartite_with_sink(args.a, args.b), f"K_({args.a},{args.b}) with useful sink")
    elif family == "sequence":
        game = realize_sequence(args.bits, args.force_gadget, not args.no_flush_chips)
    elif family == "undirected-t2":
        base = _load(args.file)
        if not isinstance(base.graph, UndirectedGraph):
            raise UsageError(f"{args.file} is not an undirected game")
        game = undirected_t2_game(base.graph, args.v)
    else:
        raise UsageError(f"unknown family {family}")
    _emit(game_io.write_game_file(game), args.output)
    return 0


def cmd_recurrence(args) -> int:
    print(complete_graph_recurrence(args.n))
    return 0


def cmd_export_dot(args) -> int:
    _emit(game_io.export_dot(_load(args.file)), args.output)
    return 0


def _run_audit(args) -> AuditReport:
    kind = args.kind
    if kind == "no-t2":
        base = complete_graph(4)
        if args.file:
            game = _load(args.file)
            if not isinstance(game.graph, UndirectedGraph):
                raise UsageError(f"{args.file} is not an undirected game")
            base = game.graph
        return search_verify.audit_no_period2_orientations(base, args.bound, args.max_rounds, args.jobs)
    if kind == "cycle-divisors":
        return search_verify.audit_cycle_periods(args.n, args.bound, args.max_rounds)
    if kind == "fire-counts":
        game = _load(args.file)
        return search_verify.audit_stationary_fire_counts(
            _directed(game, args.file), [game.initial], args.samples, args.chip_bound, args.seed, args.max_rounds
        )
    if kind == "dags":
        return search_verify.audit_dag_stabilization(args.samples, seed=args.seed, max_rounds=args.max_rounds)
    if kind == "undirected-t2":
        return search_verify.audit_undirected_t2(args.samples, seed=args.seed, max_rounds=args.max_rounds)
    if kind == "sequences":
        return search_verify.audit_sequence_realization(
            args.max_length, args.force_gadget, not args.no_flush_chips, args.max_rounds
        )
    if kind == "sink":
        game = _load(args.file)
        return search_verify.audit_sink_passivity(
            _directed(game, args.file), args.samples, args.chip_bound, args.seed, args.max_rounds
        )
    if kind == "recurrence":
        return search_verify.audit_complete_recurrence(args.n_max, args.growth_n_max)
    if kind == "bipartite":
        return search_verify.audit_bipartite_bounds(args.a_max)
    if kind == "solver-oracle":
        return search_verify.audit_solver_oracle(args.samples, seed=args.seed, max_rounds=args.max_rounds)
    raise UsageError(f"unknown audit {kind}")


def cmd_audit(args) -> int:
    report = _run_audit(args)
    print(f"{'✅' if report.passed else '❌'} {report.summary_line()}")
    for violation in report.violations[:SHOWN_VIOLATIONS]:
        print(f"   {violation}")
    if len(report.violations) > SHOWN_VIOLATIONS:
        print(f"   ... {len(report.violations) - SHOWN_VIOLATIONS} more")
    if args.json:
        search_verify.save_report(report, Path(args.json))
        logger.info(f"Report saved to {args.json}")
    if not report.passed:
        return AUDIT_VIOLATION_EXIT
    if not report.complete:
        return BudgetExhausted.exit_code
    return 0


# ========== Parser ==========

def build_parser() -> ArgumentParser:
    parser = ArgumentParser(prog="chipfire", description="Parallel chip-firing games: simulation, periods, audits")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    parser.add_argument("--log-level", default=None, choices=["DEBUG", "INFO", "WARNING", "ERROR"],
                        type=str.upper, help="Override CHIPFIRE_LOG_LEVEL")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    p = commands.add_parser("simulate", help="Run a game for a fixed number of rounds")
    p.add_argument("file")
    p.add_argument("--rounds", type=int, required=True)
    p.add_argument("--trace", action="store_true", help="Print every round")
    p.set_defaults(handler=cmd_simulate)

    p = commands.add_parser("period", help="Transient, period, fire counts and firing sequences")
    p.add_argument("file")
    p.add_argument("--max-rounds", type=int, default=None)
    p.add_argument("--designated-only", action="store_true", help="Skip the per-vertex sequences")
    p.set_defaults(handler=cmd_period)

    p = commands.add_parser("solve", help="Minimal positive firing vector of a strongly connected digraph")
    p.add_argument("file")
    p.set_defaults(handler=cmd_solve)

    p = commands.add_parser("search", help="Smallest period over bounded configurations")
    p.add_argument("file")
    p.add_argument("--min-chips", type=int, required=True)
    p.add_argument("--bound", type=int, required=True, help="Per-vertex chip bound")
    p.add_argument("--max-rounds", type=int, default=None)
    p.add_argument("--budget", type=int, default=None)
    p.add_argument("--json", default=None, help="Write the report as JSON")
    p.set_defaults(handler=cmd_search)

    p = commands.add_parser("construct", help="Emit a game file for a known construction")
    p.add_argument("-o", "--output", default=None)
    families = p.add_subparsers(dest="family", required=True, parser_class=ArgumentParser)
    f = families.add_parser("cycle")
    f.add_argument("n", type=int)
    f.add_argument("i", type=int)
    f = families.add_parser("complete")
    f.add_argument("n", type=int)
    f.add_argument("--chips", default=None)
    f = families.add_parser("bipartite")
    f.add_argument("a", type=int)
    f.add_argument("--chips", default=None)
    f = families.add_parser("bipartite-sink")
    f.add_argument("a", type=int)
    f.add_argument("b", type=int)
    f.add_argument("--chips", default=None)
    f = families.add_parser("sequence")
    f.add_argument("bits")
    f.add_argument("--force-gadget", action="store_true")
    f.add_argument("--no-flush-chips", action="store_true", help="Omit v's extra chips when the string ends in 1")
    f = families.add_parser("undirected-t2")
    f.add_argument("file")
    f.add_argument("v", type=int)
    p.set_defaults(handler=cmd_construct)

    p = commands.add_parser("recurrence", help="T_n for the useful orientation of K_n")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(handler=cmd_recurrence)

    p = commands.add_parser("export-dot", help="Graphviz DOT for a game")
    p.add_argument("file")
    p.add_argument("-o", "--output", default=None)
    p.set_defaults(handler=cmd_export_dot)

    p = commands.add_parser("audit", help="Machine-check a claim and report violations")
    p.add_argument("--json", default=None, help="Write the report as JSON")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--max-rounds", type=int, default=None)
    p.add_argument("--jobs", type=int, default=None)
    kinds = p.add_subparsers(dest="kind", required=True, parser_class=ArgumentParser)
    a = kinds.add_parser("no-t2", help="No orientation of the base graph has period 2")
    a.add_argument("file", nargs="?", default=None, help="Undirected base graph (default K_4)")
    a.add_argument("--bound", type=int, default=8, help="Total chip bound")
    a = kinds.add_parser("cycle-divisors")
    a.add_argument("n", type=int)
    a.add_argument("--bound", type=int, default=None)
    a = kinds.add_parser("fire-counts")
    a.add_argument("file")
    a.add_argument("--samples", type=int, default=500)
    a.add_argument("--chip-bound", type=int, default=12)
    a = kinds.add_parser("dags")
    a.add_argument("--samples", type=int, default=200)
    a = kinds.add_parser("undirected-t2")
    a.add_argument("--samples", type=int, default=100)
    a = kinds.add_parser("sequences")
    a.add_argument("--max-length", type=int, default=8)
    a.add_argument("--force-gadget", action="store_true")
    a.add_argument("--no-flush-chips", action="store_true")
    a = kinds.add_parser("sink")
    a.add_argument("file")
    a.add_argument("--samples", type=int, default=200)
    a.add_argument("--chip-bound", type=int, default=None)
    a = kinds.add_parser("recurrence")
    a.add_argument("--n-max", type=int, default=12)
    a.add_argument("--growth-n-max", type=int, default=20)
    a = kinds.add_parser("bipartite")
    a.add_argument("--a-max", type=int, default=8)
    a = kinds.add_parser("solver-oracle")
    a.add_argument("--samples", type=int, default=1000)
    p.set_defaults(handler=cmd_audit)

    return parser


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """Run one subcommand and return its exit code"""
    try:
        args = build_parser().parse_args(argv)
        if args.log_level:
            logging.getLogger().setLevel(args.log_level)
        elif args.verbose:
            logging.getLogger().setLevel(logging.DEBUG if args.verbose > 1 else logging.INFO)
        return args.handler(args)
    except ChipFiringError as e:
        logger.debug(f"{type(e).__name__}: {e.details}")
        print(str(e), file=sys.stderr)
        return e.exit_code
    except SystemExit as e:
        # --help
        return e.code if isinstance(e.code, int) else 0


def main():
    """Entry point"""
    logging.basicConfig(
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        level=getattr(logging, config.LOG_LEVEL, logging.WARNING),
    )
    problems = config.validate()
    if problems:
        for problem in problems:
            print(f"❌ {problem}", file=sys.stderr)
        sys.exit(UsageError.exit_code)
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
