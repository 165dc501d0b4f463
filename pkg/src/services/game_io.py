"""
Game files and DOT export

Line-oriented text format:

    # optional label (the first comment)
    digraph 4
    e 0 1
    chips 0 1
    designated 0
    period 4

`graph N` declares an undirected game. Unlisted vertices hold 0 chips.
"""
import logging
from pathlib import Path
from typing import Optional

from src.errors import ChipFiringError, GameFileError
from src.services.constructions import GadgetGame
from src.services.dynamics import ChipConfiguration
from src.services.graph_core import DirectedMultigraph, UndirectedGraph

logger = logging.getLogger(__name__)

HEADERS = ("digraph", "graph")


def _ints(fields: list[str], count: int, line_number: int) -> list[int]:
    """Integer arguments of a directive; count includes the directive itself"""
    if len(fields) != count:
        raise GameFileError(f"expected {count - 1} integer(s) after {fields[0]}", line_number)
    try:
        return [int(x) for x in fields[1:]]
    except ValueError:
        raise GameFileError(f"not an integer in {' '.join(fields)!r}", line_number)


def parse_game_file(text: str) -> GadgetGame:
    """Parse a game file; every problem is reported with its line number"""
    kind: Optional[str] = None
    vertex_count = 0
    edges: list[tuple[int, int]] = []
    undirected_pairs: set[tuple[int, int]] = set()
    chips: dict[int, int] = {}
    designated: Optional[int] = None
    period: Optional[int] = None
    label: Optional[str] = None
    last_line = 0

    def check_vertex(v: int, line_number: int) -> None:
        if not 0 <= v < vertex_count:
            raise GameFileError("vertex index out of range", line_number)

    for line_number, raw in enumerate(text.splitlines(), start=1):
        last_line = line_number
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if label is None:
                label = line[1:].strip()
            continue

        fields = line.split()
        directive = fields[0]
        if kind is None:
            if directive not in HEADERS:
                raise GameFileError(f"expected 'digraph N' or 'graph N', got {directive!r}", line_number)
            vertex_count = _ints(fields, 2, line_number)[0]
            if vertex_count < 1:
                raise GameFileError("vertex count must be positive", line_number)
            kind = directive
        elif directive in HEADERS:
            raise GameFileError("duplicate header", line_number)
        elif directive == "e":
            u, v = _ints(fields, 3, line_number)
            check_vertex(u, line_number)
            check_vertex(v, line_number)
            if u == v:
                raise GameFileError("self-loop", line_number)
            if kind == "graph":
                pair = (min(u, v), max(u, v))
                if pair in undirected_pairs:
                    raise GameFileError(f"duplicate edge {pair[0]}-{pair[1]}", line_number)
                undirected_pairs.add(pair)
            edges.append((u, v))
        elif directive == "chips":
            v, amount = _ints(fields, 3, line_number)
            check_vertex(v, line_number)
            if amount < 0:
                raise GameFileError("negative chip count", line_number)
            if v in chips:
                raise GameFileError(f"chips for vertex {v} listed twice", line_number)
            chips[v] = amount
        elif directive == "designated":
            (designated,) = _ints(fields, 2, line_number)
            check_vertex(designated, line_number)
        elif directive == "period":
            (period,) = _ints(fields, 2, line_number)
            if period < 1:
                raise GameFileError("period must be positive", line_number)
        else:
            raise GameFileError(f"unknown directive {directive!r}", line_number)

    if kind is None:
        raise GameFileError("missing header", last_line + 1)

    initial = ChipConfiguration(tuple(chips.get(v, 0) for v in range(vertex_count)))
    try:
        if kind == "digraph":
            graph = DirectedMultigraph(vertex_count, tuple(edges))
        else:
            graph = UndirectedGraph(vertex_count, tuple(edges))
        return GadgetGame(graph, initial, designated, period, label or "")
    except GameFileError:
        raise
    except ChipFiringError as e:
        raise GameFileError(e.message, last_line)


def write_game_file(game: GadgetGame) -> str:
    """Canonical form: sorted edges, nonzero chips by vertex, annotations last"""
    lines = []
    if game.label:
        lines.append(f"# {game.label}")
    kind = "digraph" if game.is_directed else "graph"
    lines.append(f"{kind} {game.graph.vertex_count}")
    lines += [f"e {u} {v}" for u, v in sorted(game.graph.edges)]
    lines += [f"chips {v} {c}" for v, c in enumerate(game.initial.chips) if c]
    if game.designated_vertex is not None:
        lines.append(f"designated {game.designated_vertex}")
    if game.predicted_period is not None:
        lines.append(f"period {game.predicted_period}")
    return "\n".join(lines) + "\n"


def export_dot(game: GadgetGame) -> str:
    """DOT text with vertices labelled idx:chips; the designated vertex is double-circled"""
    directed = game.is_directed
    arrow = "->" if directed else "--"
    lines = [f"{'digraph' if directed else 'graph'} G {{"]
    if game.label:
        escaped = game.label.replace('"', '\\"')
        lines.append(f'  label="{escaped}";')
    for v, c in enumerate(game.initial.chips):
        shape = "doublecircle" if v == game.designated_vertex else "circle"
        lines.append(f'  {v} [label="{v}:{c}", shape={shape}];')
    for u, v in sorted(game.graph.edges):
        lines.append(f"  {u} {arrow} {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def read_game(path: Path) -> GadgetGame:
    path = Path(path)
    logger.debug(f"Reading game file {path}")
    return parse_game_file(path.read_text())


def write_game(game: GadgetGame, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(write_game_file(game))
    return path
