#!/usr/bin/env python3
"""
Render the standard games to DOT and PNG

Writes one .dot file per game into the output directory and, when the
Graphviz `dot` binary is on PATH, converts each to PNG in parallel.

Usage:
    python scripts/render_figures.py -o figures
"""
import argparse
import shutil
import subprocess
import sys
from multiprocessing import Pool
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.services.constructions import (
    GadgetGame,
    complete_graph,
    cycle_divisor_game,
    realize_sequence,
    undirected_t2_game,
    useful_bipartite,
    useful_complete,
)
from src.services.dynamics import ChipConfiguration
from src.services.game_io import export_dot


def standard_games() -> dict[str, GadgetGame]:
    return {
        "k4_tournament": GadgetGame(useful_complete(4), ChipConfiguration((1, 0, 2, 2)),
                                    predicted_period=4, label="useful K_4"),
        "k33_useful": GadgetGame(useful_bipartite(3), ChipConfiguration.zeros(6), label="useful K_(3,3)"),
        "c6_period3": cycle_divisor_game(6, 3),
        "sequence_1010": realize_sequence("1010", force_gadget=True),
        "sequence_110": realize_sequence("110", force_gadget=True),
        "k4_undirected_t2": undirected_t2_game(complete_graph(4)),
    }


def render(dot_file: Path) -> str:
    """Run dot -Tpng on one file"""
    png = dot_file.with_suffix(".png")
    subprocess.run(["dot", "-Tpng", str(dot_file), "-o", str(png)], check=True)
    return str(png)


def main(argv):
    parser = argparse.ArgumentParser(description="Render the standard games with Graphviz")
    parser.add_argument('-o', '--output', help='Output directory', required=True)
    parser.add_argument('-j', '--jobs', type=int, default=4)
    args = parser.parse_args(argv[1:])

    out = Path(args.output)
    out.mkdir(parents=True, exist_ok=True)
    files = []
    for name, game in standard_games().items():
        path = out / f"{name}.dot"
        path.write_text(export_dot(game))
        files.append(path)
        print(f"📝 {path}")

    if shutil.which("dot") is None:
        print("⚠️  Graphviz 'dot' not found; skipping PNG rendering")
        return
    with Pool(args.jobs) as pool:
        for png in pool.map(render, files):
            print(f"🖼️  {png}")


if __name__ == '__main__':
    main(sys.argv)
