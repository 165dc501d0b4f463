#!/usr/bin/env python3
"""
Period Explorer Script

Prints the K_n recurrence against the exact solver, the K_(a,a) lower
bounds, and runs the quick audits, saving each report under REPORTS_DIR.

Usage:
    python scripts/explore_periods.py [--n-max 12] [--a-max 6]
"""
import argparse
import sys
from pathlib import Path

# Add parent directory to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.config import config
from src.services import search_verify
from src.services.constructions import useful_complete
from src.services.exact_linalg import (
    bipartite_lower_bound,
    complete_graph_recurrence,
    minimal_positive_kernel_vector,
)


def print_header(title: str):
    print(f"\n{'='*60}")
    print(f"📋 {title}")
    print('='*60)


def complete_table(n_max: int):
    print_header("USEFUL K_n: recurrence vs solver")
    for n in range(4, n_max + 1):
        expected = complete_graph_recurrence(n)
        solved = minimal_positive_kernel_vector(useful_complete(n))[2]
        mark = "✅" if expected == solved else "❌"
        print(f"{mark} n={n:>2}  T_n={expected}")


def bipartite_table(a_max: int):
    print_header("USEFUL K_(a,a): lower bounds")
    for a in range(2, a_max + 1):
        print(f"   a={a:>2}  T_a>={bipartite_lower_bound(a)}")


def quick_audits():
    print_header("QUICK AUDITS")
    reports = [
        search_verify.audit_cycle_periods(6),
        search_verify.audit_dag_stabilization(samples=50),
        search_verify.audit_undirected_t2(samples=30),
        search_verify.audit_sequence_realization(max_length=5),
    ]
    for report in reports:
        mark = "✅" if report.passed else "❌"
        path = search_verify.save_report(report, config.REPORTS_DIR / f"{report.claim}.json")
        print(f"{mark} {report.summary_line()}")
        print(f"   saved to {path}")


def main(argv):
    parser = argparse.ArgumentParser(description="Recurrence tables and quick audits")
    parser.add_argument('--n-max', type=int, default=12)
    parser.add_argument('--a-max', type=int, default=6)
    args = parser.parse_args(argv[1:])

    print("\n🔍 Exploring parallel chip-firing periods...")
    complete_table(args.n_max)
    bipartite_table(args.a_max)
    quick_audits()
    print("\n✅ Done")


if __name__ == '__main__':
    main(sys.argv)
