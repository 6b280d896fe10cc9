#!/usr/bin/env python3
"""Tabulate the certified equalizer-subgroup rank over a range of n.

Usage: python scripts/rank_table.py [--min-n 2] [--max-n 12]
"""

import argparse

from stallings.counterexample import verify_main


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--min-n", type=int, default=2)
    parser.add_argument("--max-n", type=int, default=12)
    args = parser.parse_args()

    print(f"{'n':>4} {'|V|':>5} {'|E+|':>6} {'certified rank':>15} {'2n-2':>6} {'> n?':>5}")
    for n in range(args.min_n, args.max_n + 1):
        report = verify_main(n)
        graph = report.certificate.subgroup.graph
        print(f"{n:>4} {len(graph.vertices):>5} {len(graph.edges):>6} "
              f"{report.certificate.rank:>15} {report.claimed_rank:>6} "
              f"{'yes' if report.conjecture_violated else 'no':>5}")


if __name__ == "__main__":
    main()
