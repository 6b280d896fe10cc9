#!/usr/bin/env python3
"""Betti numbers of truncations of the balanced-exponent kernel cover.

The full cover has a vertex per integer and one independent cycle between
consecutive vertices; the radius-R truncation realizes Betti number 2R,
so the sequence grows without bound.

Usage: python scripts/betti_growth.py [--max-radius 20]
"""

import argparse

from stallings.counterexample import infinite_rank_truncation


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-radius", type=int, default=20)
    args = parser.parse_args()

    print(f"{'R':>4} {'|V|':>5} {'|E+|':>6} {'betti':>6}")
    for radius in range(1, args.max_radius + 1):
        graph, betti = infinite_rank_truncation(radius)
        print(f"{radius:>4} {len(graph.vertices):>5} {len(graph.edges):>6} {betti:>6}")


if __name__ == "__main__":
    main()
