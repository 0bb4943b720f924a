"""Measure worst-case rank-oracle calls per completion query against n²·ln n.

Uses the same instance family as the acceptance test: U(n, n/2) plus random
linear matroids of rank n/2 over GF(3) and GF(5), with S the first half.
"""
from __future__ import annotations

import argparse
import math

import _paths  # noqa: F401
from test_acceptance import worst_query_cost


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[6, 8, 10, 12])
    args = ap.parse_args()
    print(f"{'n':>3} {'calls':>6} {'calls/(n² ln n)':>16}")
    for n in args.sizes:
        calls = worst_query_cost(n)
        print(f"{n:>3} {calls:>6} {calls / (n * n * math.log(n)):>16.3f}")


if __name__ == "__main__":
    main()
