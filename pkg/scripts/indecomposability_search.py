"""Exhaustively search two-port decompositions of the doubled triangle.

Every pair of matroids on (s1 s2 s3 p1 p2) and (p1 p2 q1 q2 q3) is linked and
compared with the target.  U(6,2) is run as a control that does decompose.
"""
from __future__ import annotations

import time

import _paths  # noqa: F401
from mforge.matroid import uniform
from support import Q3, S3, all_matroid_bases, doubled_triangle, target_masks, two_port_decompositions


def main() -> None:
    print(f"{len(all_matroid_bases(5))} labeled matroids per side")
    started = time.perf_counter()
    found = two_port_decompositions(target_masks(doubled_triangle(), S3 + Q3))
    print(f"doubled triangle: {len(found)} decompositions ({time.perf_counter() - started:.1f}s)")
    control = two_port_decompositions(target_masks(uniform(S3 + Q3, 2), S3 + Q3), limit=1)
    print(f"U(6,2) control: {'found' if control else 'none'}")


if __name__ == "__main__":
    main()
