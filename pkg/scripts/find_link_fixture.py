"""Search small graphic pairs whose link has |P| equal to its connectivity yet is not complete.

Both sides live on a triangle A B C.  Port edges are fixed (left: p1 = BC, p2 = AB;
right: p1 = AB, p2 = BC) and every placement of the three remaining edges on
each side is tried (each edge is AB, BC, CA or a loop at A).
"""
from __future__ import annotations

from itertools import product

import _paths  # noqa: F401
from mforge.completion import is_complete
from mforge.graphs import make_graph
from mforge.link import link
from mforge.matroid import connectivity, enumerate_bases, graphic, matroid_equal
from support import minimal_incomplete_pair

SLOTS = [("A", "B"), ("B", "C"), ("C", "A"), ("A", "A")]
S = ["e1", "e2", "e3"]
Q = ["e4", "e5", "e6"]


def left_sides():
    for placement in product(SLOTS, repeat=3):
        left = [(e, u, v) for e, (u, v) in zip(S, placement)] + [("p1", "B", "C"), ("p2", "A", "B")]
        yield graphic(make_graph("ABC", left))


def right_sides():
    for placement in product(SLOTS, repeat=3):
        right = [("p1", "A", "B"), ("p2", "B", "C")] + [(e, u, v) for e, (u, v) in zip(Q, placement)]
        yield graphic(make_graph("ABC", right))


def wanted(left, right) -> bool:
    if left.rank != 2 or right.rank != 2:
        return False
    if left.is_independent(["e3", "p2"]) or right.is_independent(["p2", "e5"]):
        return False
    m = link(left, right)
    if connectivity(m, S) != 2 or is_complete(m, S, Q):
        return False
    bases = enumerate_bases(m).bases
    return (all(frozenset(b) in bases for b in (("e2", "e4"), ("e2", "e5"), ("e3", "e4")))
            and frozenset(("e3", "e5")) not in bases)


def main() -> None:
    lefts, rights = list(left_sides()), list(right_sides())
    hits = [(a, b) for a in lefts for b in rights if wanted(a, b)]
    print(f"{len(hits)} of {len(lefts) * len(rights)} pairs qualify")
    frozen_l, frozen_r = minimal_incomplete_pair()
    print("frozen fixture among them:",
          any(matroid_equal(a, frozen_l) and matroid_equal(b, frozen_r) for a, b in hits))
    if hits:
        a, b = hits[0]
        print("first hit, left bases:", sorted(sorted(x) for x in enumerate_bases(a).bases))
        print("first hit, right bases:", sorted(sorted(x) for x in enumerate_bases(b).bases))


if __name__ == "__main__":
    main()
