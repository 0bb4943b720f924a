"""Shared fixtures, instance builders and exhaustive search helpers for the test suite."""
from __future__ import annotations

import random
from itertools import combinations

from hypothesis import strategies as st

from mforge.fields import GF, QQ
from mforge.generators import random_matroid, random_space, random_split
from mforge.graphs import make_graph
from mforge.matroid import ExplicitMatroid, base_masks, exchange_violation, explicit, graphic, materialize, popcount

seeds = st.integers(min_value=0, max_value=2**32 - 1)
FIELDS = [GF(2), GF(7), QQ]

S3 = ["e1", "e2", "e3"]
Q3 = ["e4", "e5", "e6"]


def doubled_triangle_graph():
    """Triangle A B C with every edge doubled: e1∥e6, e2∥e4, e3∥e5."""
    return make_graph("ABC", [("e1", "A", "B"), ("e2", "B", "C"), ("e3", "C", "A"),
                              ("e4", "B", "C"), ("e5", "C", "A"), ("e6", "A", "B")])


def doubled_triangle():
    return graphic(doubled_triangle_graph())


def minimal_incomplete_pair():
    """Two rank-2 graphic matroids whose link is minimally decomposed yet not complete.

    Found by scripts/find_link_fixture.py and frozen here.
    """
    left = make_graph("ABC", [("e1", "A", "B"), ("e2", "B", "C"), ("e3", "A", "B"),
                              ("p1", "B", "C"), ("p2", "A", "B")])
    right = make_graph("ABC", [("p1", "A", "B"), ("p2", "B", "C"), ("e4", "C", "A"),
                               ("e5", "B", "C"), ("e6", "A", "A")])
    return graphic(left), graphic(right)


# a rank-4 matroid on seven elements whose one-step completion is still incomplete
# (from a random search over seven-element matroids; scripts/completion_fixpoint.py
# repeats that search and finds others with the same 21 -> 33 -> 34 profile)
ONE_STEP_S = ["s1", "s2", "s3"]
ONE_STEP_Q = ["q1", "q2", "q3", "q4"]
ONE_STEP_BASES = [
    "q1 q2 q3 q4", "q1 q2 q3 s1", "q1 q2 q3 s3", "q1 q2 q4 s1", "q1 q2 s1 s3", "q1 q3 q4 s1",
    "q1 q3 q4 s2", "q1 q3 q4 s3", "q1 q3 s1 s2", "q1 q3 s2 s3", "q1 q4 s1 s2", "q1 q4 s1 s3",
    "q1 s1 s2 s3", "q2 q3 q4 s2", "q2 q3 s1 s2", "q2 q3 s2 s3", "q2 q4 s1 s2", "q2 s1 s2 s3",
    "q3 q4 s1 s2", "q3 q4 s2 s3", "q4 s1 s2 s3",
]


def one_step_fixture() -> ExplicitMatroid:
    return explicit([b.split() for b in ONE_STEP_BASES], ONE_STEP_S + ONE_STEP_Q)


def graph1():
    """Seven-edge graph: S edges fuse {a,b},{c,d},{f,g}; Q edges fuse {a,c,g},{b,d,f}."""
    return make_graph("abcdfg", [("s1", "a", "b"), ("s2", "c", "d"), ("s3", "f", "g"),
                                 ("q1", "a", "c"), ("q2", "c", "g"), ("q3", "b", "d"), ("q4", "d", "f")])


def graph2():
    """Connected S side (a path) against a disconnected Q side (two disjoint chords)."""
    return make_graph("1234", [("s1", "1", "2"), ("s2", "2", "3"), ("s3", "3", "4"),
                               ("q1", "1", "3"), ("q2", "2", "4")])


# random instance builders


def rng_for(seed: int) -> random.Random:
    return random.Random(seed)


def space_instance(seed: int, field=None, max_cols: int = 8):
    rng = rng_for(seed)
    field = field or rng.choice(FIELDS)
    n = rng.randint(1, max_cols)
    cols = [f"x{i}" for i in range(1, n + 1)]
    return rng, random_space(rng, field, rng.randint(0, n), cols)


def space_pair(seed: int, field=None, max_cols: int = 8, min_overlap: int = 0):
    """Random (V_SP, V_PQ) with column groups s*, p*, q*."""
    rng = rng_for(seed)
    field = field or rng.choice(FIELDS)
    n = rng.randint(max(3, min_overlap + 2), max_cols)
    s, p, q = random_split(rng, n, 3, 1) if min_overlap <= 1 else _split_with_overlap(rng, n, min_overlap)
    left = random_space(rng, field, rng.randint(0, len(s) + len(p)), s + p)
    right = random_space(rng, field, rng.randint(0, len(p) + len(q)), p + q)
    return left, right


def _split_with_overlap(rng, n, k):
    rest = n - k
    ns = rng.randint(1, max(1, rest - 1))
    nq = max(1, rest - ns)
    return ([f"s{i}" for i in range(1, ns + 1)], [f"p{i}" for i in range(1, k + 1)],
            [f"q{i}" for i in range(1, nq + 1)])


def matroid_pair(seed: int, lo: int = 3, hi: int = 9):
    rng = rng_for(seed)
    n = rng.randint(lo, hi)
    s, p, q = random_split(rng, n, 3, 1)
    return random_matroid(rng, s + p), random_matroid(rng, p + q)


def split_matroid(seed: int, lo: int = 2, hi: int = 8):
    rng = rng_for(seed)
    n = rng.randint(lo, hi)
    s, q = random_split(rng, n, 2, 1)
    return random_matroid(rng, s + q), s, q


def conditional_pair(seed: int):
    """A pair meeting the overlap condition M_SP∘P = M*_PQ∘P, M_SP×P = M*_PQ×P.

    Either the right side is the dual of the left with S renamed to Q, or the pair
    is the pseudo-identity split of a random matroid.
    """
    from mforge.completion import pseudo_identity
    from mforge.labels import prime_map
    from mforge.matroid import dual, relabel, reorder
    rng = rng_for(seed)
    if rng.random() < 0.5:
        n = rng.randint(2, 7)
        s, p = random_split(rng, n, 2, 1)
        p = [f"p{x[1:]}" for x in p]
        left = random_matroid(rng, s + p)
        q = [f"q{i}" for i in range(1, len(s) + 1)]
        right = reorder(relabel(dual(left), dict(zip(s, q))), p + q)
        return left, materialize(right)
    n = rng.randint(2, 6)
    s, q = random_split(rng, n, 2, 1)
    m = random_matroid(rng, s + q)
    mapping = prime_map(q, avoid=m.ground)
    left = reorder(relabel(m, mapping), s + [mapping[x] for x in q])
    swap = {**mapping, **{v: k for k, v in mapping.items()}}
    right = reorder(relabel(pseudo_identity(m, q), swap), [mapping[x] for x in q] + q)
    return left, materialize(right)


# exhaustive helpers


def all_matroid_bases(n: int) -> list[tuple[int, ...]]:
    """Every labeled matroid on n elements, as a tuple of base masks."""
    out = []
    for r in range(n + 1):
        subsets = [sum(1 << i for i in c) for c in combinations(range(n), r)]
        for family in range(1, 1 << len(subsets)):
            bases = [subsets[i] for i in range(len(subsets)) if family >> i & 1]
            if exchange_violation(bases) is None:
                out.append(tuple(bases))
    return out


def link_masks(left_bases, right_bases, p_mask: int) -> frozenset[int]:
    """Bases of the link from base masks placed in one shared universe."""
    best, best_p, found = -1, -1, set()
    for x in left_bases:
        for y in right_bases:
            u = x | y
            size, shared = popcount(u), popcount(u & p_mask)
            if size > best or (size == best and shared > best_p):
                best, best_p, found = size, shared, {u & ~p_mask}
            elif size == best and shared == best_p:
                found.add(u & ~p_mask)
    return frozenset(found)


def two_port_decompositions(target: frozenset[int], limit: int | None = None) -> list:
    """All pairs of 5-element matroids on (s1 s2 s3 p1 p2), (p1 p2 q1 q2 q3) whose link
    has ``target`` as base family.  Universe bits: S = 0..2, P = 3..4, Q = 5..7."""
    catalogue = all_matroid_bases(5)
    left = catalogue
    right = [tuple(b << 3 for b in bases) for bases in catalogue]
    p_mask = 0b11000
    found = []
    for a in left:
        for b in right:
            if link_masks(a, b, p_mask) == target:
                found.append((a, b))
                if limit and len(found) >= limit:
                    return found
    return found


def target_masks(m, order) -> frozenset[int]:
    """Base masks of ``m`` in the search universe (S on bits 0..2, Q on bits 5..7)."""
    bit = {x: (i if i < 3 else i + 2) for i, x in enumerate(order)}
    return frozenset(sum(1 << bit[m.ground[i]] for i in range(len(m.ground)) if b >> i & 1)
                     for b in base_masks(m))


# vector enumeration over small prime fields


def vectors(space) -> set[tuple[int, ...]]:
    """Every vector of a GF(p) space, by summing all coefficient combinations of its rows."""
    from itertools import product
    p = space.field.modulus
    n = len(space.columns)
    out = set()
    for coeffs in product(range(p), repeat=space.rank):
        out.add(tuple(sum(c * r[j] for c, r in zip(coeffs, space.rows)) % p for j in range(n)))
    return out


def brute_compose(left, right) -> set[tuple[int, ...]]:
    """Matched composition by pairing vectors that agree on the shared columns."""
    shared = [c for c in left.columns if c in right.columns]
    s = [c for c in left.columns if c not in shared]
    q = [c for c in right.columns if c not in shared]
    li = {c: i for i, c in enumerate(left.columns)}
    ri = {c: i for i, c in enumerate(right.columns)}
    by_p: dict[tuple, list[tuple]] = {}
    for g in vectors(right):
        by_p.setdefault(tuple(g[ri[c]] for c in shared), []).append(tuple(g[ri[c]] for c in q))
    out = set()
    for f in vectors(left):
        for gq in by_p.get(tuple(f[li[c]] for c in shared), []):
            out.add(tuple(f[li[c]] for c in s) + gq)
    return out
