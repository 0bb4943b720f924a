"""Brute-force definitional computations used as independent ground truth.

Everything here works on enumerated base families and subset scans; nothing
calls the augmenting-path machinery.
"""
from __future__ import annotations

from collections.abc import Iterable
from itertools import combinations

from .config import check_guard
from .labels import ordered_union
from .matroid import ExplicitBases, Matroid, base_masks, bits, exchange_violation, popcount


def _bases_on(m: Matroid, ground: tuple[str, ...]) -> set[int]:
    """Bases of ``m`` as masks on a larger ``ground``."""
    pos = {x: i for i, x in enumerate(ground)}
    out = set()
    for b in base_masks(m):
        mask = 0
        for i in bits(b):
            mask |= 1 << pos[m.ground[i]]
        out.add(mask)
    return out


def _as_bases(ground: tuple[str, ...], masks: Iterable[int]) -> ExplicitBases:
    return ExplicitBases(ground, frozenset(frozenset(ground[i] for i in bits(b)) for b in masks))


def _maximal(masks: Iterable[int]) -> set[int]:
    masks = set(masks)
    top = max(popcount(b) for b in masks)
    return {b for b in masks if popcount(b) == top}


def union_masks(first: Matroid, second: Matroid) -> tuple[tuple[str, ...], set[int]]:
    ground = ordered_union(first.ground, second.ground)
    check_guard(len(ground), "brute union", pair=True)
    b1, b2 = _bases_on(first, ground), _bases_on(second, ground)
    return ground, _maximal(x | y for x in b1 for y in b2)


def brute_union(first: Matroid, second: Matroid) -> ExplicitBases:
    """Maximal sets of the form b1 ∪ b2."""
    ground, masks = union_masks(first, second)
    return _as_bases(ground, masks)


def brute_link(left: Matroid, right: Matroid) -> ExplicitBases:
    """Union bases meeting the shared set maximally, cut down to the unshared labels."""
    ground, masks = union_masks(left, right)
    shared = set(left.ground) & set(right.ground)
    p = sum(1 << i for i, x in enumerate(ground) if x in shared)
    best = max(popcount(b & p) for b in masks)
    outer = tuple(x for x in ground if x not in shared)
    pos = {x: i for i, x in enumerate(outer)}
    out = set()
    for b in masks:
        if popcount(b & p) == best:
            mask = 0
            for i in bits(b & ~p):
                mask |= 1 << pos[ground[i]]
            out.add(mask)
    return _as_bases(outer, out)


def brute_exchange_check(bases: Iterable[Iterable[str]]) -> tuple[bool, tuple | None]:
    """Check the base-exchange axiom; return (ok, (b1, b2, e1)) with e1=None on a size mismatch."""
    family = [frozenset(b) for b in bases]
    ground = tuple(sorted(set().union(*family))) if family else ()
    check_guard(len(ground), "brute exchange check")
    pos = {x: i for i, x in enumerate(ground)}
    masks = {sum(1 << pos[x] for x in b) for b in family}
    bad = exchange_violation(masks)
    if bad is None:
        return True, None
    b1, b2, e1 = bad
    names = lambda m: frozenset(ground[i] for i in bits(m))
    return False, (names(b1), names(b2), None if e1 < 0 else ground[e1])


def brute_rank(m: Matroid, labels: Iterable[str]) -> int:
    """Largest intersection of the subset with an enumerated base."""
    mask = m.mask(labels)
    return max(popcount(b & mask) for b in base_masks(m))


def brute_quotient(big: Matroid, small: Matroid) -> bool:
    """r_big(T2) − r_big(T1) ≥ r_small(T2) − r_small(T1) for every nested pair T1 ⊆ T2."""
    check_guard(len(big.ground), "brute quotient", pair=True)
    order = big.ground
    big_bases = base_masks(big)
    pos = {x: i for i, x in enumerate(order)}
    small_bases = {sum(1 << pos[small.ground[i]] for i in bits(b)) for b in base_masks(small)}
    n = len(order)
    rb = [max(popcount(b & t) for b in big_bases) for t in range(1 << n)]
    rs = [max(popcount(b & t) for b in small_bases) for t in range(1 << n)]
    for t2 in range(1 << n):
        t1 = t2
        while True:
            if rb[t2] - rb[t1] < rs[t2] - rs[t1]:
                return False
            if t1 == 0:
                break
            t1 = (t1 - 1) & t2
    return True


def brute_convolution_rank(first: Matroid, second: Matroid, labels: Iterable[str]) -> int:
    """min over X ⊆ Y of r1(X) + r2(X) + |Y − X|, on the padded common ground."""
    ground = ordered_union(first.ground, second.ground)
    pos = {x: i for i, x in enumerate(ground)}
    b1, b2 = _bases_on(first, ground), _bases_on(second, ground)
    y = sum(1 << pos[x] for x in labels)
    best = None
    x = y
    while True:
        value = (max(popcount(b & x) for b in b1) + max(popcount(b & x) for b in b2)
                 + popcount(y & ~x))
        best = value if best is None else min(best, value)
        if x == 0:
            break
        x = (x - 1) & y
    return best


def brute_max_common(first: Matroid, second: Matroid) -> int:
    """Size of a largest set independent in both (same ground labels)."""
    check_guard(len(first.ground), "brute common independent", pair=True)
    b1 = base_masks(first)
    pos = {x: i for i, x in enumerate(first.ground)}
    b2 = {sum(1 << pos[second.ground[i]] for i in bits(b)) for b in base_masks(second)}
    return max(popcount(x & y) for x in b1 for y in b2)


def brute_witnesses(m: Matroid, s_labels: Iterable[str], candidate: Iterable[str]) -> list[tuple[frozenset, frozenset, frozenset]]:
    """All triples of bases (b_S⊎b_Q, b̂_S⊎b_Q, b_S⊎b̂_Q) forcing ``candidate``."""
    s = m.mask(s_labels)
    q = m.full & ~s
    cand = m.mask(candidate)
    family = base_masks(m)
    hat_s, hat_q = cand & s, cand & q
    out = []
    for b in family:
        if (hat_s | (b & q)) in family and ((b & s) | hat_q) in family:
            out.append((frozenset(m.labels(b)), frozenset(m.labels(hat_s | (b & q))),
                        frozenset(m.labels((b & s) | hat_q))))
    return sorted(out, key=lambda t: [sorted(x) for x in t])


def all_subsets(ground: tuple[str, ...], size: int) -> Iterable[frozenset[str]]:
    for combo in combinations(ground, size):
        yield frozenset(combo)
