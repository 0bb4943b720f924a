"""Matroid union, wedge, common independent sets and maximally distant bases."""
from __future__ import annotations

from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

from .labels import ordered_union
from .matroid import (
    Matroid,
    bits,
    direct_sum,
    dual,
    free,
    popcount,
    reorder,
    zero,
)


def padded_pair(first: Matroid, second: Matroid, filler=zero) -> tuple[Matroid, Matroid]:
    """Extend both operands to the union of their grounds with ``filler`` matroids."""
    ground = ordered_union(first.ground, second.ground)
    extra_first = [x for x in ground if x not in first.index]
    extra_second = [x for x in ground if x not in second.index]
    a = direct_sum(first, filler(extra_first)) if extra_first else first
    b = direct_sum(second, filler(extra_second)) if extra_second else second
    return reorder(a, ground), reorder(b, ground)


def _augment(mats: Sequence[Matroid], parts: list[int], y: int) -> bool:
    """Insert element ``y`` into the partition ``parts`` by a shortest exchange path."""
    owner = {}
    for k, part in enumerate(parts):
        for i in bits(part):
            owner[i] = k
    n = len(mats[0].ground)
    parent: dict[int, tuple[int, int]] = {}
    seen = {y}
    queue = deque([y])
    while queue:
        x = queue.popleft()
        for k, m in enumerate(mats):
            if owner.get(x) == k:
                continue
            part = parts[k]
            if m.indep_mask(part | (1 << x)):
                # sink found: walk the path back, shifting each element into its new part
                node, target = x, k
                while True:
                    prev_owner = owner.get(node)
                    if prev_owner is not None:
                        parts[prev_owner] &= ~(1 << node)
                    parts[target] |= 1 << node
                    if node == y:
                        return True
                    node, target = parent[node]
            for z in range(n):
                if z in seen or owner.get(z) != k:
                    continue
                if m.indep_mask((part & ~(1 << z)) | (1 << x)):
                    seen.add(z)
                    parent[z] = (x, k)
                    queue.append(z)
    return False


def partition(mats: Sequence[Matroid], mask: int, order: Sequence[int] | None = None) -> list[int]:
    """Greedy maximum partitionable subset of ``mask``; returns one independent part per matroid."""
    parts = [0] * len(mats)
    n = len(mats[0].ground)
    order = range(n) if order is None else order
    for y in order:
        if mask >> y & 1:
            _augment(mats, parts, y)
    return parts


class UnionMatroid(Matroid):
    def __init__(self, first: Matroid, second: Matroid):
        a, b = padded_pair(first, second, zero)
        super().__init__(a.ground, "union")
        self.parts = (a, b)

    def _compute_rank(self, mask: int) -> int:
        return sum(popcount(p) for p in partition(self.parts, mask))


def union(first: Matroid, second: Matroid) -> Matroid:
    return UnionMatroid(first, second)


def wedge(first: Matroid, second: Matroid) -> Matroid:
    """Dual of the union of duals, each operand padded with free elements."""
    a, b = padded_pair(first, second, free)
    return dual(UnionMatroid(dual(a), dual(b)))


def max_common_independent(first: Matroid, second: Matroid, start: int = 0) -> int:
    """Maximum common independent set (as a mask of ``first``'s ground).

    Starts from ``start`` (which must be common independent), first extends it
    greedily, then augments along shortest exchange paths.
    """
    second = reorder(second, first.ground)
    n = len(first.ground)
    current = start
    for i in range(n):
        bit = 1 << i
        if not current & bit and first.indep_mask(current | bit) and second.indep_mask(current | bit):
            current |= bit
    while True:
        path = _shortest_exchange_path(first, second, current, n)
        if path is None:
            return current
        for i in path:
            current ^= 1 << i


def _shortest_exchange_path(first: Matroid, second: Matroid, current: int, n: int) -> list[int] | None:
    outside = [i for i in range(n) if not current >> i & 1]
    inside = [i for i in range(n) if current >> i & 1]
    sources = [x for x in outside if first.indep_mask(current | (1 << x))]
    if not sources:
        return None
    sinks = {x for x in outside if second.indep_mask(current | (1 << x))}
    parent: dict[int, int | None] = {x: None for x in sources}
    queue = deque(sources)
    while queue:
        node = queue.popleft()
        if node in sinks:
            path = [node]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path
        if current >> node & 1:
            # inside -> outside: swapping keeps independence in ``first``
            base = current & ~(1 << node)
            for x in outside:
                if x not in parent and first.indep_mask(base | (1 << x)):
                    parent[x] = node
                    queue.append(x)
        else:
            # outside -> inside: swapping keeps independence in ``second``
            for y in inside:
                if y not in parent and second.indep_mask((current & ~(1 << y)) | (1 << node)):
                    parent[y] = node
                    queue.append(y)
    return None


@dataclass(frozen=True)
class DistantBasePair:
    base1: frozenset[str]
    base2: frozenset[str]
    union_rank: int


def maximally_distant_masks(first: Matroid, second: Matroid, priority: Sequence[str] = ()) -> tuple[int, int, int]:
    """Bases (as masks on the padded ground) whose union is a base of the union.

    Elements named in ``priority`` are inserted first; the rest follow in
    ground order.
    """
    a, b = padded_pair(first, second, zero)
    ground = a.ground
    pos = {x: i for i, x in enumerate(ground)}
    first_set = set(priority)
    order = [pos[x] for x in priority] + [i for i, x in enumerate(ground) if x not in first_set]
    parts = partition((a, b), a.full, order)
    base1 = _extend(a, parts[0], order)
    base2 = _extend(b, parts[1], order)
    return base1, base2, popcount(parts[0] | parts[1])


def _extend(m: Matroid, start: int, order: Sequence[int]) -> int:
    current = start
    for i in order:
        bit = 1 << i
        if not current & bit and m.indep_mask(current | bit):
            current |= bit
    return current


def maximally_distant_bases(first: Matroid, second: Matroid, priority: Sequence[str] = ()) -> DistantBasePair:
    a, _ = padded_pair(first, second, zero)
    b1, b2, size = maximally_distant_masks(first, second, priority)
    return DistantBasePair(frozenset(a.labels(b1)), frozenset(a.labels(b2)), size)
