"""Matroids as memoized rank/independence oracles over bitmasks.

Every handle has an ordered ground set; subset ``X`` is encoded as the mask
with bit ``i`` set when ``ground[i] ∈ X``.  Subclasses implement either
``_compute_rank`` or ``_compute_indep``; the base class derives the other.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass
from itertools import combinations

from .config import check_guard
from .errors import PreconditionError
from .graphs import Graph, is_forest
from .labels import check_unique
from .vspace import VSpace, restrict


def popcount(mask: int) -> int:
    return mask.bit_count()


def bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class Matroid:
    """Abstract matroid handle; immutable once built."""

    def __init__(self, ground: Sequence[str], provenance: str):
        self.ground: tuple[str, ...] = tuple(ground)
        check_unique(self.ground)
        self.provenance = provenance
        self.index = {lab: i for i, lab in enumerate(self.ground)}
        self.full = (1 << len(self.ground)) - 1
        self._rank_memo: dict[int, int] = {}

    def __repr__(self) -> str:
        return f"<{self.provenance} on {' '.join(self.ground)}>"

    def __len__(self) -> int:
        return len(self.ground)

    # label <-> mask plumbing

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for lab in labels:
            try:
                m |= 1 << self.index[lab]
            except KeyError:
                raise PreconditionError(f"unknown element {lab!r}") from None
        return m

    def labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self.ground[i] for i in bits(mask))

    # oracle

    def _compute_rank(self, mask: int) -> int:
        current = 0
        for i in bits(mask):
            trial = current | (1 << i)
            if self._compute_indep(trial):
                current = trial
        return popcount(current)

    def _compute_indep(self, mask: int) -> bool:
        return self.rank_mask(mask) == popcount(mask)

    def rank_mask(self, mask: int) -> int:
        r = self._rank_memo.get(mask)
        if r is None:
            r = self._compute_rank(mask)
            self._rank_memo[mask] = r
        return r

    def indep_mask(self, mask: int) -> bool:
        if mask in self._rank_memo:
            return self._rank_memo[mask] == popcount(mask)
        return self._compute_indep(mask)

    @property
    def rank(self) -> int:
        return self.rank_mask(self.full)

    def rank_of(self, labels: Iterable[str]) -> int:
        return self.rank_mask(self.mask(labels))

    def is_independent(self, labels: Iterable[str]) -> bool:
        return self.indep_mask(self.mask(labels))

    def greedy_base_mask(self, within: int | None = None, order: Sequence[int] | None = None) -> int:
        """Maximal independent subset of ``within`` picked greedily in ``order``."""
        within = self.full if within is None else within
        order = range(len(self.ground)) if order is None else order
        current = 0
        for i in order:
            bit = 1 << i
            if within & bit and self.indep_mask(current | bit):
                current |= bit
        return current

    def closure_mask(self, mask: int) -> int:
        r = self.rank_mask(mask)
        out = mask
        for i in range(len(self.ground)):
            bit = 1 << i
            if not mask & bit and self.rank_mask(mask | bit) == r:
                out |= bit
        return out


class ExplicitMatroid(Matroid):
    def __init__(self, ground: Sequence[str], base_masks: Iterable[int], provenance: str = "bases"):
        super().__init__(ground, provenance)
        self.base_masks = frozenset(base_masks)
        if not self.base_masks:
            raise PreconditionError("a matroid needs at least one base")

    def _compute_indep(self, mask: int) -> bool:
        return any(b & mask == mask for b in self.base_masks)

    def _compute_rank(self, mask: int) -> int:
        return max(popcount(b & mask) for b in self.base_masks)


class LinearMatroid(Matroid):
    def __init__(self, space: VSpace):
        super().__init__(space.columns, "linear")
        self.space = space

    def _compute_rank(self, mask: int) -> int:
        return restrict(self.space, self.labels(mask)).rank


class GraphicMatroid(Matroid):
    def __init__(self, graph: Graph):
        super().__init__(graph.labels, "graphic")
        self.graph = graph

    def _compute_indep(self, mask: int) -> bool:
        return is_forest(self.graph, self.labels(mask))


class UniformMatroid(Matroid):
    def __init__(self, ground: Sequence[str], k: int, provenance: str | None = None):
        if not 0 <= k <= len(ground):
            raise PreconditionError(f"uniform rank {k} outside [0, {len(ground)}]")
        super().__init__(ground, provenance or f"uniform {k}")
        self.k = k

    def _compute_rank(self, mask: int) -> int:
        return min(self.k, popcount(mask))

    def _compute_indep(self, mask: int) -> bool:
        return popcount(mask) <= self.k


class DualMatroid(Matroid):
    def __init__(self, inner: Matroid):
        super().__init__(inner.ground, "dual")
        self.inner = inner

    def _compute_rank(self, mask: int) -> int:
        inner = self.inner
        return popcount(mask) - inner.rank + inner.rank_mask(inner.full & ~mask)

    def _compute_indep(self, mask: int) -> bool:
        inner = self.inner
        return inner.rank_mask(inner.full & ~mask) == inner.rank


class _Translated(Matroid):
    """Base for handles whose ground is a subset or renaming of ``inner``'s."""

    def __init__(self, ground: Sequence[str], inner: Matroid, positions: Sequence[int], provenance: str):
        super().__init__(ground, provenance)
        self.inner = inner
        self.positions = tuple(positions)

    def lift(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= 1 << self.positions[i]
        return out


class RestrictedMatroid(_Translated):
    def __init__(self, inner: Matroid, keep: Sequence[str]):
        keep_set = set(keep)
        ground = [x for x in inner.ground if x in keep_set]
        super().__init__(ground, inner, [inner.index[x] for x in ground], "restrict")

    def _compute_rank(self, mask: int) -> int:
        return self.inner.rank_mask(self.lift(mask))

    def _compute_indep(self, mask: int) -> bool:
        return self.inner.indep_mask(self.lift(mask))


class ContractedMatroid(_Translated):
    def __init__(self, inner: Matroid, keep: Sequence[str]):
        keep_set = set(keep)
        ground = [x for x in inner.ground if x in keep_set]
        super().__init__(ground, inner, [inner.index[x] for x in ground], "contract")
        self.outside = inner.full & ~self.lift(self.full)
        self.outside_rank = inner.rank_mask(self.outside)

    def _compute_rank(self, mask: int) -> int:
        return self.inner.rank_mask(self.lift(mask) | self.outside) - self.outside_rank


class RelabeledMatroid(_Translated):
    def __init__(self, inner: Matroid, mapping: Mapping[str, str]):
        ground = [mapping.get(x, x) for x in inner.ground]
        super().__init__(ground, inner, range(len(ground)), "relabel")

    def _compute_rank(self, mask: int) -> int:
        return self.inner.rank_mask(mask)

    def _compute_indep(self, mask: int) -> bool:
        return self.inner.indep_mask(mask)


class DirectSum(Matroid):
    def __init__(self, first: Matroid, second: Matroid):
        if set(first.ground) & set(second.ground):
            raise PreconditionError("direct sum needs disjoint grounds")
        super().__init__(first.ground + second.ground, "direct-sum")
        self.first, self.second = first, second
        self.shift = len(first.ground)

    def _compute_rank(self, mask: int) -> int:
        return self.first.rank_mask(mask & self.first.full) + self.second.rank_mask(mask >> self.shift)

    def _compute_indep(self, mask: int) -> bool:
        return self.first.indep_mask(mask & self.first.full) and self.second.indep_mask(mask >> self.shift)


class Reordered(_Translated):
    """The same matroid listed in a different ground order."""

    def __init__(self, inner: Matroid, order: Sequence[str]):
        if sorted(order) != sorted(inner.ground):
            raise PreconditionError("reorder needs a permutation of the ground")
        super().__init__(order, inner, [inner.index[x] for x in order], inner.provenance)

    def _compute_rank(self, mask: int) -> int:
        return self.inner.rank_mask(self.lift(mask))

    def _compute_indep(self, mask: int) -> bool:
        return self.inner.indep_mask(self.lift(mask))


# constructors


@dataclass(frozen=True)
class ExplicitBases:
    ground: tuple[str, ...]
    bases: frozenset[frozenset[str]]

    def sorted_bases(self) -> list[tuple[str, ...]]:
        order = {x: i for i, x in enumerate(sorted(self.ground))}
        keyed = [tuple(sorted(b, key=order.__getitem__)) for b in self.bases]
        return sorted(keyed, key=lambda b: (len(b), [order[x] for x in b]))


def exchange_violation(base_masks: Iterable[int]) -> tuple[int, int, int] | None:
    """First (b1, b2, e1) breaking the base-exchange axiom, as masks/bit index."""
    family = set(base_masks)
    ordered = sorted(family)
    sizes = {popcount(b) for b in ordered}
    if len(sizes) > 1:
        small = min(ordered, key=popcount)
        big = max(ordered, key=popcount)
        return (small, big, -1)
    for b1 in ordered:
        for b2 in ordered:
            for e1 in bits(b1 & ~b2):
                stripped = b1 & ~(1 << e1)
                if not any((stripped | (1 << e2)) in family for e2 in bits(b2 & ~b1)):
                    return (b1, b2, e1)
    return None


def explicit(bases: Iterable[Iterable[str]], ground: Sequence[str], validate: bool = True) -> ExplicitMatroid:
    ground = tuple(ground)
    check_unique(ground)
    index = {x: i for i, x in enumerate(ground)}
    masks = set()
    for b in bases:
        m = 0
        for x in b:
            if x not in index:
                raise PreconditionError(f"base element {x!r} not in the ground set")
            m |= 1 << index[x]
        masks.add(m)
    if not masks:
        raise PreconditionError("a matroid needs at least one base")
    if validate:
        check_guard(len(ground), "base-axiom check")
        bad = exchange_violation(masks)
        if bad is not None:
            b1, b2, e1 = bad
            names = lambda m: "{" + " ".join(ground[i] for i in bits(m)) + "}"
            what = "bases of different sizes" if e1 < 0 else f"no exchange for {ground[e1]}"
            raise PreconditionError(f"base axiom fails: {names(b1)} vs {names(b2)}: {what}")
    return ExplicitMatroid(ground, masks)


def from_masks(ground: Sequence[str], masks: Iterable[int], provenance: str = "bases") -> ExplicitMatroid:
    return ExplicitMatroid(ground, masks, provenance)


def linear(space: VSpace) -> Matroid:
    return LinearMatroid(space)


def graphic(graph: Graph) -> Matroid:
    return GraphicMatroid(graph)


def uniform(ground: Sequence[str], k: int) -> Matroid:
    return UniformMatroid(ground, k)


def free(ground: Sequence[str]) -> Matroid:
    return UniformMatroid(ground, len(ground), "free")


def zero(ground: Sequence[str]) -> Matroid:
    return UniformMatroid(ground, 0, "zero")


def dual(m: Matroid) -> Matroid:
    if isinstance(m, DualMatroid):
        return m.inner
    return DualMatroid(m)


def _known(m: Matroid, labels: Iterable[str]) -> list[str]:
    labels = list(labels)
    unknown = set(labels) - set(m.ground)
    if unknown:
        raise PreconditionError(f"unknown elements {sorted(unknown)}")
    return labels


def restrict_to(m: Matroid, labels: Iterable[str]) -> Matroid:
    """``M∘T``: delete everything outside T."""
    return RestrictedMatroid(m, _known(m, labels))


def contract_to(m: Matroid, labels: Iterable[str]) -> Matroid:
    """``M×T``: contract everything outside T."""
    return ContractedMatroid(m, _known(m, labels))


def minor(m: Matroid, outer: Iterable[str], inner: Iterable[str]) -> Matroid:
    """``(M∘outer)×inner``; requires inner ⊆ outer."""
    outer, inner = list(outer), list(inner)
    if not set(inner) <= set(outer):
        raise PreconditionError("minor needs inner ⊆ outer")
    return contract_to(restrict_to(m, outer), inner)


def direct_sum(first: Matroid, second: Matroid) -> Matroid:
    return DirectSum(first, second)


def relabel(m: Matroid, mapping: Mapping[str, str]) -> Matroid:
    new = [mapping.get(x, x) for x in m.ground]
    if len(set(new)) != len(new):
        raise PreconditionError("relabel mapping is not injective on the ground")
    return RelabeledMatroid(m, mapping)


def reorder(m: Matroid, order: Sequence[str]) -> Matroid:
    if tuple(order) == m.ground:
        return m
    return Reordered(m, order)


def rank_of(m: Matroid, labels: Iterable[str]) -> int:
    return m.rank_of(labels)


def is_independent(m: Matroid, labels: Iterable[str]) -> bool:
    return m.is_independent(labels)


def connectivity(m: Matroid, side: Iterable[str]) -> int:
    """λ(S) = r(M∘S) − r(M×S)."""
    s = m.mask(side)
    return m.rank_mask(s) - (m.rank - m.rank_mask(m.full & ~s))


# enumeration


def base_masks(m: Matroid) -> frozenset[int]:
    check_guard(len(m.ground), "base enumeration")
    r = m.rank
    out = set()
    for combo in combinations(range(len(m.ground)), r):
        mask = 0
        for i in combo:
            mask |= 1 << i
        if m.indep_mask(mask):
            out.add(mask)
    return frozenset(out)


def enumerate_bases(m: Matroid) -> ExplicitBases:
    return ExplicitBases(m.ground, frozenset(frozenset(m.labels(b)) for b in base_masks(m)))


def materialize(m: Matroid) -> ExplicitMatroid:
    """Explicit copy of ``m`` with the same ground order."""
    return ExplicitMatroid(m.ground, base_masks(m), m.provenance)


def matroid_equal(a: Matroid, b: Matroid) -> bool:
    if set(a.ground) != set(b.ground):
        return False
    if a.rank != b.rank:
        return False
    return base_masks(a) == base_masks(reorder(b, a.ground))
