"""Overlap minimization and minimal decomposition of matched compositions."""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .errors import InvariantBreach, PreconditionError
from .labels import prime_map
from .vspace import (
    VSpace,
    column_base,
    contract,
    intersect,
    matched_compose,
    relabel,
    reorder,
    restrict,
    same_space,
    sum_spaces,
)


@dataclass(frozen=True)
class CompositionPair:
    """``left`` lives on S⊎P, ``right`` on P⊎Q; the overlap P is the shared columns."""

    left: VSpace
    right: VSpace

    def __post_init__(self):
        if self.left.field != self.right.field:
            raise PreconditionError("composition pair over different fields")

    @property
    def overlap(self) -> tuple[str, ...]:
        shared = set(self.right.columns)
        return tuple(c for c in self.left.columns if c in shared)

    @property
    def left_only(self) -> tuple[str, ...]:
        shared = set(self.right.columns)
        return tuple(c for c in self.left.columns if c not in shared)

    @property
    def right_only(self) -> tuple[str, ...]:
        shared = set(self.left.columns)
        return tuple(c for c in self.right.columns if c not in shared)

    def compose(self) -> VSpace:
        return matched_compose(self.left, self.right)


def connectivity(space: VSpace, side: Sequence[str]) -> int:
    """r(V∘side) − r(V×side)."""
    return restrict(space, side).rank - contract(space, side).rank


def overlap_bound(pair: CompositionPair) -> int:
    """r(V_SP + V_PQ) − r(V_SP ∩ V_PQ): the overlap size ``min_overlap`` reaches."""
    return sum_spaces(pair.left, pair.right).rank - intersect(pair.left, pair.right).rank


def minors_match(pair: CompositionPair) -> bool:
    """Both sides have the same restriction and the same contraction on the overlap."""
    p = pair.overlap
    return (restrict(pair.left, p) == restrict(pair.right, p)
            and contract(pair.left, p) == contract(pair.right, p))


def min_overlap(pair: CompositionPair) -> CompositionPair:
    s, p, q = pair.left_only, pair.overlap, pair.right_only
    spanning = column_base(restrict(sum_spaces(pair.left, pair.right), p))
    left = restrict(pair.left, s + spanning)
    right = restrict(pair.right, spanning + q)
    removable = set(column_base(contract(intersect(left, right), spanning)))
    kept = tuple(x for x in spanning if x not in removable)
    left = contract(left, s + kept)
    right = contract(right, kept + q)
    return CompositionPair(left, reorder(right, kept + q))


def pseudo_identity(space: VSpace, q_labels: Sequence[str]) -> VSpace:
    """V_QQ' = V_SQ ↔ (V_SQ)_{SQ'} on Q⊎Q'."""
    q_set = set(q_labels)
    q = tuple(c for c in space.columns if c in q_set)
    if len(q) != len(q_set):
        raise PreconditionError("Q must be a subset of the columns")
    primed = relabel(space, prime_map(q, avoid=space.columns))
    return matched_compose(space, primed)


def decompose(space: VSpace, s_labels: Sequence[str], q_labels: Sequence[str]) -> CompositionPair:
    """Split ``space`` into a pair whose overlap size equals the connectivity of S."""
    if set(s_labels) | set(q_labels) != set(space.columns) or set(s_labels) & set(q_labels):
        raise PreconditionError("S and Q must partition the columns")
    q = tuple(c for c in space.columns if c in set(q_labels))
    mapping = prime_map(q, avoid=space.columns)
    left = relabel(space, mapping)
    right = pseudo_identity(space, q)
    result = min_overlap(CompositionPair(left, right))
    if not same_space(result.compose(), space):
        raise InvariantBreach("decomposition does not recompose", witness=result)
    return result
