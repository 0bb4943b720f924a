"""Products of two matroids on disjoint sets: RR, CC, the free product RC, and the principal sum."""
from __future__ import annotations

from collections.abc import Sequence
from itertools import combinations

from .errors import PreconditionError
from .labels import fresh_map
from .link import link
from .matroid import Matroid, dual, free, popcount, reorder, zero
from .union import union


def _disjoint(first: Matroid, second: Matroid) -> None:
    if set(first.ground) & set(second.ground):
        raise PreconditionError("product factors need disjoint grounds")


class _Split(Matroid):
    """Handle on S⊎Q that evaluates its two parts with the factor oracles."""

    def __init__(self, first: Matroid, second: Matroid, provenance: str):
        _disjoint(first, second)
        super().__init__(first.ground + second.ground, provenance)
        self.first, self.second = first, second
        self.shift = len(first.ground)

    def parts(self, mask: int) -> tuple[int, int]:
        return mask & self.first.full, mask >> self.shift


class TruncatedSum(_Split):
    """RR: independent iff both parts are independent and the total size is at most ``k``."""

    def __init__(self, first: Matroid, second: Matroid, k: int):
        super().__init__(first, second, f"rr {k}")
        self.k = k

    def _compute_rank(self, mask: int) -> int:
        a, b = self.parts(mask)
        return min(self.k, self.first.rank_mask(a) + self.second.rank_mask(b))


class FreeProduct(_Split):
    """RC: a set is independent iff its first part is independent and
    |first part| + nullity of its second part ≤ r(first factor)."""

    def __init__(self, first: Matroid, second: Matroid):
        super().__init__(first, second, "free product")

    def _compute_indep(self, mask: int) -> bool:
        a, b = self.parts(mask)
        if not self.first.indep_mask(a):
            return False
        nullity = popcount(b) - self.second.rank_mask(b)
        return popcount(a) + nullity <= self.first.rank


def free_rr(first: Matroid, second: Matroid, k_max: int) -> Matroid:
    r1, r2 = first.rank, second.rank
    if not max(r1, r2) <= k_max <= r1 + r2:
        raise PreconditionError(f"k_max={k_max} outside [{max(r1, r2)}, {r1 + r2}]")
    return TruncatedSum(first, second, k_max)


def free_cc(first: Matroid, second: Matroid, k_max: int) -> Matroid:
    """Dual of RR of the duals; ``k_max`` applies to the dual factors."""
    return dual(free_rr(dual(first), dual(second), k_max))


def free_rc(first: Matroid, second: Matroid) -> Matroid:
    _disjoint(first, second)
    return FreeProduct(first, second)


def free_rc_by_link(first: Matroid, second: Matroid) -> Matroid:
    """RR(M_S, F_P) ↔ CC(M_Q, 0_P) with |P| = min(r(M_S), |Q| − r(M_Q))."""
    _disjoint(first, second)
    size = min(first.rank, len(second.ground) - second.rank)
    taken = set(first.ground) | set(second.ground)
    ports = [f"port{i}" for i in range(1, size + 1)]
    if taken & set(ports):
        ports = list(fresh_map(ports, avoid=taken | set(ports)).values())
    left = free_rr(first, free(ports), first.rank)
    right = reorder(free_cc(zero(ports), second, len(second.ground) - second.rank), ports + list(second.ground))
    return link(left, right)


class PrincipalExtension(Matroid):
    """M_SB: r(X⊎B1) = r_S(X) + min(r_S(X∪A) − r_S(X), |B1|)."""

    def __init__(self, base: Matroid, a_labels: Sequence[str], b_labels: Sequence[str]):
        b_labels = list(b_labels)
        if set(b_labels) & set(base.ground):
            raise PreconditionError("extension labels must be new")
        super().__init__(base.ground + tuple(b_labels), "principal extension")
        self.base = base
        self.a_mask = base.mask(a_labels)
        self.shift = len(base.ground)

    def _compute_rank(self, mask: int) -> int:
        x, b1 = mask & self.base.full, mask >> self.shift
        rx = self.base.rank_mask(x)
        return rx + min(self.base.rank_mask(x | self.a_mask) - rx, popcount(b1))


def principal_sum(first: Matroid, second: Matroid, a_labels: Sequence[str], b_labels: Sequence[str]) -> Matroid:
    """M_SB ∨ M_Q with ground ordered S then Q."""
    _disjoint(first, second)
    if not set(a_labels) <= set(first.ground):
        raise PreconditionError("A must be a subset of the first ground")
    if not set(b_labels) <= set(second.ground):
        raise PreconditionError("B must be a subset of the second ground")
    b_list = [x for x in second.ground if x in set(b_labels)]
    extension = PrincipalExtension(first, a_labels, b_list)
    joined = union(extension, second)
    joined.provenance = "principal sum"
    return reorder(joined, first.ground + second.ground)


def principal_rule_independent(first: Matroid, second: Matroid, a_labels: Sequence[str],
                               b_labels: Sequence[str], labels: Sequence[str]) -> bool:
    """Is ``labels`` a disjoint union I ⊎ D ⊎ D̂ with I independent in the first factor,
    D independent in the second, D̂ ⊆ B and |D̂| ≤ r_S(I ∪ A) − |I|?"""
    chosen = set(labels)
    i_part = [x for x in first.ground if x in chosen]
    if not first.is_independent(i_part):
        return False
    budget = first.rank_of(set(i_part) | set(a_labels)) - len(i_part)
    q_part = [x for x in second.ground if x in chosen]
    movable = [x for x in q_part if x in set(b_labels)]
    for size in range(min(budget, len(movable)) + 1):
        for hat in combinations(movable, size):
            rest = [x for x in q_part if x not in hat]
            if second.is_independent(rest):
                return True
    return False
