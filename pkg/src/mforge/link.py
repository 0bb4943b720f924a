"""Linking of matroids through a shared element set, and its minimization."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from itertools import combinations

from .config import check_guard
from .errors import InvariantBreach, PreconditionError
from .matroid import (
    Matroid,
    bits,
    connectivity,
    contract_to,
    direct_sum,
    dual,
    matroid_equal,
    popcount,
    reorder,
    restrict_to,
)
from .union import union, wedge


@dataclass(frozen=True)
class LinkInstance:
    """``left`` on S⊎P and ``right`` on P⊎Q; P is whatever the grounds share."""

    left: Matroid
    right: Matroid

    @property
    def overlap(self) -> tuple[str, ...]:
        return tuple(x for x in self.left.ground if x in self.right.index)

    @property
    def left_only(self) -> tuple[str, ...]:
        return tuple(x for x in self.left.ground if x not in self.right.index)

    @property
    def right_only(self) -> tuple[str, ...]:
        return tuple(x for x in self.right.ground if x not in self.left.index)

    def link(self) -> Matroid:
        return link(self.left, self.right)


def link(left: Matroid, right: Matroid) -> Matroid:
    """(M_SP ∨ M_PQ) × (S⊎Q), with ground ordered S then Q."""
    inst = LinkInstance(left, right)
    outer = inst.left_only + inst.right_only
    linked = contract_to(union(left, right), outer)
    linked.provenance = "link"
    return reorder(linked, outer)


def link_by_wedge(left: Matroid, right: Matroid) -> Matroid:
    """Verification route: (M_SP ∧ M_PQ) ∘ (S⊎Q)."""
    inst = LinkInstance(left, right)
    outer = inst.left_only + inst.right_only
    return reorder(restrict_to(wedge(left, right), outer), outer)


def general_minimize(left: Matroid, right: Matroid) -> LinkInstance:
    """Shrink the overlap to r(∨) − r(∧) elements without changing the link."""
    inst = LinkInstance(left, right)
    s, p, q = inst.left_only, inst.overlap, inst.right_only
    joined = union(left, right)
    spanning = joined.labels(joined.greedy_base_mask(within=joined.mask(p)))
    left_r = restrict_to(left, s + spanning)
    right_r = restrict_to(right, spanning + q)
    co_joined = union(dual(left_r), dual(right_r))
    kept = co_joined.labels(co_joined.greedy_base_mask(within=co_joined.mask(spanning)))
    new_left = reorder(contract_to(left_r, s + kept), s + kept)
    new_right = reorder(contract_to(right_r, kept + q), kept + q)
    return LinkInstance(new_left, new_right)


def overlap_bound(left: Matroid, right: Matroid) -> int:
    """r(M_SP ∨ M_PQ) − r(M_SP ∧ M_PQ)."""
    return union(left, right).rank - wedge(left, right).rank


def check_condition(left: Matroid, right: Matroid) -> bool:
    """M_SP∘P = M*_PQ∘P and M_SP×P = M*_PQ×P."""
    p = LinkInstance(left, right).overlap
    co_right = dual(right)
    return (matroid_equal(restrict_to(left, p), restrict_to(co_right, p))
            and matroid_equal(contract_to(left, p), contract_to(co_right, p)))


def conditional_minimize(left: Matroid, right: Matroid, check: bool = True) -> LinkInstance:
    """Contract a base of each side's overlap contraction and delete it on the other side."""
    if check and not check_condition(left, right):
        raise PreconditionError("overlap condition fails; use general_minimize")
    inst = LinkInstance(left, right)
    s, p, q = inst.left_only, inst.overlap, inst.right_only
    left_c = contract_to(left, p)
    right_c = contract_to(right, p)
    b3 = left_c.greedy_base_mask()
    b3_labels = set(left_c.labels(b3))
    b4 = right_c.greedy_base_mask(within=right_c.full & ~right_c.mask(b3_labels))
    if popcount(b4) != right_c.rank:
        raise InvariantBreach("no base of the right overlap contraction avoids the left one",
                              witness=sorted(b3_labels))
    b4_labels = set(right_c.labels(b4))
    hat = tuple(x for x in p if x not in b3_labels and x not in b4_labels)
    p_minus_b3 = tuple(x for x in p if x not in b3_labels)
    p_minus_b4 = tuple(x for x in p if x not in b4_labels)
    new_left = reorder(restrict_to(contract_to(left, s + p_minus_b3), s + hat), s + hat)
    new_right = reorder(restrict_to(contract_to(right, p_minus_b4 + q), hat + q), hat + q)
    result = LinkInstance(new_left, new_right)
    lam = connectivity(link(left, right), s)
    if len(hat) != lam:
        raise InvariantBreach(f"minimized overlap {len(hat)} differs from connectivity {lam}", witness=hat)
    return result


@dataclass(frozen=True)
class Multiport:
    """(M_SP1, M_P2Q, M_P1P2): two side matroids coupled through a port matroid."""

    left: Matroid
    right: Matroid
    ports: Matroid

    def compose(self) -> Matroid:
        return link(direct_sum(self.left, self.right), self.ports)


def multiport_minimize(left: Matroid, right: Matroid, ports: Matroid) -> Multiport:
    """Run ``conditional_minimize`` on the left port and then on the right port."""
    p1 = tuple(x for x in ports.ground if x in left.index)
    p2 = tuple(x for x in ports.ground if x in right.index)
    if len(p1) + len(p2) != len(ports.ground):
        raise PreconditionError("port matroid ground must be exactly P1 ⊎ P2")
    step1 = conditional_minimize(left, ports)
    hat1 = step1.overlap
    step2 = conditional_minimize(right, step1.right)
    hat2 = step2.overlap
    new_right = reorder(step2.left, hat2 + step2.left_only)
    new_ports = reorder(step2.right, hat1 + hat2)
    return Multiport(step1.left, new_right, new_ports)


def triple_link(*mats: Matroid) -> Matroid:
    """Union of all operands contracted to the labels that occur exactly once."""
    counts = Counter(x for m in mats for x in m.ground)
    over = sorted(x for x, c in counts.items() if c > 2)
    if over:
        raise PreconditionError(f"labels occur more than twice: {over}")
    joined = mats[0]
    for m in mats[1:]:
        joined = union(joined, m)
    once = tuple(x for x in joined.ground if counts[x] == 1)
    return reorder(contract_to(joined, once), once)


def is_quotient(big: Matroid, small: Matroid) -> bool:
    """Whether ``small`` is a quotient of ``big`` (single-element rank increments dominate)."""
    if set(big.ground) != set(small.ground):
        raise PreconditionError("quotient check needs a common ground")
    check_guard(len(big.ground), "quotient check")
    small = reorder(small, big.ground)
    n = len(big.ground)
    for t in range(1 << n):
        r1, r2 = big.rank_mask(t), small.rank_mask(t)
        for i in range(n):
            if not t >> i & 1:
                grown = t | (1 << i)
                if big.rank_mask(grown) - r1 < small.rank_mask(grown) - r2:
                    return False
    return True


def matroid_geq(big: Matroid, small: Matroid) -> bool:
    """Base-containment order: for every T, bases of big∘T contain bases of small∘T and
    bases of small∘T extend to bases of big∘T."""
    if set(big.ground) != set(small.ground):
        raise PreconditionError("comparison needs a common ground")
    check_guard(len(big.ground), "matroid comparison")
    small = reorder(small, big.ground)
    n = len(big.ground)
    for t in range(1 << n):
        rb, rs = big.rank_mask(t), small.rank_mask(t)
        members = list(bits(t))
        for combo in combinations(members, rb):
            mask = sum(1 << i for i in combo)
            if big.indep_mask(mask) and small.rank_mask(mask) != rs:
                return False
        for combo in combinations(members, rs):
            mask = sum(1 << i for i in combo)
            if small.indep_mask(mask) and not big.indep_mask(mask):
                return False
    return True
