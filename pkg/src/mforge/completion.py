"""{S,Q}-completeness, completion, equivalence blocks and complete decompositions.

The base relation of a matroid on S⊎Q pairs each S-part with each Q-part that
completes it to a base.  Viewed as a bipartite graph, the matroid is complete
exactly when every connected component of that graph is a complete bipartite
block.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .config import check_guard
from .errors import InvariantBreach, PreconditionError
from .labels import prime_map
from .link import LinkInstance, Multiport, conditional_minimize, connectivity, link, multiport_minimize
from .matroid import (
    DirectSum,
    Matroid,
    base_masks,
    bits,
    contract_to,
    dual,
    from_masks,
    materialize,
    popcount,
    relabel,
    reorder,
    restrict_to,
)
from .union import max_common_independent

# base relation helpers


def _partition_masks(m: Matroid, side: Sequence[str]) -> tuple[int, int]:
    s = m.mask(side)
    return s, m.full & ~s


def _check_partition(m: Matroid, s_labels: Sequence[str], q_labels: Sequence[str]) -> None:
    s, q = set(s_labels), set(q_labels)
    if s & q or s | q != set(m.ground):
        raise PreconditionError("S and Q must partition the ground set")


def base_relation(m: Matroid, side: Sequence[str]) -> dict[int, set[int]]:
    """Map each S-part of a base to the set of Q-parts completing it."""
    check_guard(len(m.ground), "base relation")
    s, q = _partition_masks(m, side)
    rel: dict[int, set[int]] = {}
    for b in base_masks(m):
        rel.setdefault(b & s, set()).add(b & q)
    return rel


def _components(rel: dict[int, set[int]]) -> list[tuple[set[int], set[int]]]:
    """Connected components of the bipartite base relation."""
    back: dict[int, set[int]] = {}
    for x, ys in rel.items():
        for y in ys:
            back.setdefault(y, set()).add(x)
    seen_x: set[int] = set()
    out = []
    for start in sorted(rel):
        if start in seen_x:
            continue
        xs, ys = {start}, set()
        frontier = [start]
        while frontier:
            x = frontier.pop()
            for y in rel[x]:
                if y not in ys:
                    ys.add(y)
                    for x2 in back[y]:
                        if x2 not in xs:
                            xs.add(x2)
                            frontier.append(x2)
        seen_x |= xs
        out.append((xs, ys))
    return out


def is_complete(m: Matroid, s_labels: Sequence[str], q_labels: Sequence[str]) -> bool:
    """Whenever three corners b_S⊎b_Q, b̂_S⊎b_Q, b_S⊎b̂_Q are bases, so is b̂_S⊎b̂_Q."""
    _check_partition(m, s_labels, q_labels)
    rel = base_relation(m, s_labels)
    parts = list(rel)
    for i, x in enumerate(parts):
        for x2 in parts[i + 1:]:
            if rel[x] & rel[x2] and rel[x] != rel[x2]:
                return False
    return True


def completion_bruteforce(m: Matroid, s_labels: Sequence[str], q_labels: Sequence[str]) -> Matroid:
    """One application of the completion rule to the enumerated base family."""
    _check_partition(m, s_labels, q_labels)
    rel = base_relation(m, s_labels)
    back: dict[int, set[int]] = {}
    for x, ys in rel.items():
        for y in ys:
            back.setdefault(y, set()).add(x)
    family = {x | y for x, ys in rel.items() for y in ys}
    for x_hat, ys_of_hat in rel.items():
        # x_hat ~ y, x ~ y, x ~ y_hat  ==>  x_hat ~ y_hat
        for y in ys_of_hat:
            for x in back[y]:
                for y_hat in rel[x]:
                    family.add(x_hat | y_hat)
    return from_masks(m.ground, family, "completion (enumerated)")


# lazy completion


class CountingMatroid(Matroid):
    """Pass-through wrapper counting independence queries to ``inner``."""

    def __init__(self, inner: Matroid):
        super().__init__(inner.ground, inner.provenance)
        self.inner = inner
        self.calls = 0

    def _compute_indep(self, mask: int) -> bool:
        self.calls += 1
        return self.inner.indep_mask(mask)

    def indep_mask(self, mask: int) -> bool:
        return self._compute_indep(mask)


class _SideCondition(Matroid):
    """Independence of B ⊆ P = S'⊎Q' given fixed parts (b_S, b_Q) of the query:
    b_S ∪ B_Q' and B_S' ∪ b_Q must both be independent in M."""

    def __init__(self, oracle: Matroid, s_mask: int, q_mask: int, b_s: int, b_q: int, positions: Sequence[int]):
        super().__init__([f"p{i}" for i in range(len(positions))], "completion side condition")
        self.oracle = oracle
        self.s_mask, self.q_mask = s_mask, q_mask
        self.b_s, self.b_q = b_s, b_q
        self.positions = positions

    def _compute_indep(self, mask: int) -> bool:
        lifted = 0
        for i in bits(mask):
            lifted |= 1 << self.positions[i]
        return (self.oracle.indep_mask(self.b_s | (lifted & self.q_mask))
                and self.oracle.indep_mask((lifted & self.s_mask) | self.b_q))

    indep_mask = _compute_indep


class _Plain(Matroid):
    """``oracle`` seen through an unmemoized independence test on the same ground."""

    def __init__(self, oracle: Matroid):
        super().__init__([f"p{i}" for i in range(len(oracle.ground))], "copy")
        self.oracle = oracle

    def _compute_indep(self, mask: int) -> bool:
        return self.oracle.indep_mask(mask)

    indep_mask = _compute_indep


def completion_certificate(oracle: Matroid, s_mask: int, query: int) -> int | None:
    """A base B of M with b_S ∪ B_Q and B_S ∪ b_Q independent, or None.

    ``query`` is independent in the completion exactly when such a B exists.
    All masks live on ``oracle``'s ground.
    """
    q_mask = oracle.full & ~s_mask
    b_s, b_q = query & s_mask, query & q_mask
    if not oracle.indep_mask(b_s) or not oracle.indep_mask(b_q):
        return None
    positions = list(range(len(oracle.ground)))
    side = _SideCondition(oracle, s_mask, q_mask, b_s, b_q, positions)
    common = max_common_independent(side, _Plain(oracle))
    rank = oracle.rank
    if popcount(common) < rank:
        return None
    return common


class CompletionMatroid(Matroid):
    """Lazy {S,Q}-completion driven by a matroid-intersection test per query."""

    def __init__(self, inner: Matroid, s_labels: Sequence[str]):
        super().__init__(inner.ground, "completion")
        self.inner = inner
        self.s_mask = inner.mask(s_labels)

    def _compute_indep(self, mask: int) -> bool:
        return completion_certificate(self.inner, self.s_mask, mask) is not None


def completion(m: Matroid, s_labels: Sequence[str], q_labels: Sequence[str]) -> Matroid:
    _check_partition(m, s_labels, q_labels)
    return CompletionMatroid(m, s_labels)


def completion_by_link(m: Matroid, s_labels: Sequence[str], q_labels: Sequence[str]) -> Matroid:
    """[(M)_{SQ'} ⊕ (M)_{S'Q}] ↔ (M*)_{S'Q'} computed through the generic link."""
    _check_partition(m, s_labels, q_labels)
    s_set, q_set = set(s_labels), set(q_labels)
    s = [x for x in m.ground if x in s_set]
    q = [x for x in m.ground if x in q_set]
    q_prime = prime_map(q, avoid=m.ground)
    s_prime = prime_map(s, avoid=list(m.ground) + list(q_prime.values()))
    left = relabel(m, q_prime)
    right = relabel(m, s_prime)
    ports = relabel(dual(m), {**s_prime, **q_prime})
    return reorder(link(DirectSum(left, right), ports), m.ground)


def query_cost(m: Matroid, s_labels: Sequence[str], query: Sequence[str]) -> int:
    """Number of independence-oracle calls to ``m`` used to test one completion query."""
    counter = CountingMatroid(m)
    # the rank of M is fixed data for the query; compute it outside the count
    counter._rank_memo[counter.full] = m.rank
    completion_certificate(counter, counter.mask(s_labels), counter.mask(query))
    return counter.calls


@dataclass(frozen=True)
class CompletionWitness:
    base_bb: frozenset[str]
    base_hb: frozenset[str]
    base_bh: frozenset[str]


def completion_witness(m: Matroid, s_labels: Sequence[str], q_labels: Sequence[str],
                       candidate: Sequence[str]) -> CompletionWitness:
    """Three bases of ``m`` forcing ``candidate`` into the completion."""
    _check_partition(m, s_labels, q_labels)
    s_mask = m.mask(s_labels)
    query = m.mask(candidate)
    if popcount(query) != m.rank:
        raise PreconditionError("candidate has the wrong size for a base")
    cert = completion_certificate(m, s_mask, query)
    if cert is None:
        raise PreconditionError("candidate is not a base of the completion")
    q_mask = m.full & ~s_mask
    bb = cert
    hb = (query & s_mask) | (cert & q_mask)
    bh = (cert & s_mask) | (query & q_mask)
    for b in (bb, hb, bh):
        if popcount(b) != m.rank or not m.indep_mask(b):
            raise InvariantBreach("witness corner is not a base", witness=m.labels(b))
    return CompletionWitness(frozenset(m.labels(bb)), frozenset(m.labels(hb)), frozenset(m.labels(bh)))


def completion_closure(m: Matroid, s_labels: Sequence[str], q_labels: Sequence[str]) -> Matroid:
    """Repeat the completion step until the base family is complete."""
    current = materialize(completion(m, s_labels, q_labels))
    while not is_complete(current, s_labels, q_labels):
        current = materialize(completion(current, s_labels, q_labels))
    return current


def pseudo_identity(m: Matroid, q_labels: Sequence[str]) -> Matroid:
    """M_QQ' = M* ↔ (M)_{SQ'} on Q⊎Q'."""
    q_set = set(q_labels)
    q = [x for x in m.ground if x in q_set]
    return link(dual(m), relabel(m, prime_map(q, avoid=m.ground)))


# equivalence blocks


@dataclass(frozen=True)
class BlockPartition:
    """Blocks of side-parts of bases.  Tags: 'restriction', 'contraction', 'both', 'crossing'."""

    side: tuple[str, ...]
    blocks: frozenset[tuple[str, frozenset[frozenset[str]]]]

    def tagged(self, tag: str) -> list[frozenset[frozenset[str]]]:
        return [b for t, b in self.blocks if t == tag]

    def crossing(self) -> list[frozenset[frozenset[str]]]:
        return self.tagged("crossing")


def equivalence_classes(m: Matroid, side: Sequence[str]) -> BlockPartition:
    """Blocks of ``side``-parts of bases for a matroid complete w.r.t. {side, rest}."""
    rest = [x for x in m.ground if x not in set(side)]
    if not is_complete(m, side, rest):
        raise PreconditionError("equivalence classes need a complete matroid")
    other = [x for x in m.ground if x not in set(side)]
    # components are keyed by the requested side, so build the relation from that side
    rel = base_relation(m, side)
    side_mask = m.mask(side)
    top = m.rank_mask(side_mask)
    bottom = m.rank - m.rank_mask(m.mask(other))
    out = set()
    for xs, _ in _components(rel):
        size = popcount(next(iter(xs)))
        if size == top and size == bottom:
            tag = "both"
        elif size == top:
            tag = "restriction"
        elif size == bottom:
            tag = "contraction"
        else:
            tag = "crossing"
        out.add((tag, frozenset(frozenset(m.labels(x)) for x in xs)))
    return BlockPartition(tuple(side), frozenset(out))


def is_compatible(left: Matroid, right: Matroid) -> bool:
    """E_P(M*_SP) = E_P(M_PQ)."""
    inst = LinkInstance(left, right)
    p = inst.overlap
    if not is_complete(left, inst.left_only, p) or not is_complete(right, p, inst.right_only):
        raise PreconditionError("compatibility needs complete operands")
    return equivalence_classes(dual(left), p).blocks == equivalence_classes(right, p).blocks


def compose_compatible(left: Matroid, right: Matroid) -> Matroid:
    if not is_compatible(left, right):
        raise PreconditionError("operands are not compatible")
    inst = LinkInstance(left, right)
    result = link(left, right)
    if not is_complete(result, inst.left_only, inst.right_only):
        raise InvariantBreach("compatible composition is not complete")
    return result


def _refines(coarse: BlockPartition, fine: BlockPartition) -> bool:
    """Every block of ``coarse`` is a union of blocks of ``fine``."""
    fine_blocks = [b for _, b in fine.blocks]
    for _, block in coarse.blocks:
        covered = set()
        for b in fine_blocks:
            if b <= block:
                covered |= b
            elif b & block:
                return False
        if covered != set(block):
            return False
    return True


def invert_link(left: Matroid, composed: Matroid) -> Matroid:
    """Recover M_PQ as M*_SP ↔ M_SQ, after checking the block-refinement condition."""
    s = [x for x in left.ground if x in composed.index]
    p = [x for x in left.ground if x not in composed.index]
    if set(s) != set(composed.ground) - set(x for x in composed.ground if x not in left.index):
        raise PreconditionError("composed matroid must share exactly S with the left operand")
    candidate = link(dual(left), composed)
    q = [x for x in candidate.ground if x not in set(p)]
    candidate = reorder(candidate, p + q)
    if not is_complete(candidate, p, q):
        raise PreconditionError("recovered matroid is not complete; refinement condition fails")
    coarse = equivalence_classes(candidate, p)
    fine = equivalence_classes(dual(left), p)
    if not _refines(coarse, fine):
        raise PreconditionError("block refinement condition fails")
    return candidate


def decompose_complete(m: Matroid, s_labels: Sequence[str], q_labels: Sequence[str]) -> LinkInstance:
    """Minimal decomposition of a complete matroid through the pseudo-identity pair."""
    _check_partition(m, s_labels, q_labels)
    if not is_complete(m, s_labels, q_labels):
        raise PreconditionError("matroid is not complete with respect to the partition")
    q_set = set(q_labels)
    q = [x for x in m.ground if x in q_set]
    s = [x for x in m.ground if x not in q_set]
    mapping = prime_map(q, avoid=m.ground)
    swap = {**mapping, **{v: k for k, v in mapping.items()}}
    left = reorder(relabel(m, mapping), s + [mapping[x] for x in q])
    right = relabel(pseudo_identity(m, q), swap)
    right = reorder(right, [mapping[x] for x in q] + q)
    return conditional_minimize(left, right)


def multiport_decompose_complete(m: Matroid, s_labels: Sequence[str], q_labels: Sequence[str]) -> Multiport:
    _check_partition(m, s_labels, q_labels)
    if not is_complete(m, s_labels, q_labels):
        raise PreconditionError("matroid is not complete with respect to the partition")
    s_set, q_set = set(s_labels), set(q_labels)
    s = [x for x in m.ground if x in s_set]
    q = [x for x in m.ground if x in q_set]
    q_prime = prime_map(q, avoid=m.ground)
    s_prime = prime_map(s, avoid=list(m.ground) + list(q_prime.values()))
    left = reorder(relabel(m, q_prime), s + list(q_prime.values()))
    right = reorder(relabel(m, s_prime), list(s_prime.values()) + q)
    ports = reorder(relabel(dual(m), {**s_prime, **q_prime}), list(q_prime.values()) + list(s_prime.values()))
    return multiport_minimize(left, right, ports)


def side_connectivity(m: Matroid, s_labels: Sequence[str]) -> int:
    return connectivity(m, s_labels)


def shrink_ports(inst: LinkInstance, outer: Sequence[str], inner: Sequence[str]) -> LinkInstance:
    """Keep ports ``inner`` ⊆ ``outer`` ⊆ P: left is restricted to S⊎outer then
    contracted to S⊎inner; right is contracted to Q⊎outer then restricted to Q⊎inner."""
    s, q = inst.left_only, inst.right_only
    outer, inner = tuple(outer), tuple(inner)
    left = contract_to(restrict_to(inst.left, s + outer), s + inner)
    right = restrict_to(contract_to(inst.right, outer + q), inner + q)
    return LinkInstance(reorder(left, s + inner), reorder(right, inner + q))
