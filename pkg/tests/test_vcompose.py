from __future__ import annotations

import pytest
from hypothesis import given

from mforge.errors import PreconditionError
from mforge.fields import GF, QQ
from mforge.labels import prime_map
from mforge.vcompose import (
    CompositionPair,
    connectivity,
    decompose,
    min_overlap,
    minors_match,
    overlap_bound,
    pseudo_identity,
)
from mforge.vspace import (
    contains,
    contract,
    direct_sum,
    full_space,
    is_member,
    make_space,
    matched_compose,
    relabel,
    restrict,
    same_space,
    zero_space,
)
from support import rng_for, seeds, space_instance, space_pair

GF7 = GF(7)


def _split(v, rng):
    cut = rng.randint(1, len(v.columns) - 1)
    return list(v.columns[:cut]), list(v.columns[cut:])


def _space_with_split(seed, field=GF7, max_cols=8):
    rng = rng_for(seed)
    while True:
        rng2, v = space_instance(rng.randrange(2**32), field, max_cols)
        if len(v.columns) >= 2:
            return v, *_split(v, rng2)


class TestMinOverlap:
    @given(seeds)
    def test_preserves_composition_and_reaches_bound(self, seed):
        left, right = space_pair(seed, GF7, min_overlap=2)
        pair = CompositionPair(left, right)
        out = min_overlap(pair)
        assert same_space(out.compose(), pair.compose())
        assert len(out.overlap) == overlap_bound(pair)
        assert set(out.overlap) <= set(pair.overlap)

    def test_unconstrained_overlap(self):
        v = make_space(GF7, [[1, 2]], ["s1", "s2"])
        w = make_space(GF7, [[3, 1]], ["q1", "q2"])
        p = ["p1", "p2"]
        pair = CompositionPair(direct_sum(v, full_space(GF7, p)), direct_sum(full_space(GF7, p), w))
        out = min_overlap(pair)
        assert same_space(out.compose(), direct_sum(v, w))
        # sum and intersection are both V ⊕ F_P ⊕ W, so every overlap column goes
        assert len(out.overlap) == overlap_bound(pair) == 0

    def test_already_minimal(self):
        cols_l = ["s1", "s2", "p1", "p2"]
        cols_r = ["p1", "p2", "q1", "q2"]
        left = make_space(GF7, [[1, 0, 1, 0], [0, 1, 0, 1]], cols_l)
        right = make_space(GF7, [[1, 0, 1, 0], [0, 1, 0, 1]], cols_r)
        pair = CompositionPair(left, right)
        assert minors_match(pair)
        out = min_overlap(pair)
        assert out.overlap == ("p1", "p2")

    @given(seeds)
    def test_matching_minors_reach_connectivity(self, seed):
        v, s, q = _space_with_split(seed)
        mapping = prime_map(q, avoid=v.columns)
        pair = CompositionPair(relabel(v, mapping), pseudo_identity(v, q))
        assert minors_match(pair)
        out = min_overlap(pair)
        assert len(out.overlap) == connectivity(pair.compose(), s)


class TestSizeIdentities:
    @given(seeds)
    def test_inclusions(self, seed):
        left, right = space_pair(seed)
        pair = CompositionPair(left, right)
        c = pair.compose()
        s, q = list(pair.left_only), list(pair.right_only)
        assert contains(restrict(left, s), restrict(c, s))
        assert contains(contract(c, s), contract(left, s))
        assert contains(restrict(right, q), restrict(c, q))
        assert contains(contract(c, q), contract(right, q))

    @staticmethod
    def _four_equalities(pair):
        c = pair.compose()
        left, right = pair.left, pair.right
        s, q = list(pair.left_only), list(pair.right_only)
        return (same_space(restrict(c, s), restrict(left, s)) and same_space(contract(c, s), contract(left, s))
                and same_space(restrict(c, q), restrict(right, q))
                and same_space(contract(c, q), contract(right, q)))

    @given(seeds)
    def test_matching_minors_force_equalities(self, seed):
        rng = rng_for(seed)
        if rng.random() < 0.5:
            v, s, q = _space_with_split(seed, GF(3), max_cols=6)
            pair = CompositionPair(relabel(v, prime_map(q, avoid=v.columns)), pseudo_identity(v, q))
        else:
            pair = CompositionPair(*space_pair(seed, GF(3), max_cols=6))
        if minors_match(pair):
            assert self._four_equalities(pair)
            lam = connectivity(pair.left, list(pair.left_only))
            assert lam == connectivity(pair.compose(), list(pair.left_only))

    def test_equalities_without_matching_minors(self):
        # the converse fails: all four equalities hold while the overlap restrictions are 0 and F
        left = make_space(GF(3), [[1, 0]], ["s1", "p1"])
        right = full_space(GF(3), ["p1", "q1"])
        pair = CompositionPair(left, right)
        assert self._four_equalities(pair)
        assert not minors_match(pair)
        assert connectivity(left, ["s1"]) == connectivity(pair.compose(), ["s1"]) == 0


class TestPseudoIdentity:
    def test_free_on_s(self):
        v = direct_sum(full_space(GF7, ["s1"]), zero_space(GF7, ["q1", "q2"]))
        assert pseudo_identity(v, ["q1", "q2"]) == zero_space(GF7, ["q1", "q2", "q1'", "q2'"])

    def test_free_on_q(self):
        v = direct_sum(zero_space(GF7, ["s1"]), full_space(GF7, ["q1", "q2"]))
        assert pseudo_identity(v, ["q1", "q2"]) == full_space(GF7, ["q1", "q2", "q1'", "q2'"])

    @given(seeds)
    def test_pseudo_identity_properties(self, seed):
        v, s, q = _space_with_split(seed)
        vqq = pseudo_identity(v, q)
        mapping = prime_map(q, avoid=v.columns)
        swap = {**mapping, **{b: a for a, b in mapping.items()}}
        # symmetric under swapping Q and Q'
        assert same_space(relabel(vqq, swap), vqq)
        # every f_Q of the restriction appears paired with its own copy
        for row in restrict(vqq, q).rows:
            assert is_member(vqq, list(row) + list(row))
        # restriction and contraction on Q agree with V_SQ
        assert same_space(restrict(vqq, q), restrict(v, q))
        assert same_space(contract(vqq, q), contract(v, q))
        # composing V_SQ with the pseudo-identity yields the primed copy
        assert same_space(matched_compose(v, vqq), relabel(v, mapping))

    def test_rejects_unknown_q(self):
        with pytest.raises(PreconditionError):
            pseudo_identity(full_space(GF7, ["a"]), ["z"])


class TestDecompose:
    def test_direct_sum_needs_no_overlap(self):
        v = direct_sum(make_space(GF7, [[1, 2]], ["s1", "s2"]), make_space(GF7, [[1, 1]], ["q1", "q2"]))
        out = decompose(v, ["s1", "s2"], ["q1", "q2"])
        assert out.overlap == ()
        assert same_space(out.compose(), v)

    def test_all_ones_vector_needs_one(self):
        cols = ["s1", "s2", "q1", "q2", "q3"]
        v = make_space(QQ, [[1] * 5], cols)
        assert connectivity(v, cols[:2]) == 1
        out = decompose(v, cols[:2], cols[2:])
        assert len(out.overlap) == 1
        assert same_space(out.compose(), v)

    @given(seeds)
    def test_round_trip_and_size(self, seed):
        v, s, q = _space_with_split(seed)
        out = decompose(v, s, q)
        assert same_space(out.compose(), v)
        assert len(out.overlap) == connectivity(v, s) == connectivity(v, q)

    def test_partition_required(self):
        v = full_space(GF7, ["a", "b", "c"])
        with pytest.raises(PreconditionError):
            decompose(v, ["a"], ["b"])
