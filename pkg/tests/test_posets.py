import itertools
import random

import pytest
from hypothesis import given, settings, strategies as st

from orderlab.errors import CycleError, DomainError
from orderlab.posets import (OrderMap, Poset, RelStructure, converse,
                             enumerate_poset_isotypes, is_order_embedding,
                             linear_extension, longest_chain, make_poset)


def test_make_poset_closure_of_chain():
    p = make_poset({0, 1, 2}, {(0, 1), (1, 2)})
    assert sorted(p.pairs()) == [(0, 1), (0, 2), (1, 2)]


def test_make_poset_antichain():
    p = make_poset({0, 1}, set())
    assert p.pairs() == []


def test_make_poset_two_cycle_raises():
    with pytest.raises(CycleError):
        make_poset({0, 1}, {(0, 1), (1, 0)})


def test_make_poset_unknown_element_raises():
    with pytest.raises(DomainError):
        make_poset({0, 1}, {(0, 7)})


def random_dag_edges(rng, n, density=0.4):
    order = list(range(n))
    rng.shuffle(order)
    return [(order[i], order[j]) for i in range(n) for j in range(i + 1, n)
            if rng.random() < density]


def test_closure_invariants_random():
    rng = random.Random(7)
    for _ in range(300):
        n = rng.randint(0, 9)
        p = make_poset(range(n), random_dag_edges(rng, n))
        m = p.matrix()
        for i in range(n):
            assert not m[i][i]
            for j in range(n):
                assert not (m[i][j] and m[j][i])
                for k in range(n):
                    if m[i][j] and m[j][k]:
                        assert m[i][k]


@settings(deadline=None, max_examples=60)
@given(st.integers(0, 6), st.integers(0, 2 ** 15 - 1))
def test_converse_involution(n, mask):
    pool = [(i, j) for i in range(n) for j in range(i + 1, n)]
    edges = [pool[b] for b in range(len(pool)) if mask >> b & 1]
    p = make_poset(range(n), edges)
    assert converse(converse(p)) == p
    for a, b in p.pairs():
        assert converse(p).lt(b, a)


def brute_longest_chain_len(p):
    best = 0
    elems = list(p.elements)
    for r in range(len(elems) + 1):
        for seq in itertools.permutations(elems, r):
            if all(p.lt(seq[i], seq[i + 1]) for i in range(r - 1)):
                best = max(best, r)
    return best


def test_longest_chain_examples():
    chain3 = make_poset({0, 1, 2}, {(0, 1), (1, 2)})
    assert longest_chain(chain3) == [0, 1, 2]
    anti = make_poset({0, 1, 2}, set())
    assert len(longest_chain(anti)) == 1


def test_longest_chain_vs_brute_force():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(1, 6)
        p = make_poset(range(n), random_dag_edges(rng, n))
        got = longest_chain(p)
        assert len(got) == brute_longest_chain_len(p)
        assert all(p.lt(a, b) for a, b in zip(got, got[1:]))
    for n in (7, 8):
        p = make_poset(range(n), random_dag_edges(rng, n, 0.5))
        assert len(longest_chain(p)) == brute_longest_chain_len(p)


def test_longest_chain_lex_tiebreak():
    # two maximum chains: [0, 2] and [1, 2]; the lexicographically least wins
    p = make_poset({0, 1, 2}, {(0, 2), (1, 2)})
    assert longest_chain(p) == [0, 2]


def test_longest_chain_beyond_recursion_limit():
    n = 1500
    p = make_poset(range(n), [(i, i + 1) for i in range(n - 1)])
    assert longest_chain(p) == list(range(n))


def test_is_order_embedding_identity_and_failures():
    p = make_poset({0, 1}, {(0, 1)})
    assert is_order_embedding(OrderMap(p, {0: 0, 1: 1}), p, p)
    anti = make_poset({0, 1}, set())
    assert not is_order_embedding(OrderMap(anti, {0: 0, 1: 0}), anti, anti)
    assert not is_order_embedding(OrderMap(p, {0: 0, 1: 1}), p, anti)
    with pytest.raises(DomainError):
        is_order_embedding(OrderMap(p, {0: 0}), p, p)


def test_rel_structure_asymmetry():
    from orderlab.errors import AsymmetryError
    with pytest.raises(AsymmetryError):
        RelStructure.from_pairs([0, 1], [(0, 1), (1, 0)])
    with pytest.raises(AsymmetryError):
        RelStructure.from_pairs([0], [(0, 0)])
    s = RelStructure.from_pairs([0, 1, 2], [(0, 1), (2, 1)])
    assert s.related(0, 1) and not s.related(1, 0)


def test_linear_extension_respects_forced_pair():
    p = make_poset(range(4), {(0, 1)})
    order = linear_extension(p, before=(3, 2))
    assert order.index(3) < order.index(2)
    assert order.index(0) < order.index(1)
    with pytest.raises(CycleError):
        linear_extension(p, before=(1, 0))


def test_isotype_counts_match_known_sequence():
    assert [len(enumerate_poset_isotypes(n)) for n in range(7)] == \
        [1, 1, 2, 5, 16, 63, 318]


def test_isotypes_pairwise_nonisomorphic_small():
    types = enumerate_poset_isotypes(4)
    mats = set()
    for p in types:
        canon = min(
            tuple(tuple(p.matrix()[i][j] for j in perm) for i in perm)
            for perm in itertools.permutations(range(4)))
        mats.add(canon)
    assert len(mats) == len(types)


def test_json_round_trip():
    p = make_poset(range(5), {(0, 3), (3, 4), (1, 2)})
    again = Poset.from_json_dict(p.to_json_dict())
    assert again == p
