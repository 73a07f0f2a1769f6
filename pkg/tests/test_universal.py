import itertools
import random

import pytest

from orderlab.errors import AsymmetryError, DisjointnessError
from orderlab.posets import RelStructure
from orderlab.universal import (Rel, SparseNat, as_nat, embed_structure, rel,
                                ternary_digit, verify_embedding, witness,
                                witness_above)


def test_rel_frozen_examples():
    assert rel(5, 5) is Rel.UNRELATED
    # 16 = 1 + 2*3 + 9: digits 1, 2, 1
    assert rel(0, 16) is Rel.FORWARD
    assert rel(1, 16) is Rel.BACKWARD
    assert rel(2, 16) is Rel.FORWARD
    assert rel(1, 9) is Rel.UNRELATED
    assert rel(16, 0) is Rel.BACKWARD  # swapped arguments flip the direction


def test_rel_asymmetric_irreflexive_sampled():
    rng = random.Random(5)
    for _ in range(3000):
        m = rng.randrange(3 ** 12)
        n = rng.randrange(3 ** 12)
        r = rel(m, n)
        back = rel(n, m)
        if m == n:
            assert r is Rel.UNRELATED
        elif r is Rel.FORWARD:
            assert back is Rel.BACKWARD
        elif r is Rel.BACKWARD:
            assert back is Rel.FORWARD
        else:
            assert back is Rel.UNRELATED


def test_witness_frozen_examples():
    assert witness({0, 2}, {1}) == 16
    assert witness({0}, set()) == 1
    assert witness(set(), {0}) == 2
    with pytest.raises(DisjointnessError):
        witness({1, 2}, {2})


def test_witness_above_frozen_examples():
    assert witness_above({0}, set(), 9) == 1 + 3 ** 10
    assert witness_above({0, 2}, {1}, 0) == 16 + 3 ** 3
    n = witness_above({0, 2}, {1}, 0)
    assert rel(0, n) is Rel.FORWARD
    assert rel(1, n) is Rel.BACKWARD
    assert rel(2, n) is Rel.FORWARD
    assert n > 0


def test_witness_property_small_sweep():
    base = range(9)
    for k in range(1, 4):
        for members in itertools.combinations(base, k):
            for pick in range(1 << k):
                f_set = {m for i, m in enumerate(members) if pick >> i & 1}
                g_set = set(members) - f_set
                n = witness(f_set, g_set)
                for m in base:
                    if m in f_set:
                        assert rel(m, n) is Rel.FORWARD
                    elif m in g_set:
                        assert rel(m, n) is Rel.BACKWARD
                    elif m < n:
                        assert rel(m, n) is Rel.UNRELATED


def test_sparse_nat_agrees_with_ints():
    rng = random.Random(9)
    for _ in range(500):
        a = rng.randrange(3 ** 10)
        b = rng.randrange(3 ** 10)
        sa, sb = as_nat(a), as_nat(b)
        assert (sa < sb) == (a < b)
        assert (sa == sb) == (a == b)
        assert int(sa) == a
        for pos in range(11):
            assert sa.digit_at(pos) == (a // 3 ** pos) % 3
        assert int(sa.successor()) == a + 1
        assert int(sa.add_power(12)) == a + 3 ** 12


def test_ternary_digit_large_position():
    assert ternary_digit(10, 100) == 0
    assert ternary_digit(3 ** 40 + 2 * 3 ** 5, 40) == 1
    assert ternary_digit(3 ** 40 + 2 * 3 ** 5, 5) == 2


def random_asym_structure(rng, n, density=0.3):
    pairs = []
    seen = set()
    for i in range(n):
        for j in range(n):
            if i != j and (j, i) not in seen and rng.random() < density:
                pairs.append((i, j))
                seen.add((i, j))
    return RelStructure.from_pairs(range(n), pairs)


def test_embed_singleton_and_two_chain():
    s = RelStructure.from_pairs([0], [])
    om = embed_structure(s)
    assert verify_embedding(s, om)
    s2 = RelStructure.from_pairs([0, 1], [(0, 1)])
    om2 = embed_structure(s2)
    assert rel(om2.images[0], om2.images[1]) is Rel.FORWARD
    assert verify_embedding(s2, om2)


def test_embed_random_roundtrip_thousand_trials():
    rng = random.Random(17)
    for _ in range(1000):
        s = random_asym_structure(rng, rng.randint(1, 8))
        assert verify_embedding(s, embed_structure(s))


def test_embed_full_chain_tower_values():
    # a chain forces digit positions at the previous images, so the values
    # grow like a tower of 3; the sparse support keeps them exact
    s = RelStructure.from_pairs(range(8), [(i, j) for i in range(8)
                                           for j in range(i + 1, 8)])
    om = embed_structure(s)
    assert verify_embedding(s, om)
    assert isinstance(om.images[7], SparseNat)
    with pytest.raises(OverflowError):
        int(om.images[7])


def test_images_strictly_increasing():
    rng = random.Random(23)
    for _ in range(50):
        s = random_asym_structure(rng, 6)
        om = embed_structure(s)
        imgs = [as_nat(om.images[x]) for x in s.universe]
        assert all(a < b for a, b in zip(imgs, imgs[1:]))


def test_structure_asymmetry_error():
    with pytest.raises(AsymmetryError):
        RelStructure.from_pairs([0, 1], [(0, 1), (1, 0)])
