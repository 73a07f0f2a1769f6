import itertools
import random

import pytest

from orderlab.checks import (REM0_FIXTURE, random_depletion_instance,
                             search_strictness_witness)
from orderlab.depletion import (DepletionInstance, depletion_order,
                                depletion_rel, find_walk, maximal_star_set,
                                restrict_walk, star_condition, verify_walk)
from orderlab.errors import (IndexLabelError, LevelError, MembershipError)
from orderlab.posets import make_poset


def chain_instance():
    order = make_poset({0, 1, 2}, {(0, 1), (1, 2)})
    return DepletionInstance([0, 1, 2], [], {0: [0], 1: [1], 2: [2]}, order)


def blocked_instance():
    # ambient 0 <= 2, middle fiber unrelated to both
    order = make_poset({0, 1, 2}, {(0, 2)})
    return DepletionInstance([0, 1, 2], [], {0: [0], 1: [1], 2: [2]}, order)


def test_instance_validation():
    order = make_poset({0, 1}, set())
    with pytest.raises(IndexLabelError):
        DepletionInstance([0], [], {0: [0, 1]}, order)
    with pytest.raises(MembershipError):
        DepletionInstance([0, 1], [0], {0: [0], 1: [1]}, order)  # 0 twice
    with pytest.raises(MembershipError):
        DepletionInstance([0, 1], [], {0: [0], 1: []}, order)  # 1 uncovered


def test_find_walk_two_levels_is_the_pair():
    inst = blocked_instance()
    w = find_walk(inst, (0, 2), 0, 2)
    assert w is not None and w.steps == {0: 0, 2: 2}
    assert verify_walk(inst, w)


def test_find_walk_three_levels_and_blocked_middle():
    inst = chain_instance()
    w = find_walk(inst, (0, 1, 2), 0, 2)
    assert w is not None and w.direction == "ascending"
    assert [w.steps[l] for l in (0, 1, 2)] == [0, 1, 2]
    assert find_walk(blocked_instance(), (0, 1, 2), 0, 2) is None


def test_find_walk_unreachable_pair():
    order = make_poset({0, 1}, set())
    inst = DepletionInstance([0, 1], [], {0: [0], 1: [1]}, order)
    assert find_walk(inst, (0, 1), 0, 1) is None


def test_find_walk_level_error():
    inst = chain_instance()
    with pytest.raises(LevelError):
        find_walk(inst, (0, 1, 2), 1, 2)  # x not in the extreme fiber


def test_descending_walk():
    order = make_poset({0, 1, 2}, {(2, 1), (1, 0)})  # decreasing up the levels
    inst = DepletionInstance([0, 1, 2], [], {0: [0], 1: [1], 2: [2]}, order)
    w = find_walk(inst, (0, 1, 2), 2, 0)
    assert w is not None and w.direction == "descending"
    assert verify_walk(inst, w)
    assert depletion_rel(inst, (0, 1, 2), 2, 0)


def test_depletion_rel_reflexive_and_membership():
    inst = chain_instance()
    for x in (0, 1, 2):
        assert depletion_rel(inst, (0, 1, 2), x, x)
    with pytest.raises(MembershipError):
        depletion_rel(inst, (0, 1), 2, 0)  # 2 sits in a fiber outside s
    with pytest.raises(IndexLabelError):
        depletion_rel(inst, (0,), 0, 0)


def test_two_label_depletion_is_the_restriction():
    rng = random.Random(2)
    for _ in range(200):
        inst = random_depletion_instance(rng, 8, 4)
        s = tuple(sorted(rng.sample(inst.labels, 2)))
        dom = sorted(inst.domain(s))
        for x in dom:
            for y in dom:
                assert depletion_rel(inst, s, x, y) == inst.order.leq(x, y)


def test_core_interpolant():
    order = make_poset({0, 1, 9}, {(0, 9), (9, 1)})
    inst = DepletionInstance([0, 5], [9], {0: [0], 5: [1]}, order)
    assert depletion_rel(inst, (0, 5), 0, 1)


def test_singleton_chain_through_every_level():
    # singleton fibers forming a chain hitting each level: the depleted
    # order equals the ambient one on the chain
    inst = chain_instance()
    dep = depletion_order(inst, (0, 1, 2))
    assert sorted(dep.pairs()) == sorted(inst.order.pairs())


def test_strictness_fixture_and_search_agree():
    inst = DepletionInstance.from_json_dict(REM0_FIXTURE)
    assert depletion_rel(inst, (0, 2), 0, 2)
    assert not depletion_rel(inst, (0, 1, 2), 0, 2)
    found = search_strictness_witness()
    assert found is not None
    inst2, sub, (x, y) = found
    assert depletion_rel(inst2, sub, x, y)
    assert not depletion_rel(inst2, tuple(inst2.labels), x, y)


def test_depletion_order_contained_and_valid():
    rng = random.Random(4)
    for _ in range(300):
        inst = random_depletion_instance(rng, 10, 5)
        k = rng.randint(2, len(inst.labels))
        s = tuple(sorted(rng.sample(inst.labels, k)))
        dep = depletion_order(inst, s)  # constructor validates order axioms
        for a, b in dep.pairs():
            assert inst.order.leq(a, b)


def test_shrink_monotonicity_and_convex_agreement():
    rng = random.Random(6)
    for _ in range(300):
        inst = random_depletion_instance(rng, 9, 5)
        kt = rng.randint(2, len(inst.labels))
        t = tuple(sorted(rng.sample(inst.labels, kt)))
        ks = rng.randint(2, kt)
        s = tuple(sorted(rng.sample(t, ks)))
        dom = sorted(inst.domain(s))
        for x in dom:
            for y in dom:
                if depletion_rel(inst, t, x, y):
                    assert depletion_rel(inst, s, x, y)
        lo = rng.randrange(len(t))
        hi = rng.randrange(lo, len(t))
        conv = t[lo:hi + 1]
        if len(conv) >= 2:
            for x in sorted(inst.domain(conv)):
                for y in sorted(inst.domain(conv)):
                    assert depletion_rel(inst, conv, x, y) == \
                        depletion_rel(inst, t, x, y)


def test_walk_restriction_stays_a_walk():
    rng = random.Random(8)
    done = 0
    while done < 60:
        inst = random_depletion_instance(rng, 10, 5)
        t = tuple(inst.labels)
        lows = sorted(inst.fibers[t[0]])
        highs = sorted(inst.fibers[t[-1]])
        for x in lows:
            for y in highs:
                try:
                    w = find_walk(inst, t, x, y)
                except LevelError:
                    continue
                if w is None:
                    continue
                done += 1
                for ks in range(2, len(t)):
                    for mid in itertools.combinations(t[1:-1], ks - 2):
                        s = (t[0],) + mid + (t[-1],)
                        assert verify_walk(inst, restrict_walk(w, s))


def test_star_condition_examples():
    # adjacent labels with a related pair: the pair is itself a walk
    order = make_poset({0, 1}, {(0, 1)})
    inst = DepletionInstance([3, 7], [], {3: [0], 7: [1]}, order)
    holds, wit = star_condition(inst, 3, 7)
    assert not holds and wit is None
    holds2, wit2 = star_condition(blocked_instance(), 0, 2)
    assert holds2 and wit2 == (0, 1, 2)
    with pytest.raises(IndexLabelError):
        star_condition(inst, 3, 3)


def test_star_full_interval_equals_exhaustive():
    rng = random.Random(10)
    for _ in range(150):
        inst = random_depletion_instance(rng, 9, 6)
        for i, a in enumerate(inst.labels):
            for b in inst.labels[i + 1:]:
                fast, _ = star_condition(inst, a, b)
                slow, _ = star_condition(inst, a, b, exhaustive=True)
                assert fast == slow


def test_maximal_star_set_is_maximal():
    rng = random.Random(12)
    for _ in range(150):
        inst = random_depletion_instance(rng, 9, 5)
        chosen = maximal_star_set(inst)
        assert chosen[0] == inst.labels[0]
        for a in chosen:
            for b in chosen:
                if a != b:
                    assert star_condition(inst, a, b)[0]
        for lab in inst.labels:
            if lab in chosen:
                continue
            assert any(not star_condition(inst, lab, c)[0]
                       for c in chosen)


def test_maximal_star_set_extremes():
    # everything unrelated: no walks at all, every label joins
    order = make_poset({0, 1, 2}, set())
    inst = DepletionInstance([0, 1, 2], [], {0: [0], 1: [1], 2: [2]}, order)
    assert maximal_star_set(inst) == (0, 1, 2)
    # adjacent fibers all linked: nothing beyond the first label
    order2 = make_poset({0, 1, 2}, {(0, 1), (1, 2)})
    inst2 = DepletionInstance([0, 1, 2], [], {0: [0], 1: [1], 2: [2]}, order2)
    assert maximal_star_set(inst2) == (0,)


def test_json_round_trip():
    inst = DepletionInstance.from_json_dict(REM0_FIXTURE)
    assert inst.to_json_dict() == {
        "I": [0, 1, 2], "A": [], "F": {"0": [0], "1": [1], "2": [2]},
        "edges": [[0, 2]]}
