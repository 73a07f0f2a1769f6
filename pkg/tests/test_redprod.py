import itertools
import random

import pytest

from orderlab.errors import ArityError, BudgetError, FilterError, FormulaError
from orderlab.fol import FiniteStructure, linear_order_structure, parse_formula
from orderlab.redprod import (FilterFamily, atomic_los_check, longest_op_chain,
                              reduced_product, threshold_rel_product)


def rel_factor(edges, size=2):
    return FiniteStructure(range(size), {"R": (2, edges)})


F_EDGE = rel_factor([(0, 1)])
F_NONE = rel_factor([])


def test_filter_validation():
    with pytest.raises(FilterError):
        FilterFamily(2, [frozenset()])  # empty set present
    with pytest.raises(FilterError):
        FilterFamily(2, [frozenset({0})])  # missing the ground set
    with pytest.raises(FilterError):
        FilterFamily(3, [frozenset({0, 1, 2}), frozenset({0, 1}),
                         frozenset({1, 2})])  # not meet-closed
    filt = FilterFamily.principal(3, {1})
    assert frozenset({1}) in filt and frozenset({0, 2}) not in filt
    assert filt.is_ultra and filt.core == frozenset({1})
    assert not FilterFamily.principal(3, {0, 1}).is_ultra
    with pytest.raises(FilterError):
        FilterFamily.principal(3, set())


def test_trivial_filter_full_product_semantics():
    rp = reduced_product([F_EDGE] * 3, FilterFamily.trivial(3))
    assert rp.holds("R", [(0, 0, 0), (1, 1, 1)])
    rp2 = reduced_product([F_EDGE, F_EDGE, F_NONE], FilterFamily.trivial(3))
    assert not rp2.holds("R", [(0, 0, 0), (1, 1, 1)])


def test_principal_ultrafilter_collapse_isomorphism():
    rng = random.Random(0)
    for _ in range(60):
        k = rng.randint(2, 4)
        point = rng.randrange(k)
        size = rng.randint(1, 3)
        factors = [FiniteStructure(
            range(size),
            {"R": (2, [t for t in itertools.product(range(size), repeat=2)
                       if rng.random() < 0.4])})
            for _ in range(k)]
        rp = reduced_product(factors, FilterFamily.principal_ultrafilter(k, point))
        target = factors[point]
        # classes correspond exactly to the elements of the chosen factor
        assert len(rp.class_reps) == len(target)
        for u, v in itertools.product(target.universe, repeat=2):
            vec_u = tuple(rng.choice(f.universe) if n != point else u
                          for n, f in enumerate(factors))
            vec_v = tuple(rng.choice(f.universe) if n != point else v
                          for n, f in enumerate(factors))
            assert rp.holds("R", [vec_u, vec_v]) == target.holds("R", (u, v))


def test_generated_filter_semantics():
    rp = reduced_product([F_EDGE, F_EDGE, F_NONE], FilterFamily.principal(3, {0, 1}))
    assert rp.holds("R", [(0, 0, 0), (1, 1, 1)])
    rp2 = reduced_product([F_EDGE, F_NONE, F_EDGE], FilterFamily.principal(3, {0, 1}))
    assert not rp2.holds("R", [(0, 0, 0), (1, 1, 1)])


def test_equivalence_is_congruence():
    rng = random.Random(1)
    for _ in range(100):
        k = rng.randint(2, 4)
        size = rng.randint(1, 3)
        factors = [FiniteStructure(
            range(size),
            {"R": (2, [t for t in itertools.product(range(size), repeat=2)
                       if rng.random() < 0.4])})
            for _ in range(k)]
        filt = FilterFamily.principal(k, rng.sample(range(k),
                                                    rng.randint(1, k)))
        rp = reduced_product(factors, filt)
        core = filt.core
        for v in rp.vectors:
            # modifying coordinates off the core keeps the class
            w = tuple(rng.randrange(size) if n not in core else v[n]
                      for n in range(k))
            assert rp.same_class(v, w)
            u = rng.choice(rp.vectors)
            assert rp.holds("R", [v, u]) == rp.holds("R", [w, u])


def test_atomic_los_examples():
    rp = reduced_product([F_EDGE] * 3, FilterFamily.trivial(3))
    ok, wit = atomic_los_check(rp, parse_formula("(R x y)"),
                               [(0, 0, 0), (1, 1, 1)])
    assert ok and wit == frozenset({0, 1, 2})
    # satisfaction exactly on a non-filter set: the product does not model it
    rp2 = reduced_product([F_EDGE, F_NONE, F_NONE], FilterFamily.trivial(3))
    assert not rp2.holds("R", [(0, 0, 0), (1, 1, 1)])
    ok2, wit2 = atomic_los_check(rp2, parse_formula("(R x y)"),
                                 [(0, 0, 0), (1, 1, 1)])
    assert ok2 and wit2 == frozenset({0})
    with pytest.raises(FormulaError):
        atomic_los_check(rp, parse_formula("(and (R x y) (R y x))"),
                         [(0, 0, 0), (1, 1, 1)])


def test_atomic_los_random_equivalence():
    rng = random.Random(2)
    for _ in range(300):
        k = rng.randint(2, 4)
        size = 2
        factors = [rel_factor([t for t in itertools.product(range(size), repeat=2)
                               if rng.random() < 0.4]) for _ in range(k)]
        filt = FilterFamily.principal(k, rng.sample(range(k), rng.randint(1, k)))
        rp = reduced_product(factors, filt)
        u = rng.choice(rp.vectors)
        v = rng.choice(rp.vectors)
        ok, _ = atomic_los_check(rp, parse_formula("(R x y)"), [u, v])
        assert ok


def test_negated_atomic_boundary():
    """Complements decide membership only in ultrafilters: with core {0, 1}
    and the relation holding exactly at coordinate 0, the product models the
    negation while the negation's satisfaction set stays outside the filter.
    """
    factors = [F_EDGE, F_NONE, F_NONE]
    non_ultra = FilterFamily.principal(3, {0, 1})
    rp = reduced_product(factors, non_ultra)
    neg = parse_formula("(not (R x y))")
    ok, wit = atomic_los_check(rp, neg, [(0, 0, 0), (1, 1, 1)])
    assert not ok and wit == frozenset({1, 2})
    # over any ultrafilter the same literal double-checks cleanly
    for point in range(3):
        rpu = reduced_product(factors, FilterFamily.principal_ultrafilter(3, point))
        oku, _ = atomic_los_check(rpu, neg, [(0, 0, 0), (1, 1, 1)])
        assert oku


def test_threshold_rel_product():
    phi = parse_formula("(R x0 y0)")
    facs = [linear_order_structure(4) for _ in range(5)]
    a = [(0,)] * 5
    b = [(1,)] * 5
    assert threshold_rel_product(facs, phi, a, b, 0)
    assert threshold_rel_product(facs, phi, a, b, 5)  # vacuous
    b2 = [(1,), (1,), (0,), (1,), (1,)]
    assert not threshold_rel_product(facs, phi, a, b2, 2)
    assert threshold_rel_product(facs, phi, a, b2, 3)
    with pytest.raises(ArityError):
        threshold_rel_product(facs, phi, a[:3], b, 0)


def brute_chain_len(s, phi):
    xs = [(u,) for u in s.universe]
    best = 1 if xs else 0
    from orderlab.fol import eval_pair
    for r in range(2, len(xs) + 1):
        for seq in itertools.permutations(xs, r):
            if all(eval_pair(s, phi, seq[i], seq[j])
                   and not eval_pair(s, phi, seq[j], seq[i])
                   for i in range(r) for j in range(i + 1, r)):
                best = max(best, r)
    return best


def test_longest_op_chain_examples():
    phi = parse_formula("(R x0 y0)")
    assert len(longest_op_chain(linear_order_structure(6), phi)) == 6
    empty_rel = FiniteStructure([0, 1, 2], {"R": (2, [])})
    assert len(longest_op_chain(empty_rel, phi)) == 1


def test_longest_op_chain_is_a_chain():
    phi = parse_formula("(R x0 y0)")
    rng = random.Random(3)
    from orderlab.fol import eval_pair
    for _ in range(40):
        n = 6
        edges = []
        for i in range(n):
            for j in range(i + 1, n):
                edges.append((i, j) if rng.random() < 0.5 else (j, i))
        t = FiniteStructure(range(n), {"R": (2, edges)})
        chain = longest_op_chain(t, phi)
        assert len(chain) == brute_chain_len(t, phi)
        for i in range(len(chain)):
            for j in range(i + 1, len(chain)):
                assert eval_pair(t, phi, chain[i], chain[j])
                assert not eval_pair(t, phi, chain[j], chain[i])


def test_longest_op_chain_arity_two_tuples():
    phi = parse_formula("(and (R x0 y0) (R x1 y1))")
    lo = linear_order_structure(3)
    chain = longest_op_chain(lo, phi)
    # both coordinates must strictly grow at every step, so pairs over a
    # 3-chain allow exactly three of them
    assert len(chain) == 3
    assert all(len(t) == 2 for t in chain)
    from orderlab.fol import eval_pair
    for i in range(len(chain)):
        for j in range(i + 1, len(chain)):
            assert eval_pair(lo, phi, chain[i], chain[j])
            assert not eval_pair(lo, phi, chain[j], chain[i])


def test_long_transitive_chain_iterative():
    # chains past the interpreter recursion limit must still resolve
    lo = linear_order_structure(1200)
    assert len(longest_op_chain(lo, parse_formula("(R x0 y0)"))) == 1200


def test_budget_error():
    big = FiniteStructure(range(10001), {"R": (2, [])})
    with pytest.raises(BudgetError):
        longest_op_chain(big, parse_formula("(R x0 y0)"))
