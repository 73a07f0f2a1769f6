import random

import pytest
from hypothesis import given, settings, strategies as st

from orderlab.errors import CanonicalityError, DepthError
from orderlab.tiepoint import (Clopen, EMPTY, FULL, Point, bulk_probe_check,
                               canonical_antichain, clopen_to_mask, complement,
                               contains, decomposition_invariant_failures,
                               expansion_axiom_check, join, leq, mask_to_clopen,
                               meet, parse_point, tie_decompose,
                               true_tie_check, TieDecomposition)


# --- independent oracle: clopens of depth <= d as sets of depth-d cells -----

def cells_oracle(u, d):
    out = set()
    for w in u.antichain:
        assert len(w) <= d
        span = d - len(w)
        for i in range(1 << span):
            out.add(w + format(i, f"0{span}b") if span else w)
    return out


def test_canonicalization():
    assert canonical_antichain(["00", "01"]) == frozenset({"0"})
    assert canonical_antichain(["0", "00"]) == frozenset({"0"})
    assert canonical_antichain(["0", "1"]) == frozenset({""})
    assert canonical_antichain(["010", "011", "00", "1"]) == frozenset({""})
    assert canonical_antichain([]) == frozenset()
    with pytest.raises(CanonicalityError):
        Clopen.from_strings(["02"])
    with pytest.raises(CanonicalityError):
        Clopen(frozenset({"0", "00"}))
    with pytest.raises(CanonicalityError):
        Clopen(frozenset({"00", "01"}))


def test_ba_ops_examples():
    u = Clopen.from_strings(["01"])
    assert meet(u, complement(u)) == EMPTY
    assert join(Clopen.from_strings(["0"]), Clopen.from_strings(["1"])) == FULL
    assert leq(Clopen.from_strings(["00"]), Clopen.from_strings(["0"]))
    assert not leq(Clopen.from_strings(["0"]), Clopen.from_strings(["00"]))
    assert complement(EMPTY) == FULL and complement(FULL) == EMPTY


@settings(deadline=None, max_examples=200)
@given(st.integers(0, 255), st.integers(0, 255))
def test_ops_match_cell_oracle(mu, mv):
    d = 3
    u, v = mask_to_clopen(mu, d), mask_to_clopen(mv, d)
    cu, cv = cells_oracle(u, d), cells_oracle(v, d)
    assert cells_oracle(meet(u, v), d) == cu & cv
    assert cells_oracle(join(u, v), d) == cu | cv
    assert cells_oracle(complement(u), d) == cells_oracle(FULL, d) - cu
    assert leq(u, v) == (cu <= cv)
    # canonical-form uniqueness: same cells, same antichain
    assert mask_to_clopen(clopen_to_mask(u, d), d) == u


@settings(deadline=None, max_examples=100)
@given(st.integers(1, 255))
def test_atomlessness(mask):
    d = 3
    u = mask_to_clopen(mask, d)
    w = sorted(u.antichain)[0]
    smaller = Clopen.from_strings([w + "0"])
    assert not smaller.is_empty
    assert leq(smaller, u) and smaller != u


def test_presentation_independence():
    rng = random.Random(4)
    for _ in range(200):
        mask = rng.getrandbits(16)
        u = mask_to_clopen(mask, 4)
        words = list(u.antichain)
        # split random words into their two children; same clopen
        blown = []
        for w in words:
            if rng.random() < 0.5 and len(w) < 6:
                blown += [w + "0", w + "1"]
            else:
                blown.append(w)
        assert Clopen.from_strings(blown) == u


def test_points_and_contains():
    x = parse_point("01^omega")
    assert x.expand(5) == "01010"
    y = parse_point("1(10)^omega")
    assert y.expand(4) == "1101"
    z = parse_point("0^omega")
    assert parse_point(str(z)) == z
    with pytest.raises(CanonicalityError):
        parse_point("0101")
    assert contains(FULL, x) and not contains(EMPTY, x)
    u = Clopen.from_strings(["01"])
    assert contains(u, x)
    assert not contains(u, parse_point("00^omega"))


def test_decompose_frozen_examples():
    td = tie_decompose(parse_point("0^omega"), 2)
    assert td.below == EMPTY
    assert td.above == complement(Clopen.from_strings(["00"]))
    td2 = tie_decompose(parse_point("1^omega"), 2)
    assert td2.above == EMPTY
    assert td2.below == complement(Clopen.from_strings(["11"]))
    td3 = tie_decompose(parse_point("01(0)^omega"), 2)
    assert td3.below == Clopen.from_strings(["00"])
    assert td3.above == Clopen.from_strings(["1"])
    assert join(join(td3.below, td3.above), Clopen.from_strings(["01"])) == FULL
    assert not decomposition_invariant_failures(td3)


def test_chains_increase_and_tightness():
    x = parse_point("0110^omega")
    td = tie_decompose(x, 4)
    for i in range(3):
        assert leq(td.below_chain[i], td.below_chain[i + 1])
        assert leq(td.above_chain[i], td.above_chain[i + 1])
    # the below chain grows strictly exactly where the expansion shows a 1,
    # the above chain where it shows a 0
    bits = x.expand(4)
    for i in range(1, 4):
        strictly_below = td.below_chain[i] != td.below_chain[i - 1]
        strictly_above = td.above_chain[i] != td.above_chain[i - 1]
        assert strictly_below == (bits[i] == "1")
        assert strictly_above == (bits[i] == "0")


def test_true_tie_check_exhaustive_small():
    x = parse_point("010^omega")
    td = tie_decompose(x, 3)
    probes = [mask_to_clopen(m, 3) for m in range(256)]
    rep = true_tie_check(td, probes)
    assert rep["ok"]
    assert rep["checked"] == 128  # exactly the probes missing the point
    with pytest.raises(DepthError):
        true_tie_check(td, [mask_to_clopen(5, 4)])


def test_true_tie_check_detects_corruption():
    x = parse_point("010^omega")
    td = tie_decompose(x, 3)
    # swap a chain element for a clopen containing the point
    bad = TieDecomposition(x, 3, td.below_chain[:-1] + (Clopen.from_strings(["01"]),),
                           td.above_chain)
    probes = [mask_to_clopen(m, 3) for m in range(256)]
    rep = true_tie_check(bad, probes)
    assert not rep["ok"]


def test_bulk_probe_check_matches_operation_route():
    rng = random.Random(9)
    for _ in range(6):
        x = Point("".join(rng.choice("01") for _ in range(4)), "0")
        td = tie_decompose(x, 4)
        checked, bad = bulk_probe_check(td)
        assert (checked, bad) == (32768, 0)
        probes = [mask_to_clopen(rng.getrandbits(16), 4) for _ in range(200)]
        assert true_tie_check(td, probes)["ok"]


def test_expansion_axiom_check_and_mutation():
    td = tie_decompose(parse_point("010^omega"), 3)
    assert expansion_axiom_check(td, 3)
    assert expansion_axiom_check(td, 1)
    # breaking the top chain element leaves uncovered fragment elements
    bad = TieDecomposition(td.point, 3, td.below_chain,
                           td.above_chain[:-1] + (EMPTY,))
    assert not expansion_axiom_check(bad, 3)
    # breaking chain linearity fails the first clause
    scrambled = TieDecomposition(
        td.point, 3,
        (td.below_chain[1], Clopen.from_strings(["10"]), td.below_chain[2]),
        td.above_chain)
    assert not expansion_axiom_check(scrambled, 3)


def test_decomposition_invariants_random_deep_points():
    rng = random.Random(21)
    for _ in range(30):
        prefix = "".join(rng.choice("01") for _ in range(rng.randint(0, 5)))
        period = "".join(rng.choice("01") for _ in range(rng.randint(1, 3)))
        x = Point(prefix, period)
        d = rng.randint(1, 8)
        td = tie_decompose(x, d)
        assert not decomposition_invariant_failures(td)


def test_json_round_trip():
    u = Clopen.from_strings(["00", "0111", "10"])
    assert Clopen.from_json_dict(u.to_json_dict()) == u
