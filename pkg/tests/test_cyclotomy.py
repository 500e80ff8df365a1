import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclodyne.cyclotomy import (
    ResidueClass,
    build_partition,
    classify,
    coset_action_check,
    cyclotomic_N_bruteforce,
    cyclotomic_N_closed,
    cyclotomic_q_bruteforce,
    cyclotomic_q_closed,
    minus_one_class,
    partition_invariants,
    shifted_intersection,
    shifted_intersection_closed,
    shifted_intersection_count,
)
from cyclodyne.errors import LemmaViolation
from cyclodyne.ntcore import PeriodParams, make_params, odd_primes_up_to, valid_pairs
from oracles import brute_partition


def test_partition_3_5(part_factory):
    part = part_factory(3, 5)
    assert part.d0 == (1, 4, 11, 14)
    assert part.d1 == (2, 7, 8, 13)
    assert part.pset == (3, 6, 9, 12)
    assert part.qset == (5, 10)


def test_partition_5_7_sizes(part_factory):
    part = part_factory(5, 7)
    assert (len(part.d0), len(part.d1), len(part.pset), len(part.qset)) == (12, 12, 6, 4)


@pytest.mark.parametrize("p, q", valid_pairs(1500))
def test_partition_matches_definition(p, q, part_factory):
    part = part_factory(p, q)
    g, x, d0, d1 = brute_partition(p, q)
    assert (part.params.g, part.params.x) == (g, x)
    assert set(part.d0) == d0 and set(part.d1) == d1
    assert partition_invariants(part) == []


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(valid_pairs(10**4)))
def test_partition_invariants_property(pq):
    part = build_partition(make_params(*pq))
    assert partition_invariants(part) == []


def test_build_partition_rejects_collision():
    # 4 is not a primitive root of 5, so the D0 enumeration repeats
    with pytest.raises(ValueError):
        build_partition(PeriodParams(p=3, q=5, g=4, x=1))


@pytest.mark.parametrize(
    "i, expected", [(0, ResidueClass.R), (14, ResidueClass.D0), (6, ResidueClass.P), (10, ResidueClass.Q), (7, ResidueClass.D1)]
)
def test_classify(i, expected, part_factory):
    assert classify(part_factory(3, 5), i) == expected


@pytest.mark.parametrize(
    "p, q, expected", [(3, 5, ResidueClass.D0), (5, 7, ResidueClass.D1), (11, 13, ResidueClass.D0)]
)
def test_minus_one_class(p, q, expected, part_factory):
    assert minus_one_class(part_factory(p, q)) == expected


def test_minus_one_class_detects_swapped_classes(part_factory):
    part = part_factory(3, 5)
    lab = part.labels.copy()
    lab[part.labels == 0], lab[part.labels == 1] = 1, 0
    swapped = type(part)(part.params, part.d1, part.d0, part.pset, part.qset, lab)
    with pytest.raises(LemmaViolation) as exc:
        minus_one_class(swapped)
    assert exc.value.lemma == 2


@pytest.mark.parametrize("p, q", valid_pairs(3000))
def test_minus_one_class_all_pairs(p, q, part_factory):
    minus_one_class(part_factory(p, q))


def test_coset_unit_clause(part_factory):
    rep = coset_action_check(part_factory(3, 5), 2)
    assert rep.a_class == ResidueClass.D1 and rep.ok and rep.corrected_ok


def test_coset_p_clause_as_printed_fails(part_factory):
    part = part_factory(3, 5)
    # 3*D0 = {3, 12, 3, 12}: only half of P, each twice
    assert sorted(3 * d % 15 for d in part.d0) == [3, 3, 12, 12]
    rep = coset_action_check(part, 3)
    assert not rep.ok
    assert rep.corrected_ok


def test_coset_q_clause(part_factory):
    part = part_factory(3, 5)
    rep = coset_action_check(part, 5)
    assert rep.ok
    assert {5 * w % 15 for w in part.pset} == {0}


@pytest.mark.parametrize("p, q", [(3, 5), (5, 7), (11, 13), (3, 7), (7, 11)])
def test_coset_exhaustive(p, q, part_factory):
    part = part_factory(p, q)
    reports = [coset_action_check(part, a) for a in range(part.N)]
    assert all(r.corrected_ok for r in reports)
    printed_fail = {r.a for r in reports if not r.ok}
    assert printed_fail == set(part.pset)


@pytest.mark.parametrize("p, q", [(17, 19), (29, 31), (41, 43)])
def test_coset_sampled(p, q, part_factory):
    part = part_factory(p, q)
    rng = random.Random(0)
    for a in rng.sample(range(part.N), 100):
        assert coset_action_check(part, a).corrected_ok


@pytest.mark.parametrize(
    "q, counts", [(5, ((0, 1), (1, 1))), (7, ((1, 2), (1, 1))), (13, ((2, 3), (3, 3)))]
)
def test_cyclotomic_q_examples(q, counts):
    assert cyclotomic_q_bruteforce(q).counts == counts
    assert cyclotomic_q_closed(q).counts == counts


def test_cyclotomic_q_closed_vs_bruteforce_below_500():
    for q in odd_primes_up_to(499):
        assert cyclotomic_q_closed(q) == cyclotomic_q_bruteforce(q), q


@pytest.mark.parametrize(
    "p, q, counts", [(3, 5, ((0, 1), (1, 1))), (5, 7, ((3, 6), (3, 3))), (3, 7, ((1, 2), (1, 1)))]
)
def test_cyclotomic_N_examples(p, q, counts, part_factory):
    assert cyclotomic_N_bruteforce(part_factory(p, q)).counts == counts
    assert cyclotomic_N_closed(make_params(p, q)).counts == counts


def test_cyclotomic_N_bruteforce_against_sets(part_factory):
    for pq in [(3, 5), (5, 7), (11, 13), (7, 11)]:
        part = part_factory(*pq)
        D = [set(part.d0), set(part.d1)]
        naive = tuple(
            tuple(len({(d + 1) % part.N for d in D[i]} & D[j]) for j in (0, 1)) for i in (0, 1)
        )
        assert cyclotomic_N_bruteforce(part).counts == naive


def test_shifted_intersection_examples(part_factory):
    part = part_factory(3, 5)
    assert shifted_intersection(part, 0, 0, 5) == 2
    assert shifted_intersection(part, 0, 1, 5) == 0
    # w = 6: 6 mod 5 = 1 is a square, so (p-1)*(0,1)_q = 2
    assert shifted_intersection(part, 0, 1, 6) == 2


@pytest.mark.parametrize("p, q", [(3, 5), (5, 7), (11, 13), (3, 7), (7, 11), (3, 11)])
def test_shifted_intersection_all_omega(p, q, part_factory):
    part = part_factory(p, q)
    for w in part.pset + part.qset:
        for i in (0, 1):
            for j in (0, 1):
                shifted_intersection(part, i, j, w)


def test_shifted_intersection_legendre_reading(part_factory):
    # the symbol is of (w mod q), not of the multiplier k = w/p
    part = part_factory(5, 7)
    w = 3 * 5  # k = 3 is a non-residue mod 7; 15 mod 7 = 1 is a residue
    assert shifted_intersection_count(part, 0, 1, w) == shifted_intersection_closed(part.params, 0, 1, w)
    assert shifted_intersection_count(part, 0, 1, w) != 4 * cyclotomic_q_closed(7)[1, 0]


def test_shifted_intersection_rejects_units(part_factory):
    with pytest.raises(ValueError):
        shifted_intersection(part_factory(3, 5), 0, 0, 1)


def test_partition_json(part_factory):
    d = json.loads(part_factory(3, 5).to_json())
    assert d == {"p": 3, "q": 5, "g": 2, "x": 11,
                 "classes": {"D0": [1, 4, 11, 14], "D1": [2, 7, 8, 13], "P": [3, 6, 9, 12], "Q": [5, 10]}}


def test_partition_deterministic():
    a = build_partition(make_params(11, 13)).to_json()
    assert a == build_partition(make_params(11, 13)).to_json()


@pytest.mark.parametrize("p, q", [(3, 5), (5, 7), (11, 13), (3, 7), (7, 11), (17, 19)])
def test_partition_independent_of_primitive_root(p, q, part_factory):
    from cyclodyne.ntcore import is_primitive_root

    base = part_factory(p, q)
    roots = [g for g in range(2, p * q) if is_primitive_root(g, p) and is_primitive_root(g, q)]
    assert len(roots) > 1
    for g in roots:
        part = build_partition(make_params(p, q, g))
        assert part.d0 == base.d0 and part.d1 == base.d1
