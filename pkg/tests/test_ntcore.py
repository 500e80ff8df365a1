import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cyclodyne.ntcore import (
    common_primitive_root,
    crt_lift,
    is_prime,
    is_primitive_root,
    make_params,
    random_primes,
    twin_pairs,
    valid_pairs,
)
from oracles import brute_crt, naive_order, smallest_common_primitive_root, trial_division_is_prime


@pytest.mark.parametrize("n, expected", [(2, True), (1, False), (0, False), (899, False), (10007, True)])
def test_is_prime_examples(n, expected):
    assert is_prime(n) is expected


def test_is_prime_matches_trial_division_up_to_1e6():
    sieve = bytearray([1]) * (10**6 + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, 1001):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    assert all(is_prime(n) == bool(sieve[n]) for n in range(10**6 + 1))


@given(st.integers(min_value=0, max_value=200_000))
def test_is_prime_trial_division_property(n):
    assert is_prime(n) == trial_division_is_prime(n)


def test_is_prime_large_known_values():
    assert is_prime(2**61 - 1)
    assert not is_prime((2**31 - 1) * (2**31 + 11))
    # strong pseudoprime to bases 2..37 is caught by the 41 witness
    assert not is_prime(3825123056546413051)


@pytest.mark.parametrize("p, q, expected", [(3, 5, 2), (5, 7, 3), (3, 7, 5)])
def test_common_primitive_root_examples(p, q, expected):
    assert smallest_common_primitive_root(p, q) == expected
    assert common_primitive_root(p, q) == expected


@pytest.mark.parametrize("p, q", valid_pairs(2000))
def test_common_primitive_root_is_smallest(p, q):
    assert common_primitive_root(p, q) == smallest_common_primitive_root(p, q)


@pytest.mark.parametrize("p, q, a, b, expected", [(3, 5, 2, 1, 11), (3, 5, 0, 0, 0), (5, 7, 3, 1, 8)])
def test_crt_lift_examples(p, q, a, b, expected):
    assert crt_lift(p, q, a, b) == expected


@pytest.mark.parametrize("p, q", [(3, 5), (5, 7), (11, 13), (17, 19), (29, 31), (7, 11)])
def test_crt_lift_is_bijection(p, q):
    images = {crt_lift(p, q, a, b) for a in range(p) for b in range(q)}
    assert images == set(range(p * q))
    assert all(crt_lift(p, q, a, b) == brute_crt(p, q, a, b) for a in range(p) for b in range(q))


def test_make_params_examples():
    pr = make_params(3, 5)
    assert (pr.p, pr.q, pr.N, pr.e, pr.g, pr.x) == (3, 5, 15, 4, 2, 11)
    pr = make_params(5, 7)
    assert (pr.N, pr.e, pr.g, pr.x) == (35, 12, 3, 8)


@pytest.mark.parametrize(
    "p, q, g",
    [(5, 13, None), (4, 5, None), (5, 3, None), (5, 5, None), (2, 3, None), (3, 5, 4), (3, 5, 3)],
)
def test_make_params_rejects(p, q, g):
    with pytest.raises(ValueError):
        make_params(p, q, g)


def test_make_params_override():
    # 7 = 2 mod 5 (order 4) and 7 = 1 mod 3? no: 7 mod 3 = 1 -> rejected; 2 + 15 = 17 accepted
    pr = make_params(3, 5, 17)
    assert pr.g == 2 and pr.x == 11
    with pytest.raises(ValueError):
        make_params(3, 5, 7)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(valid_pairs(10**4)))
def test_params_invariants(pq):
    pr = make_params(*pq)
    p, q = pq
    assert math.gcd(p - 1, q - 1) == 2 and pr.e % 2 == 0
    assert naive_order(pr.g, p) == p - 1 and naive_order(pr.g, q) == q - 1
    assert pr.x % p == pr.g % p and pr.x % q == 1


def test_is_primitive_root_agrees_with_order():
    for p in (3, 5, 7, 11, 13, 101):
        for g in range(1, p):
            assert is_primitive_root(g, p) == (naive_order(g, p) == p - 1)


def test_random_primes_deterministic():
    a = random_primes(5, 0)
    assert a == random_primes(5, 0)
    assert len(set(a)) == 5
    assert all(2**59 <= r < 2**60 for r in a)
    assert all(is_prime(r) for r in a)
    assert random_primes(5, 1) != a


def test_twin_pairs():
    assert twin_pairs(31) == [(3, 5), (5, 7), (11, 13), (17, 19), (29, 31)]
    assert twin_pairs(3) == [(3, 5)]
    assert twin_pairs(2) == []
