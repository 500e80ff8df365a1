"""Integer and modular arithmetic primitives.

Everything here is exact and works on Python ints; the word-size / big-int
distinction only matters for performance, never correctness.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

# Deterministic Miller-Rabin witnesses, sufficient for n < 3.3e24.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)
_SMALL_PRIMES = _MR_WITNESSES


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    for sp in _SMALL_PRIMES:
        if n % sp == 0:
            return n == sp
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime factors of a small positive integer, by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def is_primitive_root(g: int, p: int) -> bool:
    """True iff g generates the multiplicative group mod the prime p."""
    if g % p == 0:
        return False
    return all(pow(g, (p - 1) // f, p) != 1 for f in prime_factors(p - 1))


def multiplicative_order(a: int, n: int) -> int:
    if math.gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    k, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


def common_primitive_root(p: int, q: int) -> int:
    """Smallest g >= 2 that is a primitive root mod both p and q."""
    for g in range(2, p * q):
        if is_primitive_root(g, p) and is_primitive_root(g, q):
            return g
    raise AssertionError(f"no common primitive root below {p * q} for ({p}, {q})")


def crt_lift(p: int, q: int, a: int, b: int) -> int:
    """Unique y in [0, pq) with y = a (mod p) and y = b (mod q)."""
    return (a + p * ((b - a) * pow(p, -1, q) % q)) % (p * q)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) for an odd prime p, via Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    return 1 if pow(a, (p - 1) // 2, p) == 1 else -1


def odd_primes_up_to(n: int) -> list[int]:
    if n < 3:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, math.isqrt(n) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(3, n + 1) if sieve[i]]


def random_primes(k: int, seed: int, lo_bits: int = 59, hi_bits: int = 60) -> list[int]:
    """k distinct primes in [2**lo_bits, 2**hi_bits), reproducible from seed."""
    rng = random.Random(seed)
    out: list[int] = []
    while len(out) < k:
        c = rng.randrange(2**lo_bits, 2**hi_bits) | 1
        if c not in out and is_prime(c):
            out.append(c)
    return out


@dataclass(frozen=True)
class PeriodParams:
    p: int
    q: int
    g: int
    x: int

    @property
    def N(self) -> int:
        return self.p * self.q

    @property
    def e(self) -> int:
        return (self.p - 1) * (self.q - 1) // 2

    @property
    def is_twin(self) -> bool:
        return self.q == self.p + 2

    def to_dict(self) -> dict:
        return {"p": self.p, "q": self.q, "N": self.N, "e": self.e, "g": self.g, "x": self.x}


def make_params(p: int, q: int, g_override: int | None = None) -> PeriodParams:
    """Validate (p, q) and pick the common primitive root and CRT witness.

    Raises ValueError for non-primes, p >= q, gcd(p-1, q-1) != 2, or a
    g_override that is not a primitive root of both primes.
    """
    if not (is_prime(p) and is_prime(q)) or p == 2 or q == 2:
        raise ValueError(f"p and q must be odd primes, got ({p}, {q})")
    if p >= q:
        raise ValueError(f"need p < q, got ({p}, {q})")
    if math.gcd(p - 1, q - 1) != 2:
        raise ValueError(f"gcd(p-1, q-1) = {math.gcd(p - 1, q - 1)}, must be 2")
    N = p * q
    if g_override is None:
        g = common_primitive_root(p, q)
    else:
        g = g_override % N
        if not (is_primitive_root(g, p) and is_primitive_root(g, q)):
            raise ValueError(f"{g_override} is not a common primitive root of {p} and {q}")
    x = crt_lift(p, q, g % p, 1)
    return PeriodParams(p=p, q=q, g=g, x=x)


def valid_pairs(max_n: int, min_n: int = 0) -> list[tuple[int, int]]:
    """All (p, q) with p < q odd primes, gcd(p-1, q-1) = 2 and min_n <= pq <= max_n."""
    primes = odd_primes_up_to(max_n // 3)
    out = []
    for i, p in enumerate(primes):
        if p * p > max_n:
            break
        for q in primes[i + 1 :]:
            if p * q > max_n:
                break
            if p * q >= min_n and math.gcd(p - 1, q - 1) == 2:
                out.append((p, q))
    return out


def twin_pairs(max_p: int) -> list[tuple[int, int]]:
    return [(p, p + 2) for p in odd_primes_up_to(max_p) if is_prime(p + 2)]
