"""2-adic complexity, rational approximation (FCSR synthesis) and FCSR expansion."""

from __future__ import annotations

import math
from dataclasses import dataclass

from cyclodyne.sequences import BinarySequence, s_eval_two


@dataclass(frozen=True)
class ComplexityReport:
    N: int
    s2: int
    modulus: int  # 2**N - 1
    g_common: int  # gcd(s2, modulus); equals modulus when s2 == 0
    m: int
    n: int
    phi2: int

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "S2": str(self.s2),
            "gcd": str(self.g_common),
            "m": str(self.m),
            "n": str(self.n),
            "phi2": self.phi2,
        }


def two_adic_complexity(seq: BinarySequence) -> ComplexityReport:
    """Exact 2-adic complexity floor(log2((2^N-1)/gcd(2^N-1, S(2)))).

    The all-zero sequence gets m/n = 0/1 and phi2 = 0; the all-one sequence
    gets m/n = 1/1 and phi2 = 0 as well.
    """
    N = seq.period
    s2 = s_eval_two(seq)
    modulus = (1 << N) - 1
    gc = math.gcd(s2, modulus)  # gcd(0, M) = M
    m, n = s2 // gc, modulus // gc
    return ComplexityReport(N=N, s2=s2, modulus=modulus, g_common=gc, m=m, n=n, phi2=n.bit_length() - 1)


@dataclass(frozen=True)
class DyadicRational:
    """f/g with g odd and positive; reduced on construction."""

    f: int
    g: int

    def __post_init__(self):
        if self.g % 2 == 0:
            raise ValueError(f"denominator must be odd, got {self.g}")
        f, g = self.f, self.g
        if g < 0:
            f, g = -f, -g
        d = math.gcd(f, g)
        object.__setattr__(self, "f", f // d)
        object.__setattr__(self, "g", g // d)

    def __str__(self) -> str:
        return f"{self.f}/{self.g}"


def fcsr_expand(r: DyadicRational, count: int) -> list[int]:
    """First ``count`` bits (LSB-first) of the 2-adic expansion of f/g."""
    if count <= 0:
        return []
    mod = 1 << count
    v = r.f * pow(r.g, -1, mod) % mod
    return [(v >> i) & 1 for i in range(count)]


def _norm2(v: tuple[int, int]) -> int:
    return v[0] * v[0] + v[1] * v[1]


def _gauss_reduce(u: tuple[int, int], v: tuple[int, int]) -> tuple[tuple[int, int], tuple[int, int]]:
    """Lagrange-Gauss reduction of a 2-D integer lattice basis; returns (shortest, second)."""
    if _norm2(u) > _norm2(v):
        u, v = v, u
    while True:
        nu = _norm2(u)
        # round(<u,v>/<u,u>) with exact integer arithmetic
        dot = u[0] * v[0] + u[1] * v[1]
        k = (2 * dot + nu) // (2 * nu)
        v = (v[0] - k * u[0], v[1] - k * u[1])
        if _norm2(v) >= nu:
            return u, v
        u, v = v, u


def raa_synthesize(bits, count: int | None = None) -> DyadicRational:
    """Smallest rational f/g (g odd) whose 2-adic expansion starts with ``bits``.

    Pairs (f, g) with f = g*alpha (mod 2^T) form a lattice of determinant 2^T
    with basis (2^T, 0), (alpha, 1). A Gauss-reduced basis yields the shortest
    such pair; when the stream is a rational f/g with 2*max(|f|, g)^2 < 2^T,
    that pair is f/g itself (any other non-parallel pair has a 2x2 determinant
    of at least 2^T). In general max(|f|, g) is within a factor sqrt(2) of
    the smallest possible, i.e. log2 of it is off by at most half a bit.
    """
    bits = list(bits)
    if count is not None:
        bits = bits[:count]
    T = len(bits)
    if T < 2:
        raise ValueError("need at least 2 bits")
    mod = 1 << T
    alpha = sum(int(b) << i for i, b in enumerate(bits))
    if alpha == 0:
        return DyadicRational(0, 1)
    b1, b2 = _gauss_reduce((mod, 0), (alpha, 1))
    # gcd of the g-coordinates is 1, so at least one basis vector has odd g.
    cands = [v for v in (b1, b2, (b1[0] + b2[0], b1[1] + b2[1]), (b1[0] - b2[0], b1[1] - b2[1])) if v[1] % 2]
    f, g = min(cands, key=lambda v: (max(abs(v[0]), abs(v[1])), _norm2(v)))
    out = DyadicRational(f, g)
    assert (out.f - out.g * alpha) % mod == 0
    return out
