"""Order-2 generalized cyclotomy of Z_pq and the cyclotomic-number lemmas."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

import numpy as np

from cyclodyne.errors import LemmaViolation
from cyclodyne.ntcore import PeriodParams, legendre


class ResidueClass(enum.IntEnum):
    D0 = 0
    D1 = 1
    P = 2
    Q = 3
    R = 4


@dataclass(frozen=True, eq=False)
class Partition:
    """Five-way split of Z_N into D0, D1, P, Q and R = {0}.

    ``labels[i]`` is the ResidueClass code of residue i; the class lists are
    sorted ascending.
    """

    params: PeriodParams
    d0: tuple[int, ...]
    d1: tuple[int, ...]
    pset: tuple[int, ...]
    qset: tuple[int, ...]
    labels: np.ndarray = field(repr=False)

    @property
    def N(self) -> int:
        return self.params.N

    def cls(self, label: ResidueClass) -> tuple[int, ...]:
        return {
            ResidueClass.D0: self.d0,
            ResidueClass.D1: self.d1,
            ResidueClass.P: self.pset,
            ResidueClass.Q: self.qset,
            ResidueClass.R: (0,),
        }[label]

    def d(self, i: int) -> tuple[int, ...]:
        return self.d0 if i % 2 == 0 else self.d1

    def to_dict(self) -> dict:
        pr = self.params
        return {
            "p": pr.p,
            "q": pr.q,
            "g": pr.g,
            "x": pr.x,
            "classes": {
                "D0": list(self.d0),
                "D1": list(self.d1),
                "P": list(self.pset),
                "Q": list(self.qset),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def build_partition(params: PeriodParams) -> Partition:
    p, q, N, e = params.p, params.q, params.N, params.e
    g2 = params.g * params.g % N
    d0: set[int] = set()
    power = 1
    for _ in range(e // 2):
        for cand in (power, power * params.x % N):
            if cand in d0:
                raise ValueError(f"collision generating D0 at {cand}; g={params.g} x={params.x}")
            d0.add(cand)
        power = power * g2 % N
    d1 = {params.g * d % N for d in d0}
    pset = tuple(k * p for k in range(1, q))
    qset = tuple(k * q for k in range(1, p))

    labels = np.full(N, -1, dtype=np.int8)
    labels[0] = ResidueClass.R
    labels[list(pset)] = ResidueClass.P
    labels[list(qset)] = ResidueClass.Q
    labels[sorted(d0)] = ResidueClass.D0
    if np.any(labels[sorted(d1)] != -1):
        raise ValueError("D1 overlaps another class")
    labels[sorted(d1)] = ResidueClass.D1
    if np.any(labels < 0) or len(d1) != e:
        raise ValueError("classes do not cover Z_N")
    return Partition(
        params=params,
        d0=tuple(sorted(d0)),
        d1=tuple(sorted(d1)),
        pset=pset,
        qset=qset,
        labels=labels,
    )


def classify(part: Partition, i: int) -> ResidueClass:
    return ResidueClass(int(part.labels[i % part.N]))


def minus_one_class(part: Partition) -> ResidueClass:
    """Class of N-1; raises LemmaViolation(2) if it is not D0 for q = 1 mod 4, D1 for q = 3 mod 4."""
    got = classify(part, part.N - 1)
    want = ResidueClass.D0 if part.params.q % 4 == 1 else ResidueClass.D1
    if got != want:
        raise LemmaViolation(2, f"-1 lies in {got.name}, expected {want.name}")
    return got


@dataclass
class CosetReport:
    """Outcome of the multiplication-by-a checks.

    ``violations`` lists failed clauses as printed in the source lemma;
    ``corrected_violations`` lists failures of the sharper statement the
    determinant proofs rely on for a in P (see coset_action_check).
    """

    a: int
    a_class: ResidueClass
    violations: list[str]
    corrected_violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def corrected_ok(self) -> bool:
        return not self.corrected_violations


def _multiset(xs) -> dict[int, int]:
    counts: dict[int, int] = {}
    for y in xs:
        counts[y] = counts.get(y, 0) + 1
    return counts


def coset_action_check(part: Partition, a: int) -> CosetReport:
    """Check how multiplication by ``a`` acts on the classes.

    Unit a in D_i: a*D_j = D_{i+j}, a*P = P, a*Q = Q as sets.
    a in Q: a*D_i hits every element of Q exactly (q-1)/2 times; a*Q = Q
    (a permutation of Q); a*P = {0}.
    a in P, as printed: a*D_i hits every element of P exactly (p-1)/2 times.
    This fails: D_i reduces mod q to a single quadratic class, so a*D_i
    covers only p*(k*D_i^(q)) with k = a/p, each element p-1 times. That
    corrected form is checked separately. a*P = P and a*Q = {0} hold.
    a = 0: everything maps to {0}.
    """
    N, p, q = part.N, part.params.p, part.params.q
    a %= N
    ac = classify(part, a)
    bad: list[str] = []
    fixed: list[str] = []

    def image(xs) -> list[int]:
        return [a * x % N for x in xs]

    P, Q = set(part.pset), set(part.qset)
    if ac in (ResidueClass.D0, ResidueClass.D1):
        for j in (0, 1):
            want = set(part.d((int(ac) + j) % 2))
            if set(image(part.d(j))) != want:
                bad.append(f"a*D{j} != D{(int(ac) + j) % 2}")
        if set(image(P)) != P:
            bad.append("a*P != P")
        if set(image(Q)) != Q:
            bad.append("a*Q != Q")
        return CosetReport(a, ac, bad, list(bad))
    if ac == ResidueClass.R:
        for lab in ResidueClass:
            if set(image(part.cls(lab))) != {0}:
                bad.append(f"0*{lab.name} != {{0}}")
        return CosetReport(a, ac, bad, list(bad))

    same, other, mult, name, oname = (
        (P, Q, (p - 1) // 2, "P", "Q") if ac == ResidueClass.P else (Q, P, (q - 1) // 2, "Q", "P")
    )
    common: list[str] = []
    img = image(same)
    if set(img) != same:
        common.append(f"a*{name} != {name}")
    if len(set(img)) != len(img):
        common.append(f"a*{name} is not a permutation of {name}")
    if set(image(other)) != {0}:
        common.append(f"a*{oname} != R")
    for i in (0, 1):
        counts = _multiset(image(part.d(i)))
        if set(counts) != same or any(c != mult for c in counts.values()):
            bad.append(f"a*D{i} does not cover {name} exactly {mult} times")
        if ac == ResidueClass.P:
            k = a // p
            want = {p * (k * y % q) for y in (quadratic_classes(q)[i])}
            if set(counts) != want or any(c != p - 1 for c in counts.values()):
                fixed.append(f"a*D{i} does not cover p*(k*D{i}^(q)) exactly {p - 1} times")
    if ac == ResidueClass.Q:
        fixed = list(bad)
    return CosetReport(a, ac, bad + common, fixed + common)


@dataclass(frozen=True)
class CyclotomicTable:
    modulus_tag: str  # "q" or "N"
    counts: tuple[tuple[int, int], tuple[int, int]]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.counts[i % 2][j % 2]


def quadratic_classes(q: int) -> tuple[list[int], list[int]]:
    """(quadratic residues, non-residues) of Z_q^*, sorted."""
    qr = sorted({x * x % q for x in range(1, q)})
    qrs = set(qr)
    return qr, [x for x in range(1, q) if x not in qrs]


def cyclotomic_q_bruteforce(q: int) -> CyclotomicTable:
    D = [set(c) for c in quadratic_classes(q)]
    counts = tuple(
        tuple(sum(1 for d in D[i] if (d + 1) % q in D[j]) for j in (0, 1)) for i in (0, 1)
    )
    return CyclotomicTable("q", counts)


def cyclotomic_q_closed(q: int) -> CyclotomicTable:
    f = (q - 1) // 2
    if f % 2 == 0:
        a, b = (f - 2) // 2, f // 2
        return CyclotomicTable("q", ((a, b), (b, b)))
    a, b = (f - 1) // 2, (f + 1) // 2
    return CyclotomicTable("q", ((a, b), (a, a)))


def cyclotomic_N_bruteforce(part: Partition) -> CyclotomicTable:
    N, lab = part.N, part.labels
    counts = []
    for i in (0, 1):
        shifted = lab[(np.asarray(part.d(i)) + 1) % N]
        counts.append(tuple(int(np.count_nonzero(shifted == j)) for j in (0, 1)))
    return CyclotomicTable("N", tuple(counts))


def cyclotomic_N_closed(params: PeriodParams) -> CyclotomicTable:
    p, q = params.p, params.q
    if q % 4 == 1:
        a, b = (p - 2) * (q - 5) // 4, (p - 2) * (q - 1) // 4
        return CyclotomicTable("N", ((a, b), (b, b)))
    a, b = (p - 2) * (q - 3) // 4, (p - 2) * (q + 1) // 4
    return CyclotomicTable("N", ((a, b), (a, a)))


def shifted_intersection_count(part: Partition, i: int, j: int, w: int) -> int:
    """|(D_i + w) ∩ D_j| by enumeration."""
    shifted = part.labels[(np.asarray(part.d(i)) + w) % part.N]
    return int(np.count_nonzero(shifted == j % 2))


def shifted_intersection_closed(params: PeriodParams, i: int, j: int, w: int) -> int:
    """Closed form for |(D_i + w) ∩ D_j| with w in P or Q.

    For w in P the Legendre symbol is taken of (w mod q) with respect to q.
    """
    p, q, N = params.p, params.q, params.N
    w %= N
    if w % p == 0 and w % q != 0:
        cq = cyclotomic_q_closed(q)
        if legendre(w, q) == 1:
            return (p - 1) * cq[i, j]
        return (p - 1) * cq[i + 1, j + 1]
    if w % q == 0 and w % p != 0:
        return (q - 1) * (p - 2) // 2 if i % 2 == j % 2 else 0
    raise ValueError(f"{w} is not in P or Q")


def shifted_intersection(part: Partition, i: int, j: int, w: int) -> int:
    """Enumerated count, cross-checked against the closed form (LemmaViolation(5) on mismatch)."""
    got = shifted_intersection_count(part, i, j, w)
    want = shifted_intersection_closed(part.params, i, j, w)
    if got != want:
        raise LemmaViolation(5, f"(D{i}+{w})∩D{j}: enumerated {got}, closed form {want}")
    return got


def partition_invariants(part: Partition) -> list[str]:
    """Violated structural invariants of a partition (empty when sound)."""
    pr = part.params
    N, e = pr.N, pr.e
    bad = []
    if len(part.d0) != e or len(part.d1) != e:
        bad.append(f"|D0|={len(part.d0)}, |D1|={len(part.d1)}, expected {e}")
    if len(part.pset) != pr.q - 1 or len(part.qset) != pr.p - 1:
        bad.append("wrong |P| or |Q|")
    everything = list(part.d0) + list(part.d1) + list(part.pset) + list(part.qset) + [0]
    if len(everything) != N or set(everything) != set(range(N)):
        bad.append("classes are not a partition of Z_N")
    if {pr.g * d % N for d in part.d0} != set(part.d1):
        bad.append("D1 != g*D0")
    if any(d % pr.p == 0 or d % pr.q == 0 for d in part.d0 + part.d1):
        bad.append("non-unit in D0 ∪ D1")
    return bad
