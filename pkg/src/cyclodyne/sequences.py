"""The two Ding-Helleseth sequence classes, S(2), and linear complexity.

Bit order is LSB-first throughout: index i is the coefficient of 2**i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from cyclodyne.cyclotomy import Partition, ResidueClass


@dataclass(frozen=True, eq=False)
class BinarySequence:
    bits: np.ndarray  # uint8, one period
    class_tag: str | None = None  # "DH1", "DH2", "external"
    params: object = None  # PeriodParams for generated sequences

    def __post_init__(self):
        b = np.asarray(self.bits, dtype=np.uint8)
        if b.ndim != 1 or b.size == 0:
            raise ValueError("a sequence needs at least one bit")
        if np.any(b > 1):
            raise ValueError("bits must be 0 or 1")
        object.__setattr__(self, "bits", b)

    @property
    def period(self) -> int:
        return int(self.bits.size)

    @property
    def weight(self) -> int:
        return int(self.bits.sum())

    @property
    def support(self) -> list[int]:
        return np.flatnonzero(self.bits).tolist()

    def __eq__(self, other):
        return isinstance(other, BinarySequence) and np.array_equal(self.bits, other.bits)

    def periodized(self, count: int) -> list[int]:
        reps = -(-count // self.period)
        return np.tile(self.bits, reps)[:count].tolist()

    # -- text formats --------------------------------------------------------

    def to_bits(self) -> str:
        return "".join("1" if b else "0" for b in self.bits) + "\n"

    def to_hex(self) -> str:
        """S(2) in hex, LSB-first nibble packing, zero-padded to ceil(N/4) digits."""
        return format(s_eval_two(self), "x").zfill(-(-self.period // 4)) + "\n"

    def to_json(self) -> str:
        pr = self.params
        return json.dumps(
            {
                "p": getattr(pr, "p", None),
                "q": getattr(pr, "q", None),
                "g": getattr(pr, "g", None),
                "class": self.class_tag,
                "period": self.period,
                "bit_order": "lsb-first",
                "support": self.support,
            }
        ) + "\n"

    @classmethod
    def from_bits(cls, text: str, class_tag: str = "external") -> BinarySequence:
        s = text.strip()
        if not s or set(s) - {"0", "1"}:
            raise ValueError("sequence file must be a single line of '0'/'1' characters")
        return cls(np.frombuffer(s.encode(), dtype=np.uint8) - ord("0"), class_tag)

    @classmethod
    def from_hex(cls, text: str, period: int, class_tag: str = "external") -> BinarySequence:
        v = int(text.strip(), 16)
        if v >> period:
            raise ValueError(f"hex value does not fit in {period} bits")
        return cls(np.array([(v >> i) & 1 for i in range(period)], dtype=np.uint8), class_tag)

    @classmethod
    def from_json(cls, text: str) -> BinarySequence:
        d = json.loads(text)
        n = int(d["period"])
        bits = np.zeros(n, dtype=np.uint8)
        sup = [int(i) for i in d["support"]]
        if any(not 0 <= i < n for i in sup):
            raise ValueError("support index out of range")
        bits[sup] = 1
        return cls(bits, d.get("class") or "external")

    @classmethod
    def parse(cls, text: str, period: int | None = None) -> BinarySequence:
        """Guess the format: JSON object, '0'/'1' line, or hex (needs period).

        A line of 0/1 digits is read as bits unless ``period`` is given and
        differs from its length.
        """
        s = text.strip()
        if s.startswith("{"):
            return cls.from_json(s)
        if s and not set(s) - {"0", "1"} and (period is None or len(s) == period):
            return cls.from_bits(s)
        if period is None:
            raise ValueError("hex input needs an explicit period")
        return cls.from_hex(s, period)


def _from_support(part: Partition, extra: ResidueClass, tag: str) -> BinarySequence:
    lab = part.labels
    bits = ((lab == ResidueClass.D1) | (lab == extra)).astype(np.uint8)
    return BinarySequence(bits, tag, part.params)


def generate_dh1(part: Partition) -> BinarySequence:
    """s_i = 1 iff i in D1 ∪ P."""
    return _from_support(part, ResidueClass.P, "DH1")


def generate_dh2(part: Partition) -> BinarySequence:
    """s_i = 1 iff i in D1 ∪ Q."""
    return _from_support(part, ResidueClass.Q, "DH2")


def generate(part: Partition, which: int) -> BinarySequence:
    if which == 1:
        return generate_dh1(part)
    if which == 2:
        return generate_dh2(part)
    raise ValueError(f"sequence class must be 1 or 2, got {which}")


def s_eval_two(seq: BinarySequence) -> int:
    """S(2) = sum s_i 2**i, exactly."""
    return int.from_bytes(np.packbits(seq.bits, bitorder="little").tobytes(), "little")


def berlekamp_massey(bits) -> int:
    """Length of the shortest GF(2) LFSR generating ``bits``.

    Polynomials are ints (bit k = coefficient of x^k); ``window`` holds the
    stream reversed so the discrepancy is a single AND + popcount.
    """
    c, b = 1, 1
    L, m = 0, 1
    window = 0
    for n, s in enumerate(bits):
        window = (window << 1) | int(s)
        if (c & window).bit_count() & 1 == 0:
            m += 1
        elif 2 * L <= n:
            c, b = c ^ (b << m), c
            L = n + 1 - L
            m = 1
        else:
            c ^= b << m
            m += 1
    return L


def linear_complexity(seq: BinarySequence) -> int:
    """Linear complexity of the periodic sequence, from 2N bits of the stream."""
    return berlekamp_massey(seq.periodized(2 * seq.period))
