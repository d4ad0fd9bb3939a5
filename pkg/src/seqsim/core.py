"""Bit-level primitives.

Bit index 0 is the least significant bit everywhere in the package. A
``BitString`` prints MSB-first ("101" is s2 s1 s0), the way secrets are
usually written down, but ``bits[0]`` is always s0.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np

from .exceptions import ContractViolation

MAX_WIDTH = 30


@dataclass(frozen=True)
class BitString:
    """Fixed-width little-endian bit vector.

    Stored as an integer ``value`` plus an explicit ``width``; there is no
    inferred width anywhere in the API.
    """

    value: int
    width: int

    def __post_init__(self):
        if not isinstance(self.width, (int, np.integer)) or self.width < 1:
            raise ContractViolation(f"width must be >= 1, got {self.width!r}")
        if self.width > MAX_WIDTH:
            raise ContractViolation(f"width {self.width} exceeds the supported maximum {MAX_WIDTH}")
        if not 0 <= self.value < (1 << self.width):
            raise ContractViolation(f"value {self.value} does not fit in {self.width} bits")
        object.__setattr__(self, "value", int(self.value))
        object.__setattr__(self, "width", int(self.width))

    @classmethod
    def from_integer(cls, value: int, width: int) -> "BitString":
        return cls(value, width)

    @classmethod
    def from_bits(cls, bits: Sequence[int]) -> "BitString":
        """Build from a little-endian bit sequence (``bits[0]`` is the LSB)."""
        if len(bits) == 0:
            raise ContractViolation("empty bit sequence")
        value = 0
        for j, b in enumerate(bits):
            if b not in (0, 1):
                raise ContractViolation(f"bit {j} is {b!r}, expected 0 or 1")
            value |= int(b) << j
        return cls(value, len(bits))

    @classmethod
    def parse(cls, text: str) -> "BitString":
        """Parse an MSB-first string of '0'/'1' characters."""
        if not text or any(c not in "01" for c in text):
            raise ContractViolation(f"not a bit string: {text!r}")
        return cls(int(text, 2), len(text))

    def to_integer(self) -> int:
        return self.value

    @property
    def bits(self) -> tuple:
        return tuple((self.value >> j) & 1 for j in range(self.width))

    def __getitem__(self, j: int) -> int:
        if not 0 <= j < self.width:
            raise IndexError(j)
        return (self.value >> j) & 1

    def __iter__(self) -> Iterator[int]:
        return iter(self.bits)

    def __len__(self) -> int:
        return self.width

    def __xor__(self, other: "BitString") -> "BitString":
        _check_same_width(self, other)
        return BitString(self.value ^ other.value, self.width)

    def __str__(self) -> str:
        return format(self.value, f"0{self.width}b")


def _check_same_width(a: BitString, b: BitString) -> None:
    if a.width != b.width:
        raise ContractViolation(f"width mismatch: {a.width} vs {b.width}")


def parity(x: int) -> int:
    return bin(x).count("1") & 1


def dot_mod2(a: BitString, b: BitString) -> int:
    """Bitwise dot product of two equal-width strings, modulo 2."""
    _check_same_width(a, b)
    return parity(a.value & b.value)


def truncate(s: BitString, m: int) -> BitString:
    """Keep the ``m`` least significant bits of ``s``."""
    if not 1 <= m <= s.width:
        raise ContractViolation(f"m must be in [1, {s.width}], got {m}")
    return BitString(s.value & ((1 << m) - 1), m)


def prefix_xor(s: BitString) -> list:
    """``p[k] = s_0 ^ s_1 ^ ... ^ s_k`` for k = 0..n-1."""
    out, acc = [], 0
    for b in s.bits:
        acc ^= b
        out.append(acc)
    return out


def g_bits(s: BitString) -> BitString:
    """Reversed prefix-XOR map: ``g_{n-1-k} = s_0 ^ ... ^ s_k``.

    The integer value of the result is the number of sign changes in the
    sequence ``(-1)^(s.x)``, x = 0..2^n-1.
    """
    n = s.width
    p = prefix_xor(s)
    return BitString.from_bits([p[n - 1 - k] for k in range(n)])


def g_bits_inverse(g: BitString) -> BitString:
    """Inverse of :func:`g_bits`: ``s_k = g_{n-k} ^ g_{n-k-1}`` with ``g_n = 0``."""
    n = g.width
    gb = list(g.bits) + [0]
    return BitString.from_bits([gb[n - k] ^ gb[n - k - 1] for k in range(n)])


def gray_code(i: int) -> int:
    return i ^ (i >> 1)


def reverse_bits(i: int, n: int) -> int:
    return int(format(i, f"0{n}b")[::-1], 2)


def bit_reversal_permutation(n: int) -> np.ndarray:
    """Array ``perm`` with ``perm[i]`` = ``i`` with its n-bit pattern reversed."""
    if n < 1:
        raise ContractViolation(f"n must be >= 1, got {n}")
    idx = np.arange(1 << n, dtype=np.int64)
    out = np.zeros_like(idx)
    for j in range(n):
        out |= ((idx >> j) & 1) << (n - 1 - j)
    return out
