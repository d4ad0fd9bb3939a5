"""Classical ground truth for zero-crossing counts.

Three independent routes to the same number: brute-force sign-change
counting over the full sequence, the doubling recurrence over truncated
secrets, and the closed form read off the reversed prefix-XOR bits.
"""
from __future__ import annotations

import os
from typing import Sequence

import numpy as np

from .core import BitString, g_bits, parity, truncate
from .exceptions import ContractViolation, ResourceError

DEFAULT_MAX_SEQUENCE_BITS = 20


def max_sequence_bits() -> int:
    return int(os.environ.get("SEQSIM_MAX_SEQUENCE_BITS", DEFAULT_MAX_SEQUENCE_BITS))


def _parity_array(x: np.ndarray) -> np.ndarray:
    x = x.copy()
    for shift in (32, 16, 8, 4, 2, 1):
        x ^= x >> shift
    return x & 1


def generate_sequence(s: BitString, max_bits: int | None = None) -> np.ndarray:
    """Return ``F(k) = (-1)^(s.k)`` for k = 0..2^n-1 as an int8 array of +/-1."""
    cap = max_sequence_bits() if max_bits is None else max_bits
    if s.width > cap:
        raise ResourceError(f"sequence of 2^{s.width} terms exceeds cap 2^{cap} (SEQSIM_MAX_SEQUENCE_BITS)")
    k = np.arange(1 << s.width, dtype=np.int64)
    return (1 - 2 * _parity_array(k & s.value)).astype(np.int8)


def check_sign_sequence(seq: Sequence[int]) -> np.ndarray:
    arr = np.asarray(seq)
    if arr.ndim != 1 or arr.size == 0 or arr.size & (arr.size - 1):
        raise ContractViolation(f"sign sequence length must be a power of two, got shape {arr.shape}")
    if not np.all((arr == 1) | (arr == -1)):
        raise ContractViolation("sign sequence entries must be +1 or -1")
    return arr.astype(np.int64)


def brute_force_zero_crossings(seq: Sequence[int]) -> int:
    """Half the sum of absolute first differences; exact integer arithmetic."""
    arr = check_sign_sequence(seq)
    return int(np.abs(np.diff(arr)).sum()) // 2


def zero_crossings_trace(s: BitString) -> list:
    """Intermediate values ``[Z_1(s(1)), Z_2(s(2)), ..., Z_n(s)]`` of the doubling recurrence.

    ``Z_1 = s_0`` and ``Z_m = 2 Z_{m-1} + (s_0 ^ ... ^ s_{m-1})``.
    """
    trace = [s[0]]
    running = s[0]
    for m in range(2, s.width + 1):
        running ^= s[m - 1]
        trace.append(2 * trace[-1] + running)
    return trace


def zero_crossings_recurrence(s: BitString) -> int:
    return zero_crossings_trace(s)[-1]


def zero_crossings_closed_form(s: BitString) -> int:
    return g_bits(s).to_integer()


def boundary_term(s: BitString, m: int) -> int:
    """The sign change across the midpoint of the length-2^m prefix, counted directly.

    Compares ``F(2^(m-1))`` with ``F(2^(m-1) - 1)`` for the truncated secret
    ``s(m)``; equals ``s_0 ^ ... ^ s_{m-1}``.
    """
    if not 2 <= m <= s.width:
        raise ContractViolation(f"m must be in [2, {s.width}], got {m}")
    sm = truncate(s, m).value
    left = 1 - 2 * parity(sm & ((1 << (m - 1)) - 1))
    right = 1 - 2 * parity(sm & (1 << (m - 1)))
    return abs(right - left) // 2


def format_sequence(seq: Sequence[int]) -> str:
    """Comma-separated ``+1``/``-1`` tokens."""
    return ",".join("+1" if v > 0 else "-1" for v in check_sign_sequence(seq))


def parse_sequence(text: str) -> np.ndarray:
    tokens = [t.strip() for t in text.strip().split(",")]
    try:
        values = [int(t) for t in tokens]
    except ValueError as exc:
        raise ContractViolation(f"bad sign sequence token: {exc}") from None
    return check_sign_sequence(values).astype(np.int8)
