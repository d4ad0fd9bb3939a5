"""Classical Walsh-Hadamard engine in natural and sequency order.

Both orderings use the symmetric ``1/sqrt(N)`` normalization, so the dense
matrices are orthogonal and the fast transforms preserve the 2-norm.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .core import BitString, bit_reversal_permutation, g_bits_inverse, gray_code
from .exceptions import ContractViolation, InternalConsistencyError, ResourceError

MAX_DENSE_ORDER = 4096


def _log2_length(size: int) -> int:
    if size < 2 or size & (size - 1):
        raise ContractViolation(f"length must be a power of two >= 2, got {size}")
    return size.bit_length() - 1


def check_vector(v) -> np.ndarray:
    """Validate a 1-D real vector of power-of-two length and return a float64 copy."""
    arr = np.array(v, dtype=np.float64)
    if arr.ndim != 1:
        raise ContractViolation(f"expected a 1-D vector, got shape {arr.shape}")
    _log2_length(arr.size)
    if not np.all(np.isfinite(arr)):
        raise ContractViolation("vector contains NaN or infinity")
    return arr


def _check_order(n: int) -> int:
    if n < 1:
        raise ContractViolation(f"n must be >= 1, got {n}")
    size = 1 << n
    if size > MAX_DENSE_ORDER:
        raise ResourceError(f"dense matrix of order {size} exceeds cap {MAX_DENSE_ORDER}")
    return size


@lru_cache(maxsize=None)
def _walsh_samples(k: int, size: int) -> tuple:
    # W_k sampled at x = i/size, with each W treated as supported on [0, 1)
    if size == 1:
        return (1,)
    half = _walsh_samples(k >> 1, size >> 1)
    sign = -1 if (k >> 1) & 1 else 1
    if k & 1:
        sign = -sign
    return half + tuple(sign * v for v in half)


def walsh_function_sequency(k: int, N: int) -> np.ndarray:
    """Unnormalized +/-1 samples of the sequency-ordered Walsh function ``W_k``.

    Uses the doubling recursion
    ``W_2k(x) = W_k(2x) + (-1)^k W_k(2x-1)``,
    ``W_2k+1(x) = W_k(2x) - (-1)^k W_k(2x-1)``,
    sampled at the left endpoints ``x = i/N``.
    """
    _log2_length(N)
    if not 0 <= k < N:
        raise ContractViolation(f"k must be in [0, {N}), got {k}")
    return np.array(_walsh_samples(k, N), dtype=np.float64)


def sequency_matrix(n: int) -> np.ndarray:
    """Rows are the sampled Walsh functions ``W_0 .. W_{N-1}``, scaled by ``1/sqrt(N)``."""
    size = _check_order(n)
    rows = [walsh_function_sequency(k, size) for k in range(size)]
    return np.vstack(rows) / np.sqrt(size)


def sequency_matrix_from_basis_action(n: int) -> np.ndarray:
    """Sequency matrix built entry by entry from the basis-state formula.

    Column ``j`` holds ``(-1)^(sum_r k_{n-1-r} (j_r ^ j_{r+1}))`` in row ``k``,
    with ``j_n = 0``. Independent of the Walsh recursion.
    """
    size = _check_order(n)
    idx = np.arange(size)
    k = idx[:, None]
    j = idx[None, :]
    exponent = np.zeros((size, size), dtype=np.int64)
    for r in range(n):
        kbit = (k >> (n - 1 - r)) & 1
        jdiff = ((j >> r) & 1) ^ ((j >> (r + 1)) & 1)
        exponent += kbit * jdiff
    return (1 - 2 * (exponent & 1)) / np.sqrt(size)


def natural_matrix(n: int) -> np.ndarray:
    """``H^{(x)n}``: entry (k, j) is ``(-1)^(k.j) / sqrt(N)``."""
    size = _check_order(n)
    idx = np.arange(size)
    anded = idx[:, None] & idx[None, :]
    par = np.zeros_like(anded)
    for r in range(n):
        par ^= (anded >> r) & 1
    return (1 - 2 * par) / np.sqrt(size)


def fwht_natural(v) -> np.ndarray:
    """Fast natural-order transform: in-place butterflies, one ``1/sqrt(N)`` scaling at the end."""
    a = check_vector(v)
    size = a.size
    h = 1
    while h < size:
        blocks = a.reshape(-1, 2, h)
        top = blocks[:, 0, :].copy()
        blocks[:, 0, :] += blocks[:, 1, :]
        blocks[:, 1, :] = top - blocks[:, 1, :]
        h *= 2
    a /= np.sqrt(size)
    return a


@lru_cache(maxsize=None)
def _sequency_permutation(n: int) -> np.ndarray:
    size = 1 << n
    rev = bit_reversal_permutation(n)
    perm = rev[[gray_code(k) for k in range(size)]]
    # exhaustive up to 2^16 entries, an evenly spaced subset beyond
    for k in range(0, size, max(1, size >> 16)):
        if perm[k] != g_bits_inverse(BitString(k, n)).value:
            raise InternalConsistencyError(
                f"sequency permutation disagrees with inverse g-map at n={n}, k={k}")
    if size <= MAX_DENSE_ORDER:
        if not np.array_equal(sequency_matrix(n), natural_matrix(n)[perm]):
            raise InternalConsistencyError(f"sequency permutation fails row matching at n={n}")
    perm.flags.writeable = False
    return perm


def sequency_permutation(n: int) -> np.ndarray:
    """``pi`` with ``sequency_matrix(n)[k] == natural_matrix(n)[pi[k]]``.

    Built as bit reversal of the Gray code of ``k`` and checked against the
    inverse g-map and, up to N = 4096, row by row against both matrices.
    """
    if n < 1:
        raise ContractViolation(f"n must be >= 1, got {n}")
    return _sequency_permutation(n).copy()


def fwht_sequency(v) -> np.ndarray:
    a = check_vector(v)
    return fwht_natural(a)[sequency_permutation(a.size.bit_length() - 1)]


def sign_changes(row) -> int:
    """Number of adjacent sign flips in a real vector with no zero entries."""
    s = np.sign(np.asarray(row))
    return int(np.count_nonzero(s[1:] != s[:-1]))


def format_vector(v) -> str:
    return "".join(f"{x:.17g}\n" for x in np.asarray(v, dtype=np.float64))


def parse_vector(text: str) -> np.ndarray:
    values = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        try:
            values.append(float(line))
        except ValueError:
            raise ContractViolation(f"line {lineno}: not a number: {line!r}") from None
    return np.array(values, dtype=np.float64)


def format_matrix(m) -> str:
    return "".join(",".join(f"{x:.17g}" for x in row) + "\n" for row in np.asarray(m, dtype=np.float64))


def parse_matrix(text: str) -> np.ndarray:
    rows = [[float(x) for x in line.split(",")] for line in text.splitlines() if line.strip()]
    m = np.array(rows, dtype=np.float64)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ContractViolation(f"matrix must be square, got shape {m.shape}")
    _log2_length(m.shape[0])
    return m


def ifwht_sequency(y) -> np.ndarray:
    """Inverse of :func:`fwht_sequency`: undo the row permutation, then the natural transform."""
    b = check_vector(y)
    z = np.empty_like(b)
    z[sequency_permutation(b.size.bit_length() - 1)] = b
    return fwht_natural(z)
