import numpy as np
import pytest

from seqsim.core import BitString

# Table 1, in row order 000, 001, ..., 111.
TABLE1_COUNTS = (0, 7, 3, 4, 1, 6, 2, 5)
TABLE1_SEQUENCES = {
    "000": (1, 1, 1, 1, 1, 1, 1, 1),
    "001": (1, -1, 1, -1, 1, -1, 1, -1),
    "010": (1, 1, -1, -1, 1, 1, -1, -1),
    "011": (1, -1, -1, 1, 1, -1, -1, 1),
    "100": (1, 1, 1, 1, -1, -1, -1, -1),
    "101": (1, -1, 1, -1, -1, 1, -1, 1),
    "110": (1, 1, -1, -1, -1, -1, 1, 1),
    "111": (1, -1, -1, 1, -1, 1, 1, -1),
}

# The two printed N=8 matrices, without the 1/sqrt(8) factor.
PRINTED_SEQUENCY_8 = np.array([
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, 1, 1, 1, -1, -1, -1, -1],
    [1, 1, -1, -1, -1, -1, 1, 1],
    [1, 1, -1, -1, 1, 1, -1, -1],
    [1, -1, -1, 1, 1, -1, -1, 1],
    [1, -1, -1, 1, -1, 1, 1, -1],
    [1, -1, 1, -1, -1, 1, -1, 1],
    [1, -1, 1, -1, 1, -1, 1, -1],
])
PRINTED_NATURAL_8 = np.array([
    [1, 1, 1, 1, 1, 1, 1, 1],
    [1, -1, 1, -1, 1, -1, 1, -1],
    [1, 1, -1, -1, 1, 1, -1, -1],
    [1, -1, -1, 1, 1, -1, -1, 1],
    [1, 1, 1, 1, -1, -1, -1, -1],
    [1, -1, 1, -1, -1, 1, -1, 1],
    [1, 1, -1, -1, -1, -1, 1, 1],
    [1, -1, -1, 1, -1, 1, 1, -1],
])


def naive_sign_changes(values):
    return sum(1 for a, b in zip(values, values[1:]) if a != b)


def naive_sequence(s: int, n: int):
    """(-1)^(s.k) by explicit per-bit loop, independent of the package's parity helpers."""
    out = []
    for k in range(2 ** n):
        acc = 0
        for j in range(n):
            acc += ((s >> j) & 1) * ((k >> j) & 1)
        out.append(-1 if acc % 2 else 1)
    return out


def all_secrets(n):
    return [BitString(v, n) for v in range(2 ** n)]


def phase_normalized(v):
    v = np.asarray(v, dtype=complex)
    k = int(np.argmax(np.abs(v)))
    return v * (abs(v[k]) / v[k])


@pytest.fixture
def rng():
    return np.random.default_rng(20261015)
