"""Dense statevector simulation.

Basis index ``i`` encodes qubit ``j`` as bit ``j`` of ``i``. Gate kernels
work in place on a private copy of the amplitude array, so callers always
get a fresh state back.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from math import sqrt

import numpy as np

from .circuit import (Circuit, Gate, OracleBlock, build_bv_circuit, build_oracle,
                      build_sequency_wht_circuit, build_zero_crossings_circuit)
from .core import BitString, reverse_bits
from .exceptions import ContractViolation, NotBasisStateError, ResourceError

DEFAULT_MAX_QUBITS = 24
MAX_UNITARY_QUBITS = 12
NORM_TOL = 1e-9
_INV_SQRT2 = 1 / sqrt(2)


def max_qubits(override: int | None = None) -> int:
    """Data-register qubit cap: explicit override, then ``SEQSIM_MAX_QUBITS``, then 24.

    A state may hold the cap plus one ancilla.
    """
    if override is not None:
        return int(override)
    env = os.environ.get("SEQSIM_MAX_QUBITS")
    return int(env) if env else DEFAULT_MAX_QUBITS


def _check_cap(num_qubits: int, cap: int | None) -> None:
    limit = max_qubits(cap)
    if num_qubits > limit + 1:
        raise ResourceError(
            f"{num_qubits} qubits exceeds the simulator cap of {limit} data qubits + 1 ancilla "
            f"(set SEQSIM_MAX_QUBITS or --max-qubits)")


@dataclass(frozen=True, eq=False)
class StateVector:
    num_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=np.complex128)
        if amps.shape != (1 << self.num_qubits,):
            raise ContractViolation(f"expected {1 << self.num_qubits} amplitudes, got shape {amps.shape}")
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def norm_squared(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2


@dataclass(frozen=True)
class MeasurementOutcome:
    basis_index: int
    probability: float


def initial_state(num_qubits: int, basis_index: int = 0, cap: int | None = None) -> StateVector:
    if num_qubits < 1:
        raise ContractViolation(f"num_qubits must be >= 1, got {num_qubits}")
    _check_cap(num_qubits, cap)
    if not 0 <= basis_index < (1 << num_qubits):
        raise ContractViolation(f"basis index {basis_index} out of range for {num_qubits} qubits")
    amps = np.zeros(1 << num_qubits, dtype=np.complex128)
    amps[basis_index] = 1.0
    return StateVector(num_qubits, amps)


def from_amplitudes(values, cap: int | None = None) -> StateVector:
    """Wrap a unit-norm amplitude vector whose length is a power of two."""
    amps = np.asarray(values, dtype=np.complex128).ravel()
    size = amps.size
    if size < 2 or size & (size - 1):
        raise ContractViolation(f"amplitude count must be a power of two >= 2, got {size}")
    num_qubits = size.bit_length() - 1
    _check_cap(num_qubits, cap)
    norm = float(np.vdot(amps, amps).real)
    if abs(norm - 1) > NORM_TOL:
        raise ContractViolation(f"state is not normalized: |v|^2 = {norm!r}")
    return StateVector(num_qubits, amps)


def _axes_view(block: np.ndarray, q: int) -> np.ndarray:
    # axis a of the view is qubit q-1-a; trailing axis is the batch of columns
    return block.reshape((2,) * q + (block.shape[1],))


def _index(q: int, fixed: dict) -> tuple:
    idx = [slice(None)] * (q + 1)
    for qubit, value in fixed.items():
        idx[q - 1 - qubit] = value
    return tuple(idx)


def _swap_slices(t: np.ndarray, i: tuple, j: tuple) -> None:
    tmp = t[i].copy()
    t[i] = t[j]
    t[j] = tmp


def _apply_gate(block: np.ndarray, gate: Gate, q: int) -> None:
    """Apply ``gate`` in place to ``block`` of shape (2**q, batch)."""
    kind, qs = gate.kind, gate.qubits
    if kind in ("H", "X"):
        j = qs[0]
        t = block.reshape(1 << (q - 1 - j), 2, (1 << j) * block.shape[1])
        if kind == "X":
            _swap_slices(t, (slice(None), 0), (slice(None), 1))
        else:
            a = t[:, 0].copy()
            b = t[:, 1]
            t[:, 0] = (a + b) * _INV_SQRT2
            t[:, 1] = (a - b) * _INV_SQRT2
        return
    t = _axes_view(block, q)
    if kind == "CNOT":
        c, tgt = qs
        _swap_slices(t, _index(q, {c: 1, tgt: 0}), _index(q, {c: 1, tgt: 1}))
    elif kind == "TOFFOLI":
        c1, c2, tgt = qs
        _swap_slices(t, _index(q, {c1: 1, c2: 1, tgt: 0}), _index(q, {c1: 1, c2: 1, tgt: 1}))
    elif kind == "SWAP":
        a, b = qs
        _swap_slices(t, _index(q, {a: 0, b: 1}), _index(q, {a: 1, b: 0}))
    else:  # pragma: no cover - Gate validates kinds
        raise ContractViolation(f"unsupported gate {kind}")


def _run(block: np.ndarray, circuit: Circuit) -> None:
    q = circuit.num_qubits
    for op in circuit.ops:
        if isinstance(op, OracleBlock):
            for g in op.handle.record_query():
                _apply_gate(block, g, q)
        else:
            _apply_gate(block, op, q)


def apply(state: StateVector, circuit: Circuit) -> StateVector:
    """Run ``circuit`` on ``state`` and return the resulting state."""
    if state.num_qubits != circuit.num_qubits:
        raise ContractViolation(
            f"state has {state.num_qubits} qubits, circuit has {circuit.num_qubits}")
    block = state.amplitudes.copy().reshape(-1, 1)
    _run(block, circuit)
    out = StateVector(state.num_qubits, block.reshape(-1))
    drift = abs(out.norm_squared() - 1)
    if drift > NORM_TOL:
        raise RuntimeError(f"norm drifted by {drift:.3e} during simulation")
    return out


def circuit_unitary(circuit: Circuit) -> np.ndarray:
    """Dense matrix whose column ``j`` is the circuit applied to basis state ``j``.

    All columns are pushed through the circuit together, so an oracle block
    inside counts as a single query.
    """
    q = circuit.num_qubits
    if q > MAX_UNITARY_QUBITS:
        raise ResourceError(f"dense unitary limited to {MAX_UNITARY_QUBITS} qubits, circuit has {q}")
    block = np.eye(1 << q, dtype=np.complex128)
    _run(block, circuit)
    return block


def register_distribution(state: StateVector, qubit_indices) -> np.ndarray:
    """Marginal distribution of the register whose bit ``i`` is qubit ``qubit_indices[i]``."""
    qubit_indices = list(qubit_indices)
    if len(set(qubit_indices)) != len(qubit_indices):
        raise ContractViolation(f"register qubits must be distinct: {qubit_indices}")
    if any(not 0 <= k < state.num_qubits for k in qubit_indices):
        raise ContractViolation(f"register qubits out of range: {qubit_indices}")
    idx = np.arange(1 << state.num_qubits, dtype=np.int64)
    reg = np.zeros_like(idx)
    for i, k in enumerate(qubit_indices):
        reg |= ((idx >> k) & 1) << i
    return np.bincount(reg, weights=state.probabilities(), minlength=1 << len(qubit_indices))


def measure_register(state: StateVector, qubit_indices, mode: str = "deterministic",
                     seed: int | None = None) -> MeasurementOutcome:
    """Read a register.

    ``deterministic`` returns the most likely value and raises
    :class:`NotBasisStateError` unless its probability is within 1e-9 of 1.
    ``sample`` draws one value with a seeded generator.
    """
    dist = register_distribution(state, qubit_indices)
    if mode == "sample":
        rng = np.random.default_rng(seed)
        value = int(rng.choice(dist.size, p=dist / dist.sum()))
        return MeasurementOutcome(value, float(dist[value]))
    if mode != "deterministic":
        raise ContractViolation(f"unknown measurement mode {mode!r}")
    order = np.argsort(dist, kind="stable")[::-1]
    best = int(order[0])
    if dist[best] < 1 - NORM_TOL:
        top = [(int(i), float(dist[i])) for i in order[:2]]
        raise NotBasisStateError(
            f"state not a register basis state; top probabilities {top}", top)
    return MeasurementOutcome(best, float(dist[best]))


def dump_state(state: StateVector) -> str:
    """One ``index real imag`` line per amplitude, 17 significant digits."""
    return "".join(f"{i} {a.real:.17g} {a.imag:.17g}\n" for i, a in enumerate(state.amplitudes))


def load_state(text: str) -> StateVector:
    rows = [line.split() for line in text.splitlines() if line.strip()]
    amps = np.zeros(len(rows), dtype=np.complex128)
    for row in rows:
        amps[int(row[0])] = complex(float(row[1]), float(row[2]))
    return StateVector(len(rows).bit_length() - 1, amps)


@dataclass
class ZeroCrossingRun:
    count: int
    probability: float
    oracle_queries: int
    raw_register: int
    state: StateVector


def count_zero_crossings(secret: BitString, include_swaps: bool = True,
                         cap: int | None = None) -> ZeroCrossingRun:
    """Run the one-query zero-crossing circuit for ``secret`` and read the count.

    Without the swap layer the register comes out bit-reversed and is
    reversed back here.
    """
    n = secret.width
    oracle = build_oracle(secret)
    circuit = build_zero_crossings_circuit(oracle, n, include_swaps)
    final = apply(initial_state(n + 1, 0, cap), circuit)
    outcome = measure_register(final, range(n))
    raw = outcome.basis_index
    count = raw if include_swaps else reverse_bits(raw, n)
    return ZeroCrossingRun(count, outcome.probability, oracle.query_count, raw, final)


def recover_secret(secret: BitString, cap: int | None = None) -> tuple:
    """Plain Bernstein-Vazirani: returns (recovered BitString, probability, oracle queries)."""
    n = secret.width
    oracle = build_oracle(secret)
    final = apply(initial_state(n + 1, 0, cap), build_bv_circuit(oracle, n))
    outcome = measure_register(final, range(n))
    return BitString(outcome.basis_index, n), outcome.probability, oracle.query_count


def sequency_wht_via_circuit(vectors, cap: int | None = None) -> np.ndarray:
    """Sequency transform of unit-norm real rows by simulating the transform circuit.

    Each row is loaded into the data register with the ancilla at |0>; the
    circuit's X flips it to |1>, and the result is read from the ancilla-1
    half of the final state.
    """
    rows = np.atleast_2d(np.asarray(vectors, dtype=np.float64))
    size = rows.shape[1]
    if size < 2 or size & (size - 1):
        raise ContractViolation(f"length must be a power of two >= 2, got {size}")
    n = size.bit_length() - 1
    _check_cap(n + 1, cap)
    norms = np.einsum("ij,ij->i", rows, rows)
    if np.any(np.abs(norms - 1) > NORM_TOL):
        raise ContractViolation("circuit route needs unit-norm input vectors")
    block = np.zeros((2 * size, rows.shape[0]), dtype=np.complex128)
    block[:size] = rows.T
    _run(block, build_sequency_wht_circuit(n))
    out = block[size:].T
    leak = float(np.abs(block[:size]).max())
    if leak > NORM_TOL:
        raise RuntimeError(f"ancilla left |1>: residual amplitude {leak:.3e}")
    return np.ascontiguousarray(out.real)
