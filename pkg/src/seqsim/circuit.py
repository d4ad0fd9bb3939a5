"""Gate-level circuit IR, the three circuit constructions, and the text format.

Qubit ``j < n`` of every builder's output holds bit ``j`` of the data
register; the ancilla is qubit ``n``.
"""
from __future__ import annotations

import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Union

from .core import BitString
from .exceptions import ContractViolation

ARITY = {"H": 1, "X": 1, "CNOT": 2, "SWAP": 2, "TOFFOLI": 3}
MNEMONIC = {"H": "h", "X": "x", "CNOT": "cx", "TOFFOLI": "ccx", "SWAP": "swap"}
KIND_OF = {v: k for k, v in MNEMONIC.items()}


@dataclass(frozen=True)
class Gate:
    """One gate. ``qubits`` is (target,), (control, target), (a, b) or (c1, c2, target)."""

    kind: str
    qubits: tuple

    def __post_init__(self):
        if self.kind not in ARITY:
            raise ContractViolation(f"unknown gate kind {self.kind!r}")
        qubits = tuple(int(q) for q in self.qubits)
        if len(qubits) != ARITY[self.kind]:
            raise ContractViolation(f"{self.kind} takes {ARITY[self.kind]} qubits, got {len(qubits)}")
        if len(set(qubits)) != len(qubits):
            raise ContractViolation(f"{self.kind} qubits must be distinct: {qubits}")
        if min(qubits) < 0:
            raise ContractViolation(f"negative qubit index in {qubits}")
        object.__setattr__(self, "qubits", qubits)

    def to_text(self) -> str:
        return " ".join([MNEMONIC[self.kind], *map(str, self.qubits)])


class OracleHandle:
    """Query-counting wrapper around the oracle sub-circuit.

    The count goes up once each time the simulator runs the oracle block,
    regardless of how many basis states are carried through it at once.
    Not safe for concurrent simulation of the same handle.
    """

    def __init__(self, inner: "Circuit"):
        self._inner = inner
        self._lock = threading.Lock()
        self.query_count = 0

    @property
    def num_qubits(self) -> int:
        return self._inner.num_qubits

    def record_query(self) -> tuple:
        with self._lock:
            self.query_count += 1
        return self._inner.gates

    def reveal(self) -> "Circuit":
        """The wrapped circuit, for export and inspection. Does not count as a query."""
        return self._inner

    def __repr__(self):
        return f"OracleHandle(num_qubits={self.num_qubits}, query_count={self.query_count})"


@dataclass(frozen=True)
class OracleBlock:
    """Placeholder for one oracle application inside a circuit."""

    handle: OracleHandle

    @property
    def gates(self) -> tuple:
        return self.handle.reveal().gates


Op = Union[Gate, OracleBlock]


@dataclass(frozen=True)
class Circuit:
    num_qubits: int
    ops: tuple = ()
    label: str = ""

    def __post_init__(self):
        if self.num_qubits < 1:
            raise ContractViolation(f"num_qubits must be >= 1, got {self.num_qubits}")
        ops = tuple(self.ops)
        for op in ops:
            if isinstance(op, OracleBlock):
                if op.handle.num_qubits != self.num_qubits:
                    raise ContractViolation(
                        f"oracle acts on {op.handle.num_qubits} qubits, circuit has {self.num_qubits}")
            elif isinstance(op, Gate):
                if max(op.qubits) >= self.num_qubits:
                    raise ContractViolation(f"{op} out of range for {self.num_qubits} qubits")
            else:
                raise ContractViolation(f"not a circuit operation: {op!r}")
        object.__setattr__(self, "ops", ops)
        if "\n" in self.label:
            raise ContractViolation("label must be a single line")

    @property
    def gates(self) -> tuple:
        """All gates in application order, oracle blocks expanded."""
        out = []
        for op in self.ops:
            out.extend(op.gates if isinstance(op, OracleBlock) else (op,))
        return tuple(out)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __len__(self) -> int:
        return len(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if other.num_qubits != self.num_qubits:
            raise ContractViolation("cannot concatenate circuits of different widths")
        return Circuit(self.num_qubits, self.ops + other.ops, self.label)


def _layer(num_qubits: int, kind: str, qubits: Iterable[int]) -> list:
    return [Gate(kind, (q,)) for q in qubits]


def build_oracle(s: BitString) -> OracleHandle:
    """Oracle for ``f(x) = s.x``: one CNOT into the ancilla per set bit of ``s``."""
    n = s.width
    gates = [Gate("CNOT", (j, n)) for j in range(n) if s[j]]
    return OracleHandle(Circuit(n + 1, tuple(gates), label="oracle"))


def build_uz(n: int, include_swaps: bool = True) -> Circuit:
    """Toffoli cascade (controls = previous data qubit and ancilla) plus optional order reversal.

    With the ancilla in |1>, data qubit k ends up holding s_0 ^ ... ^ s_k;
    the swaps then put that value at position n-1-k.
    """
    if n < 1:
        raise ContractViolation(f"n must be >= 1, got {n}")
    gates = [Gate("TOFFOLI", (k - 1, n, k)) for k in range(1, n)]
    if include_swaps:
        gates += [Gate("SWAP", (j, n - 1 - j)) for j in range(n // 2)]
    return Circuit(n + 1, tuple(gates), label="uz")


def build_bv_circuit(oracle: OracleHandle, n: int) -> Circuit:
    """Bernstein-Vazirani core: X on ancilla, H everywhere, oracle, H everywhere."""
    if oracle.num_qubits != n + 1:
        raise ContractViolation(f"oracle acts on {oracle.num_qubits} qubits, expected {n + 1}")
    h_all = _layer(n + 1, "H", range(n + 1))
    ops = [Gate("X", (n,)), *h_all, OracleBlock(oracle), *h_all]
    return Circuit(n + 1, tuple(ops), label="bv")


def build_zero_crossings_circuit(oracle: OracleHandle, n: int, include_swaps: bool = True) -> Circuit:
    bv = build_bv_circuit(oracle, n)
    return Circuit(n + 1, bv.ops + build_uz(n, include_swaps).ops, label="zero_crossings")


def build_sequency_wht_circuit(n: int) -> Circuit:
    """X on ancilla, H on the n data qubits, then U_Z with swaps.

    On the data register (ancilla starting in |0>, flipped to |1> by the X)
    this is the sequency-ordered Walsh-Hadamard transform.
    """
    if n < 1:
        raise ContractViolation(f"n must be >= 1, got {n}")
    ops = [Gate("X", (n,)), *_layer(n + 1, "H", range(n))]
    return Circuit(n + 1, tuple(ops) + build_uz(n, True).ops, label="sequency_wht")


@dataclass
class GateCensus:
    counts: dict = field(default_factory=dict)
    depth: int = 0

    def __getitem__(self, kind):
        return self.counts.get(kind, 0)


def circuit_depth(c: Circuit) -> int:
    """Greedy ASAP layering: each gate sits one layer above the latest gate on any of its qubits."""
    frontier = [0] * c.num_qubits
    for g in c.gates:
        layer = 1 + max(frontier[q] for q in g.qubits)
        for q in g.qubits:
            frontier[q] = layer
    return max(frontier)


def gate_counts(c: Circuit) -> GateCensus:
    counts = Counter(g.kind for g in c.gates)
    return GateCensus(dict(sorted(counts.items())), circuit_depth(c))


def to_text(c: Circuit) -> str:
    lines = [f"qubits {c.num_qubits}"]
    if c.label:
        lines.append(f"# {c.label}")
    lines += [g.to_text() for g in c.gates]
    return "\n".join(lines) + "\n"


def from_text(text: str) -> Circuit:
    """Parse the line format produced by :func:`to_text`.

    The first ``#`` line right after the header is the label; other comment
    and blank lines are skipped.
    """
    lines = text.splitlines()
    if not lines:
        raise ContractViolation("empty circuit text")
    head = lines[0].split()
    if len(head) != 2 or head[0] != "qubits" or not head[1].isdigit():
        raise ContractViolation(f"bad header line: {lines[0]!r}")
    num_qubits = int(head[1])
    label = ""
    body = lines[1:]
    if body and body[0].startswith("# "):
        label = body[0][2:]
        body = body[1:]
    gates = []
    for lineno, line in enumerate(body, start=2):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        kind = KIND_OF.get(parts[0])
        if kind is None:
            raise ContractViolation(f"line {lineno}: unknown mnemonic {parts[0]!r}")
        try:
            qubits = tuple(int(p) for p in parts[1:])
        except ValueError:
            raise ContractViolation(f"line {lineno}: bad qubit index in {line!r}") from None
        gates.append(Gate(kind, qubits))
    return Circuit(num_qubits, tuple(gates), label)
