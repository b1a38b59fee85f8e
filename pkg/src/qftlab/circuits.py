"""Exact QFT / inverse-QFT circuits and a small circuit runner.

The QFT here is the ``exp(+2*pi*i*j*k/N)`` transform with ``1/sqrt(N)``
normalization, the conjugate of :func:`qftlab.analysis.dft_matrix`. A
final layer of SWAPs undoes the bit reversal of the rotation ladder, so
``circuit_matrix(qft_circuit(n))`` is the Fourier matrix itself.

Text format, one op per line::

    H q0
    CP q1 q0 angle=1.57079633
    SWAP q0 q3

``CP`` lists control first, then target. Angles carry 9 significant digits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np

from .errors import DimensionMismatch, IndexOutOfRange, SizeOutOfRange
from .gates import controlled_local, hadamard, SWAP_2
from .statevector import GateMatrix, StateVector, apply_local_array, embed

MAX_QUBITS = 14
MAX_MATRIX_QUBITS = 6

H = "H"
CP = "CP"
SWAP = "SWAP"
KINDS = (H, CP, SWAP)

_H = np.asarray(hadamard())


@dataclass(frozen=True)
class CircuitOp:
    kind: str
    targets: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(int(t) for t in self.targets))
        if self.kind not in KINDS:
            raise ValueError(f"unknown op kind {self.kind!r}")
        want = 1 if self.kind == H else 2
        if len(self.targets) != want:
            raise ValueError(f"{self.kind} takes {want} qubit(s), got {self.targets}")
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"{self.kind} targets must be distinct, got {self.targets}")
        if (self.angle is not None) != (self.kind == CP):
            raise ValueError("angle is required for CP and forbidden otherwise")

    def local_matrix(self) -> np.ndarray:
        if self.kind == H:
            return _H
        if self.kind == SWAP:
            return SWAP_2
        return controlled_local(np.diag([1.0, np.exp(1j * self.angle)]))

    def to_text(self) -> str:
        qs = " ".join(f"q{t}" for t in self.targets)
        if self.kind == CP:
            return f"{self.kind} {qs} angle={self.angle:.9g}"
        return f"{self.kind} {qs}"

    @classmethod
    def from_text(cls, line: str) -> "CircuitOp":
        parts = line.split()
        kind, rest = parts[0], parts[1:]
        angle = None
        qubits = []
        for tok in rest:
            if tok.startswith("angle="):
                angle = float(tok[len("angle="):])
            elif tok.startswith("q"):
                qubits.append(int(tok[1:]))
            else:
                raise ValueError(f"cannot parse token {tok!r} in {line!r}")
        return cls(kind, tuple(qubits), angle)


@dataclass(frozen=True)
class Circuit:
    n_qubits: int
    ops: tuple[CircuitOp, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "ops", tuple(self.ops))
        for op in self.ops:
            for t in op.targets:
                if not 0 <= t < self.n_qubits:
                    raise IndexOutOfRange(
                        f"{op.to_text()} addresses qubit {t} of a {self.n_qubits}-qubit circuit"
                    )

    def __len__(self) -> int:
        return len(self.ops)

    def count(self, kind: str) -> int:
        return sum(op.kind == kind for op in self.ops)

    def to_text(self) -> str:
        return "".join(op.to_text() + "\n" for op in self.ops)

    @classmethod
    def from_text(cls, text: str, n_qubits: int) -> "Circuit":
        ops = [CircuitOp.from_text(ln) for ln in text.splitlines() if ln.strip()]
        return cls(n_qubits, tuple(ops))


def _check_size(n: int, limit: int = MAX_QUBITS) -> None:
    if not 1 <= n <= limit:
        raise SizeOutOfRange(f"qubit count {n} outside [1, {limit}]")


def qft_circuit(n: int) -> Circuit:
    """Hadamard + controlled-rotation ladder, then bit-reversal swaps.

    Qubit ``i`` receives H and then a rotation of ``pi / 2**(j-i)``
    controlled by every less significant qubit ``j``.
    """
    _check_size(n)
    ops: list[CircuitOp] = []
    for i in range(n):
        ops.append(CircuitOp(H, (i,)))
        for j in range(i + 1, n):
            ops.append(CircuitOp(CP, (j, i), math.pi / 2 ** (j - i)))
    for i in range(n // 2):
        ops.append(CircuitOp(SWAP, (i, n - 1 - i)))
    return Circuit(n, tuple(ops))


def iqft_circuit(n: int) -> Circuit:
    """Reverse of :func:`qft_circuit` with every rotation conjugated."""
    fwd = qft_circuit(n)
    ops = [
        CircuitOp(op.kind, op.targets, -op.angle) if op.kind == CP else op
        for op in reversed(fwd.ops)
    ]
    return Circuit(n, tuple(ops))


def run_circuit(c: Circuit, s: StateVector) -> StateVector:
    if c.n_qubits != s.n_qubits:
        raise DimensionMismatch(
            f"circuit has {c.n_qubits} qubits, state has {s.n_qubits}"
        )
    v = np.asarray(s, dtype=np.complex128)
    for op in c.ops:
        v = apply_local_array(op.local_matrix(), op.targets, v)
    return StateVector(v)


def circuit_matrix(c: Circuit) -> GateMatrix:
    """Full unitary of ``c``; only for small registers."""
    _check_size(c.n_qubits, MAX_MATRIX_QUBITS)
    u = np.eye(2**c.n_qubits, dtype=np.complex128)
    for op in c.ops:
        u = np.asarray(embed(op.local_matrix(), op.targets, c.n_qubits)) @ u
    return GateMatrix(u)


def gate_counts(c: Circuit) -> dict[str, int]:
    return {k: c.count(k) for k in KINDS}


def compose(circuits: Iterable[Circuit]) -> Circuit:
    circuits = list(circuits)
    n = circuits[0].n_qubits
    if any(c.n_qubits != n for c in circuits):
        raise DimensionMismatch("cannot compose circuits of different widths")
    return Circuit(n, tuple(op for c in circuits for op in c.ops))
