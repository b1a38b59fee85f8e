"""The gate set used to build Fourier circuits.

``phase`` takes an arbitrary angle; circuit builders pass the dyadic
rotation angles ``2*pi / 2**k`` they need.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import BadArity, EqualIndices, IndexOutOfRange
from .statevector import GateMatrix, MatrixLike, embed

TWO_PI = 2.0 * math.pi


def canonical_angle(radians: float) -> float:
    """Reduce an angle to ``[0, 2*pi)``."""
    return float(np.mod(radians, TWO_PI))


def hadamard() -> GateMatrix:
    return GateMatrix(np.array([[1, 1], [1, -1]]) / math.sqrt(2))


def phase(angle: float) -> GateMatrix:
    """``diag(1, exp(i*angle))``."""
    if not math.isfinite(angle):
        raise ValueError(f"phase angle must be finite, got {angle!r}")
    return GateMatrix(np.diag([1.0, np.exp(1j * angle)]))


def identity_gate() -> GateMatrix:
    return GateMatrix(np.eye(2))


def pauli_x() -> GateMatrix:
    return GateMatrix(np.array([[0, 1], [1, 0]]))


def _check_pair(p: int, q: int, n: int) -> None:
    for i in (p, q):
        if not 0 <= i < n:
            raise IndexOutOfRange(f"qubit {i} outside register of {n} qubits")
    if p == q:
        raise EqualIndices(f"indices must differ, got {p} twice")


SWAP_2 = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=np.complex128
)


def swap_gate(p: int, q: int, n: int) -> GateMatrix:
    """Permutation matrix exchanging the bits of qubits ``p`` and ``q``."""
    _check_pair(p, q, n)
    dim = 2**n
    idx = np.arange(dim)
    sp, sq = n - 1 - p, n - 1 - q
    bp, bq = (idx >> sp) & 1, (idx >> sq) & 1
    flipped = idx ^ ((bp ^ bq) << sp) ^ ((bp ^ bq) << sq)
    m = np.zeros((dim, dim), dtype=np.complex128)
    m[flipped, idx] = 1.0
    return GateMatrix(m)


def controlled_local(u: MatrixLike) -> np.ndarray:
    """4x4 matrix of ``u`` controlled by the first of two qubits."""
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise BadArity(f"controlled gates take a single-qubit U, got shape {u.shape}")
    m = np.eye(4, dtype=np.complex128)
    m[2:, 2:] = u
    return m


def controlled(u: MatrixLike, control: int, target: int, n: int) -> GateMatrix:
    """``|0><0|_c (x) I + |1><1|_c (x) U_t`` on an n-qubit register."""
    u = np.asarray(u, dtype=np.complex128)
    if u.shape != (2, 2):
        raise BadArity(f"controlled gates take a single-qubit U, got shape {u.shape}")
    _check_pair(control, target, n)
    p0, p1 = projector(0), projector(1)
    # sum of two identity-padded terms, each a product of local factors
    low = _pad_product({control: p0}, n)
    high = _pad_product({control: p1, target: u}, n)
    return GateMatrix(low + high)


def _pad_product(factors: dict[int, np.ndarray], n: int) -> np.ndarray:
    out = np.ones((1, 1), dtype=np.complex128)
    for q in range(n):
        out = np.kron(out, factors.get(q, np.eye(2)))
    return out


def projector(bit: int) -> np.ndarray:
    """``|bit><bit|``; idempotent and self-adjoint but not unitary."""
    if bit not in (0, 1):
        raise ValueError(f"projector bit must be 0 or 1, got {bit!r}")
    m = np.zeros((2, 2), dtype=np.complex128)
    m[bit, bit] = 1.0
    return m


def controlled_phase(angle: float, control: int, target: int, n: int) -> GateMatrix:
    return controlled(phase(angle), control, target, n)


def local_swap() -> GateMatrix:
    return GateMatrix(SWAP_2)


def embed_controlled(u: MatrixLike, control: int, target: int, n: int) -> GateMatrix:
    """Same as :func:`controlled`, built through :func:`embed` instead."""
    return embed(controlled_local(u), [control, target], n)
