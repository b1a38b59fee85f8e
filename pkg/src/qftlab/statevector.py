"""Dense state vectors, unitary gate matrices and the Kronecker algebra.

Bit ordering is big-endian throughout the package: qubit 0 is the most
significant bit of a basis-state index, so the register ``|b1 b2 ... bn>``
has index ``b1*2**(n-1) + ... + bn`` and reads left to right like the
binary fraction ``0.b1 b2 ... bn``.

Amplitudes are stored as ``numpy.complex128``; values are immutable after
construction (the backing arrays are marked read-only).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from .errors import (
    BadArity,
    DimensionMismatch,
    DuplicateTarget,
    IndexOutOfRange,
    NotNormalized,
    NotUnitary,
)

NORM_TOL = 1e-10
UNITARY_TOL = 1e-10


def _frozen(arr: np.ndarray) -> np.ndarray:
    arr = np.array(arr, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


def _log2_exact(size: int) -> int:
    if size < 1 or size & (size - 1):
        raise DimensionMismatch(f"length {size} is not a power of two")
    return size.bit_length() - 1


@dataclass(frozen=True, eq=False)
class StateVector:
    """A normalized n-qubit register of ``2**n`` complex amplitudes."""

    amps: np.ndarray

    def __post_init__(self):
        amps = _frozen(self.amps)
        if amps.ndim != 1:
            raise DimensionMismatch(f"state must be 1-D, got shape {amps.shape}")
        _log2_exact(amps.size)
        if not np.all(np.isfinite(amps)):
            raise NotNormalized("state contains NaN or Inf")
        nrm = float(np.linalg.norm(amps))
        if abs(nrm - 1.0) > NORM_TOL:
            raise NotNormalized(f"state norm is {nrm!r}, expected 1")
        object.__setattr__(self, "amps", amps)

    @property
    def n_qubits(self) -> int:
        return _log2_exact(self.amps.size)

    @classmethod
    def basis(cls, index: int, n_qubits: int) -> "StateVector":
        """Computational basis state ``|index>`` on ``n_qubits`` qubits."""
        if not 0 <= index < 2**n_qubits:
            raise IndexOutOfRange(f"basis index {index} outside [0, {2**n_qubits})")
        amps = np.zeros(2**n_qubits, dtype=np.complex128)
        amps[index] = 1.0
        return cls(amps)

    @classmethod
    def from_bits(cls, bits: str) -> "StateVector":
        """Basis state from a big-endian bit string, e.g. ``"0101"``."""
        return cls.basis(int(bits, 2), len(bits))

    @classmethod
    def normalized(cls, amps) -> "StateVector":
        amps = np.asarray(amps, dtype=np.complex128)
        nrm = np.linalg.norm(amps)
        if nrm == 0:
            raise NotNormalized("cannot normalize the zero vector")
        return cls(amps / nrm)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.amps, dtype=dtype)

    def __len__(self) -> int:
        return self.amps.size

    def allclose(self, other, atol: float = 1e-12) -> bool:
        return bool(np.allclose(self.amps, np.asarray(other), rtol=0, atol=atol))


@dataclass(frozen=True, eq=False)
class GateMatrix:
    """A ``2**arity x 2**arity`` unitary matrix."""

    entries: np.ndarray

    def __post_init__(self):
        m = _frozen(self.entries)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise DimensionMismatch(f"gate must be square, got shape {m.shape}")
        _log2_exact(m.shape[0])
        if not is_unitary(m):
            raise NotUnitary("gate matrix is not unitary within 1e-10")
        object.__setattr__(self, "entries", m)

    @property
    def arity(self) -> int:
        return _log2_exact(self.entries.shape[0])

    @property
    def dagger(self) -> "GateMatrix":
        return GateMatrix(self.entries.conj().T)

    def __matmul__(self, other: "GateMatrix") -> "GateMatrix":
        return GateMatrix(self.entries @ other.entries)

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.entries, dtype=dtype)


VectorLike = Union[StateVector, Sequence[complex], np.ndarray]
MatrixLike = Union[GateMatrix, np.ndarray]


def is_unitary(m, tol: float = UNITARY_TOL) -> bool:
    m = np.asarray(m)
    return bool(np.allclose(m.conj().T @ m, np.eye(m.shape[0]), rtol=0, atol=tol))


def norm(s: VectorLike) -> float:
    """Euclidean norm; works on unnormalized vectors too."""
    return float(np.linalg.norm(np.asarray(s, dtype=np.complex128)))


def kron_vec(a: VectorLike, b: VectorLike) -> np.ndarray:
    """``a (x) b``: element ``i*len(b) + j`` is ``a[i] * b[j]``."""
    a = np.asarray(a, dtype=np.complex128).ravel()
    b = np.asarray(b, dtype=np.complex128).ravel()
    return (a[:, None] * b[None, :]).ravel()


def kron_mat(a: MatrixLike, b: MatrixLike) -> GateMatrix:
    return GateMatrix(np.kron(np.asarray(a), np.asarray(b)))


def _check_targets(targets: Sequence[int], n: int) -> list[int]:
    targets = [int(t) for t in targets]
    for t in targets:
        if not 0 <= t < n:
            raise IndexOutOfRange(f"qubit {t} outside register of {n} qubits")
    if len(set(targets)) != len(targets):
        raise DuplicateTarget(f"repeated target in {targets}")
    return targets


def apply_full(u: MatrixLike, s: VectorLike) -> StateVector:
    """Plain matrix-vector product ``U|s>``."""
    m = np.asarray(u)
    v = np.asarray(s, dtype=np.complex128)
    if m.shape[1] != v.size:
        raise DimensionMismatch(
            f"gate acts on {m.shape[1]} amplitudes, state has {v.size}"
        )
    return StateVector(m @ v)


def apply_local_array(u: np.ndarray, targets: Sequence[int], v: np.ndarray) -> np.ndarray:
    """Contract a k-qubit matrix into the ``targets`` axes of a raw amplitude array.

    No normalization check, so this also serves projectors.
    """
    n = _log2_exact(v.size)
    k = _log2_exact(u.shape[0])
    if k != len(targets):
        raise DimensionMismatch(f"gate arity {k} but {len(targets)} targets given")
    targets = _check_targets(targets, n)
    psi = v.reshape((2,) * n)
    gate = u.reshape((2,) * (2 * k))
    out = np.tensordot(gate, psi, axes=(list(range(k, 2 * k)), targets))
    # tensordot puts the k output axes first; move them back into place
    out = np.moveaxis(out, list(range(k)), targets)
    return np.ascontiguousarray(out).reshape(v.size)


def apply_local(u: MatrixLike, targets: Sequence[int], s: StateVector) -> StateVector:
    """Apply ``u`` to the listed qubits without building the 2^n x 2^n matrix.

    ``targets[i]`` is the register qubit wired to the i-th (big-endian)
    input of ``u``. Cost is O(2^n * 2^arity).
    """
    m = np.asarray(u, dtype=np.complex128)
    return StateVector(apply_local_array(m, targets, np.asarray(s, dtype=np.complex128)))


def embed(u: MatrixLike, targets: Sequence[int], n: int) -> GateMatrix:
    """Identity-pad ``u`` onto ``targets`` of an n-qubit register.

    Built entry by entry from the index bits, independently of
    :func:`apply_local`, so the two can check each other.
    """
    m = np.asarray(u, dtype=np.complex128)
    k = _log2_exact(m.shape[0])
    if k != len(targets):
        raise BadArity(f"gate arity {k} but {len(targets)} targets given")
    targets = _check_targets(targets, n)
    dim = 2**n
    idx = np.arange(dim)
    shifts = [n - 1 - t for t in targets]
    sub = np.zeros(dim, dtype=np.int64)
    for s in shifts:
        sub = (sub << 1) | ((idx >> s) & 1)
    target_mask = sum(1 << s for s in shifts)
    rest = idx & ~target_mask
    same_rest = rest[:, None] == rest[None, :]
    full = np.where(same_rest, m[sub[:, None], sub[None, :]], 0.0)
    return GateMatrix(full)
