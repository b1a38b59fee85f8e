"""State preparation: uniform superpositions, phase states, multi-signal inputs.

Two phase units are in play:

* ``encode_phase`` takes **revolutions per step** ``theta``: amplitude k is
  ``exp(2*pi*i*theta*k) / 2**(n/2)``.
* :class:`SignalSpec` phases are in **bins**, ``theta * 2**n``, the way
  experiments are labelled ("phases 3, 5, 7" on four qubits). The single
  conversion happens in :func:`encode_signal`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuits import MAX_QUBITS
from .errors import SizeOutOfRange, ZeroVector
from .statevector import StateVector


def _check_size(n: int) -> None:
    if not 1 <= n <= MAX_QUBITS:
        raise SizeOutOfRange(f"qubit count {n} outside [1, {MAX_QUBITS}]")


@dataclass(frozen=True)
class DyadicPhase:
    """``0.b1 b2 ... bn`` in binary."""

    bits: tuple[int, ...]

    def __post_init__(self):
        bits = tuple(int(b) for b in self.bits)
        if any(b not in (0, 1) for b in bits):
            raise ValueError(f"bits must be 0/1, got {self.bits}")
        object.__setattr__(self, "bits", bits)

    @property
    def value(self) -> float:
        return sum(b / 2**t for t, b in enumerate(self.bits, start=1))

    @property
    def numerator(self) -> int:
        """``value * 2**len(bits)`` as an integer."""
        return int("".join(map(str, self.bits)) or "0", 2)

    def __str__(self) -> str:
        return "0." + "".join(map(str, self.bits))


def dyadic_from_bits(bits: Sequence[int]) -> DyadicPhase:
    if len(bits) == 0:
        raise ValueError("need at least one bit")
    return DyadicPhase(tuple(bits))


def dyadic_from_int(m: int, n: int) -> DyadicPhase:
    """The phase ``m / 2**n`` (taken mod 1) as an n-bit fraction."""
    return DyadicPhase(tuple(int(c) for c in format(m % 2**n, f"0{n}b")))


def double_phase(p: DyadicPhase) -> DyadicPhase:
    """``2*theta mod 1``: drop the leading bit and shift left.

    Length is preserved by padding a trailing zero, so iterating ``n``
    times on an n-bit phase always reaches 0.
    """
    return DyadicPhase(p.bits[1:] + (0,))


@dataclass(frozen=True)
class SignalSpec:
    """Input signal as ``(phase_in_bins, amplitude)`` pairs on ``n_qubits``."""

    components: tuple[tuple[float, float], ...]
    n_qubits: int

    def __post_init__(self):
        comps = tuple((float(p), float(a)) for p, a in self.components)
        if not comps:
            raise ValueError("signal needs at least one component")
        for p, a in comps:
            if not (math.isfinite(p) and p >= 0):
                raise ValueError(f"phase must be finite and >= 0, got {p}")
            if not (math.isfinite(a) and a > 0):
                raise ValueError(f"amplitude must be finite and > 0, got {a}")
        _check_size(self.n_qubits)
        object.__setattr__(self, "components", comps)

    @property
    def phases(self) -> list[float]:
        return [p for p, _ in self.components]

    @property
    def amplitudes(self) -> list[float]:
        return [a for _, a in self.components]

    @classmethod
    def parse(cls, text: str, n_qubits: int) -> "SignalSpec":
        """Parse ``"3:1,5:2,7:4"``; a bare phase like ``"5"`` has amplitude 1."""
        comps = []
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            phase_s, _, amp_s = chunk.partition(":")
            try:
                comps.append((float(phase_s), float(amp_s) if amp_s else 1.0))
            except ValueError:
                raise ValueError(f"bad signal component {chunk!r}") from None
        return cls(tuple(comps), n_qubits)

    def to_text(self) -> str:
        return ",".join(f"{p:.9g}:{a:.9g}" for p, a in self.components)


@dataclass(frozen=True)
class EigenPair:
    lambda_min: float
    lambda_max: float

    def __post_init__(self):
        if not (self.lambda_min > 0 and self.lambda_max > 0):
            raise ValueError("eigenvalues must be positive")
        if self.lambda_min > self.lambda_max:
            raise ValueError("lambda_min exceeds lambda_max")

    @classmethod
    def of(cls, a: float, b: float) -> "EigenPair":
        return cls(min(a, b), max(a, b))


def prepare_uniform(n: int) -> StateVector:
    """``H^{(x)n} |0...0>``: every amplitude ``2**(-n/2)``."""
    _check_size(n)
    return StateVector(np.full(2**n, 2.0 ** (-n / 2), dtype=np.complex128))


def phase_state_amps(theta: float, n: int) -> np.ndarray:
    k = np.arange(2**n, dtype=np.float64)
    # reduce before multiplying so theta and theta + 1 give the same floats
    turns = np.mod(math.fmod(theta, 1.0) * k, 1.0)
    return np.exp(2j * np.pi * turns) * 2.0 ** (-n / 2)


def encode_phase(theta: float, n: int) -> StateVector:
    """Phase state with amplitude ``exp(2*pi*i*theta*k) / 2**(n/2)`` at index k."""
    _check_size(n)
    if not math.isfinite(theta):
        raise ValueError(f"theta must be finite, got {theta!r}")
    return StateVector(phase_state_amps(theta, n))


def encode_signal(spec: SignalSpec) -> StateVector:
    """Normalized ``sum_j a_j * encode_phase(phase_j / 2**n)``."""
    n = spec.n_qubits
    total = np.zeros(2**n, dtype=np.complex128)
    for p, a in spec.components:
        total += a * phase_state_amps(p / 2**n, n)
    nrm = np.linalg.norm(total)
    scale = math.sqrt(sum(a * a for a in spec.amplitudes))
    if nrm <= 1e-12 * scale:
        raise ZeroVector(f"signal {spec.to_text()!r} cancels to the zero vector")
    return StateVector(total / nrm)
