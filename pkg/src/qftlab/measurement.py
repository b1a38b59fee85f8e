"""Projective measurement in the computational basis.

Sampling uses numpy's PCG64 bit generator seeded through
``numpy.random.SeedSequence``. Independent streams for parallel runs come
from ``SeedSequence(seed).spawn(k)``; stream ``i`` is the i-th child.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import IndexOutOfRange, NotNormalized
from .gates import projector
from .statevector import StateVector, apply_local_array

PROB_TOL = 1e-10
CSV_HEADER = ("outcome_binary", "outcome_decimal", "probability", "counts")
MISSING_COUNT = "—"


@dataclass(frozen=True, eq=False)
class OutcomeDistribution:
    n_qubits: int
    probs: np.ndarray

    def __post_init__(self):
        probs = np.array(self.probs, dtype=np.float64)
        if probs.shape != (2**self.n_qubits,):
            raise ValueError(f"expected {2**self.n_qubits} probabilities, got {probs.shape}")
        if np.any(probs < 0) or abs(probs.sum() - 1.0) > PROB_TOL:
            raise NotNormalized("probabilities must be >= 0 and sum to 1")
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    def __getitem__(self, outcome: int | str) -> float:
        if isinstance(outcome, str):
            outcome = int(outcome, 2)
        return float(self.probs[outcome])

    def label(self, outcome: int) -> str:
        return format(outcome, f"0{self.n_qubits}b")

    def argmax(self) -> int:
        return int(np.argmax(self.probs))

    @classmethod
    def mixture(cls, parts: list["OutcomeDistribution"]) -> "OutcomeDistribution":
        """Equal-weight mixture of distributions on the same register."""
        probs = np.mean([p.probs for p in parts], axis=0)
        return cls(parts[0].n_qubits, probs)


@dataclass(frozen=True)
class ShotCounts:
    counts: dict[int, int] = field(default_factory=dict)
    shots: int = 0

    def __post_init__(self):
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts do not add up to shots")

    def get(self, outcome: int) -> int:
        return self.counts.get(outcome, 0)


def distribution(s: StateVector) -> OutcomeDistribution:
    """Born-rule probabilities ``|amp_m|**2`` for every outcome m."""
    probs = np.abs(np.asarray(s)) ** 2
    return OutcomeDistribution(s.n_qubits, probs / probs.sum())


def outcome_probability(s: StateVector, outcome: int) -> float:
    """Probability of one outcome via the projector product ``(x)_k P_{b_k}``.

    Slow path; used to cross-check :func:`distribution`.
    """
    n = s.n_qubits
    if not 0 <= outcome < 2**n:
        raise IndexOutOfRange(f"outcome {outcome} outside [0, {2**n})")
    v = np.asarray(s, dtype=np.complex128)
    for q in range(n):
        bit = (outcome >> (n - 1 - q)) & 1
        v = apply_local_array(projector(bit), [q], v)
    return float(np.vdot(v, v).real)


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))


def spawn_rngs(seed: int, k: int) -> list[np.random.Generator]:
    return [np.random.Generator(np.random.PCG64(ss)) for ss in np.random.SeedSequence(seed).spawn(k)]


def sample(
    s: StateVector | OutcomeDistribution,
    shots: int,
    seed: int | None = None,
    rng: np.random.Generator | None = None,
) -> ShotCounts:
    """Multinomial draw of ``shots`` outcomes.

    Pass either ``seed`` or a ready ``rng``; the same state, shots and seed
    always give the same counts.
    """
    if shots < 0:
        raise ValueError(f"shots must be >= 0, got {shots}")
    if shots == 0:
        return ShotCounts({}, 0)
    dist = s if isinstance(s, OutcomeDistribution) else distribution(s)
    if rng is None:
        rng = make_rng(0 if seed is None else seed)
    p = dist.probs / dist.probs.sum()
    drawn = rng.multinomial(shots, p)
    counts = {int(i): int(c) for i, c in enumerate(drawn) if c}
    return ShotCounts(counts, shots)


def decode_phase(outcome: int, n: int) -> float:
    """Phase in revolutions for a measured bin: ``outcome / 2**n``."""
    if not 0 <= outcome < 2**n:
        raise IndexOutOfRange(f"outcome {outcome} outside [0, {2**n})")
    return outcome / 2**n


def histogram_csv(dist: OutcomeDistribution, counts: ShotCounts | None = None) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for m, p in enumerate(dist.probs):
        c = str(counts.get(m)) if counts is not None else MISSING_COUNT
        w.writerow((dist.label(m), m, f"{p:.9f}", c))
    return buf.getvalue()
