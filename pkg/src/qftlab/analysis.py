"""Classical oracles and the accuracy checks.

Covers the unitary DFT, sinc reconstruction of sampled signals, the
continuous and discrete spectral-leakage expressions, the minimal
amplitude bound and the eigenvalue-ratio bound.

DFT convention: ``X_k = N**-0.5 * sum_n x_n exp(-2*pi*i*k*n/N)``. The QFT
built in :mod:`qftlab.circuits` is its complex conjugate.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .circuits import MAX_MATRIX_QUBITS, iqft_circuit, run_circuit
from .encoding import EigenPair, SignalSpec, encode_phase
from .errors import NonpositiveDuration, SizeOutOfRange
from .measurement import distribution
from .statevector import GateMatrix

SIMPSON_PANELS = 10_000
DEFAULT_SINC_WINDOW = 500


# ---------------------------------------------------------------- DFT


def dft(x: Sequence[complex]) -> np.ndarray:
    """Unitary DFT by direct summation, O(N^2)."""
    x = np.asarray(x, dtype=np.complex128).ravel()
    N = x.size
    if N == 0:
        raise ValueError("dft of an empty vector")
    n = np.arange(N)
    out = np.empty(N, dtype=np.complex128)
    # row blocks keep the kernel matrix small for long inputs
    step = max(1, 2**22 // N)
    for start in range(0, N, step):
        k = np.arange(start, min(N, start + step))
        turns = np.mod(np.outer(k, n), N) / N
        out[k] = np.exp(-2j * np.pi * turns) @ x
    return out / math.sqrt(N)


def dft_matrix(n_qubits: int) -> GateMatrix:
    """``F[k, m] = exp(-2*pi*i*k*m/N) / sqrt(N)`` with ``N = 2**n_qubits``."""
    if not 1 <= n_qubits <= MAX_MATRIX_QUBITS:
        raise SizeOutOfRange(f"dft_matrix supports 1..{MAX_MATRIX_QUBITS} qubits")
    N = 2**n_qubits
    j = np.arange(N)
    turns = np.mod(np.outer(j, j), N) / N
    return GateMatrix(np.exp(-2j * np.pi * turns) / math.sqrt(N))


# ------------------------------------------------------ sinc / sampling


@dataclass(frozen=True)
class SampledSignal:
    """Samples ``x(n*T)`` for ``n = 0, 1, ...`` taken at ``sample_rate = 1/T``."""

    sample_rate: float
    samples: tuple[float, ...]
    f_c: float

    def __post_init__(self):
        if not self.sample_rate > 0:
            raise ValueError("sample_rate must be positive")
        samples = tuple(float(v) for v in self.samples)
        if not all(math.isfinite(v) for v in samples):
            raise ValueError("samples must be finite")
        object.__setattr__(self, "samples", samples)

    @property
    def period(self) -> float:
        return 1.0 / self.sample_rate

    @property
    def meets_nyquist(self) -> bool:
        return self.sample_rate >= 2 * self.f_c

    @classmethod
    def from_function(cls, f, sample_rate: float, n_samples: int, f_c: float) -> "SampledSignal":
        t = np.arange(n_samples) / sample_rate
        return cls(sample_rate, tuple(np.asarray(f(t), dtype=float)), f_c)


def sinc(x):
    """Normalized sinc, equal to 1 at 0."""
    return np.sinc(x)


def sinc_reconstruct(sig: SampledSignal, t: float, window: int = DEFAULT_SINC_WINDOW) -> float:
    """Truncated Whittaker sum over samples within ``window`` of ``t/T``."""
    if window < 1:
        raise ValueError("window must be >= 1")
    T = sig.period
    centre = int(round(t / T))
    lo = max(0, centre - window)
    hi = min(len(sig.samples), centre + window + 1)
    if lo >= hi:
        return 0.0
    n = np.arange(lo, hi)
    u = t / T - n
    # exact grid hits collapse to the sample value
    hit = np.flatnonzero(u == 0)
    if hit.size:
        return sig.samples[lo + int(hit[0])]
    x = np.asarray(sig.samples[lo:hi])
    return float(np.dot(x, sinc(u)))


# ------------------------------------------------------------ leakage


class LeakageIntegral(NamedTuple):
    value: complex
    bound: float
    t_jk: float


def _periods(nu: float, omega: float, T: float) -> tuple[float, int]:
    """Remainder ``t_jk`` and whole periods ``n_jk`` of ``T`` over ``1/|nu - omega|``."""
    if nu == omega:
        return T, 0
    period = 1.0 / abs(nu - omega)
    n_jk = math.floor(T / period)
    t_jk = math.fmod(T, period)
    return t_jk, n_jk


def leakage_integral(a: float, nu: float, omega: float, T: float) -> LeakageIntegral:
    """Closed form of ``int_0^T a * exp(2*pi*i*(nu - omega)*t) dt`` and its bound.

    The bound is ``|a| * t_jk`` where ``t_jk`` is what is left of ``T``
    after removing whole periods of the beat frequency.
    """
    if not T > 0:
        raise NonpositiveDuration(f"T must be positive, got {T}")
    if nu == omega:
        return LeakageIntegral(complex(a * T), abs(a) * T, T)
    d = nu - omega
    t_jk, _ = _periods(nu, omega, T)
    # (exp(2 pi i d T) - 1) / (2 pi i d) rewritten without the 1/d singularity
    half_turns = math.fmod(d * T / 2, 1.0)
    value = a * T * np.exp(2j * np.pi * half_turns) * np.sinc(d * T)
    return LeakageIntegral(complex(value), abs(a) * t_jk, t_jk)


def simpson(y: np.ndarray, h: float) -> np.ndarray:
    """Composite Simpson rule along the last axis (odd number of points)."""
    if y.shape[-1] % 2 == 0:
        raise ValueError("Simpson needs an even number of panels")
    return h / 3 * (y[..., 0] + y[..., -1] + 4 * y[..., 1:-1:2].sum(-1) + 2 * y[..., 2:-1:2].sum(-1))


def leakage_quadrature(a: float, nu, omega: float, T, panels: int = SIMPSON_PANELS) -> np.ndarray:
    """Composite-Simpson value of the leakage integral; broadcasts over ``nu`` and ``T``."""
    nu, T = np.broadcast_arrays(np.asarray(nu, float), np.asarray(T, float))
    s = np.linspace(0.0, 1.0, panels + 1)
    t = T[..., None] * s
    y = a * np.exp(2j * np.pi * (nu[..., None] - omega) * t)
    return simpson(y, 1.0 / panels) * T


def discrete_leakage(a: float, nu: float, k: int, N: int) -> complex:
    """``(a/sqrt(N)) * sum_{n<N} exp(2*pi*i*(nu - k)*n/N)`` as a geometric series."""
    if N < 1:
        raise ValueError("N must be >= 1")
    d = nu - k
    step_turns = math.fmod(d / N, 1.0)
    if step_turns == 0.0:
        total = complex(N)
    else:
        num = np.exp(2j * np.pi * math.fmod(d, 1.0)) - 1.0
        den = np.exp(2j * np.pi * step_turns) - 1.0
        total = complex(num / den)
    return a / math.sqrt(N) * total


@dataclass(frozen=True)
class LeakageReport:
    nu: float
    k: int
    magnitude: float
    integral_magnitude: float
    bound: float
    t_jk: float
    n_jk: int

    def to_dict(self) -> dict:
        return asdict(self)


def leakage_report(a: float, nu: float, k: int, N: int, T: float = 1.0) -> LeakageReport:
    """Discrete ``|X_jk|`` on N points next to the continuous integral over ``[0, T]``."""
    li = leakage_integral(a, nu, k, T)
    _, n_jk = _periods(nu, k, T)
    return LeakageReport(
        nu=nu,
        k=k,
        magnitude=abs(discrete_leakage(a, nu, k, N)),
        integral_magnitude=abs(li.value),
        bound=li.bound,
        t_jk=li.t_jk,
        n_jk=n_jk,
    )


def leakage_scan(nus: Sequence[float], k: int, N: int, T: float = 1.0, a: float = 1.0) -> list[LeakageReport]:
    return [leakage_report(a, float(nu), k, N, T) for nu in nus]


# ----------------------------------------------------------- theorems


@dataclass(frozen=True)
class Theorem1Report:
    """Minimal-amplitude check under both denominators.

    ``bound_stated`` divides the total amplitude by ``2**(n/2)``,
    ``bound_proof`` by ``2**n``. ``leakage_ratio`` is
    ``min_amplitude * sqrt(N) / sum_amplitudes``, the raw size of the
    "much greater than" condition.
    """

    n_qubits: int
    min_amplitude: float
    sum_amplitudes: float
    bound_stated: float
    bound_proof: float
    satisfied_stated: bool
    satisfied_proof: bool
    leakage_ratio: float

    def to_dict(self) -> dict:
        return asdict(self)


def _geq(x: float, bound: float) -> bool:
    # absorbs rounding in the amplitude sum at the equality case
    return x >= bound * (1 - 1e-12)


def check_theorem1(spec: SignalSpec) -> Theorem1Report:
    amps = [abs(a) for a in spec.amplitudes]
    n = spec.n_qubits
    lo, total = min(amps), math.fsum(amps)
    stated = total / 2 ** (n / 2)
    proof = total / 2**n
    return Theorem1Report(
        n_qubits=n,
        min_amplitude=lo,
        sum_amplitudes=total,
        bound_stated=stated,
        bound_proof=proof,
        satisfied_stated=_geq(lo, stated),
        satisfied_proof=_geq(lo, proof),
        leakage_ratio=lo * math.sqrt(2**n) / total,
    )


class Theorem2Result(NamedTuple):
    resolvable: bool
    ratio: float
    threshold: float


def check_theorem2(pair: EigenPair, n: int) -> Theorem2Result:
    """Eigenvalue ratio against the ``1 / 2**(n-1)`` threshold."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ratio = pair.lambda_min / pair.lambda_max
    threshold = 1.0 / 2 ** (n - 1)
    return Theorem2Result(ratio >= threshold, ratio, threshold)


def peak_bin(theta: float, n: int) -> int:
    """Most likely outcome after inverse QFT of the phase state for ``theta``."""
    out = run_circuit(iqft_circuit(n), encode_phase(theta, n))
    return distribution(out).argmax()


def empirical_resolution(theta_a: float, theta_b: float, n: int) -> bool:
    """True when the two phases (in revolutions) peak in different bins."""
    return peak_bin(theta_a, n) != peak_bin(theta_b, n)
