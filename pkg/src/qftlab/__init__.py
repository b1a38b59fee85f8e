"""Gate-level quantum Fourier transform simulation and accuracy analysis."""

from .analysis import (
    LeakageReport,
    SampledSignal,
    Theorem1Report,
    check_theorem1,
    check_theorem2,
    dft,
    dft_matrix,
    discrete_leakage,
    empirical_resolution,
    leakage_integral,
    sinc_reconstruct,
)
from .circuits import Circuit, CircuitOp, circuit_matrix, iqft_circuit, qft_circuit, run_circuit
from .encoding import (
    DyadicPhase,
    EigenPair,
    SignalSpec,
    double_phase,
    dyadic_from_bits,
    encode_phase,
    encode_signal,
    prepare_uniform,
)
from .experiment import ExperimentConfig, ExperimentReport, render_histogram, run_experiment, run_preset
from .gates import controlled, hadamard, identity_gate, phase, projector, swap_gate
from .measurement import OutcomeDistribution, ShotCounts, decode_phase, distribution, sample
from .statevector import GateMatrix, StateVector, apply_full, apply_local, embed, kron_mat, kron_vec, norm

__version__ = "0.1.0"
