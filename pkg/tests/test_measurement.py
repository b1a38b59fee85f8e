import csv
import io
import math

import numpy as np
import pytest

from qftlab.circuits import iqft_circuit, run_circuit
from qftlab.encoding import encode_phase, prepare_uniform
from qftlab.errors import IndexOutOfRange, NotNormalized
from qftlab.measurement import (
    CSV_HEADER,
    OutcomeDistribution,
    ShotCounts,
    decode_phase,
    distribution,
    histogram_csv,
    outcome_probability,
    sample,
    spawn_rngs,
)
from qftlab.statevector import StateVector

from conftest import random_state


def test_distribution_basis():
    d = distribution(StateVector.from_bits("0101"))
    assert d["0101"] == 1 and d[5] == 1
    assert d.probs.sum() == 1


def test_distribution_uniform():
    assert np.allclose(distribution(prepare_uniform(4)).probs, 1 / 16, atol=1e-15)


def test_distribution_half_bin_leakage():
    n, N = 4, 16
    p = distribution(run_circuit(iqft_circuit(n), encode_phase(4.5 / N, n))).probs
    for k in range(N):
        direct = sum(np.exp(2j * np.pi * (4.5 - k) * m / N) for m in range(N)) / N
        assert p[k] == pytest.approx(abs(direct) ** 2, abs=1e-12)
    assert p[4] == pytest.approx(p[5], abs=1e-12)
    assert p[4] == pytest.approx(p.max(), abs=1e-12)


@pytest.mark.parametrize("seed", range(5))
def test_distribution_matches_projector_route(seed):
    rng = np.random.default_rng(seed)
    s = StateVector(random_state(rng, 4))
    d = distribution(s)
    for m in range(16):
        assert d[m] == pytest.approx(outcome_probability(s, m), abs=1e-14)


@pytest.mark.parametrize("phi", np.linspace(0, 2 * np.pi, 9))
def test_global_phase_invariance(phi, rng):
    v = random_state(rng, 5)
    a = distribution(StateVector(v)).probs
    b = distribution(StateVector(np.exp(1j * phi) * v)).probs
    assert np.allclose(a, b, rtol=0, atol=1e-15)


def test_outcome_distribution_validation():
    with pytest.raises(NotNormalized):
        OutcomeDistribution(1, [0.5, 0.6])
    with pytest.raises(ValueError):
        OutcomeDistribution(2, [1.0, 0.0])
    with pytest.raises(IndexOutOfRange):
        outcome_probability(prepare_uniform(2), 4)


def test_sample_zero_shots():
    c = sample(prepare_uniform(3), 0, seed=1)
    assert c.counts == {} and c.shots == 0


def test_sample_certain_outcome():
    for seed in (0, 1, 99):
        c = sample(StateVector.from_bits("0101"), 1000, seed=seed)
        assert c.counts == {5: 1000}


def test_sample_deterministic():
    s = prepare_uniform(4)
    assert sample(s, 5000, seed=7) == sample(s, 5000, seed=7)
    assert sample(s, 5000, seed=7) != sample(s, 5000, seed=8)


def test_sample_uniform_within_five_sigma():
    c = sample(prepare_uniform(4), 16000, seed=12345)
    sigma = math.sqrt(16000 * (1 / 16) * (15 / 16))
    for m in range(16):
        assert abs(c.get(m) - 1000) < 5 * sigma


@pytest.mark.parametrize("seed", [3, 17, 2024])
def test_sampling_converges(seed):
    shots = 100_000
    rng = np.random.default_rng(seed)
    d = distribution(StateVector(random_state(rng, 4)))
    c = sample(d, shots, seed=seed)
    assert sum(c.counts.values()) == shots
    for m, p in enumerate(d.probs):
        sigma = math.sqrt(shots * p * (1 - p))
        assert abs(c.get(m) - shots * p) <= 4 * sigma + 1e-9


def test_spawned_streams_independent_and_stable():
    a = [g.integers(1 << 62) for g in spawn_rngs(5, 3)]
    b = [g.integers(1 << 62) for g in spawn_rngs(5, 3)]
    assert a == b
    assert len(set(a)) == 3


def test_shot_counts_invariant():
    with pytest.raises(ValueError):
        ShotCounts({0: 3}, 4)
    with pytest.raises(ValueError):
        sample(prepare_uniform(1), -1)


def test_decode_phase():
    assert decode_phase(0, 4) == 0.0
    assert decode_phase(5, 4) == 0.3125
    p = distribution(run_circuit(iqft_circuit(4), encode_phase(17 / 16, 4)))
    assert p.argmax() == 1
    assert decode_phase(p.argmax(), 4) == 1 / 16
    with pytest.raises(IndexOutOfRange):
        decode_phase(16, 4)


@pytest.mark.parametrize("n", range(1, 9))
def test_decode_inverts_encode_on_dyadic(n):
    for m in range(0, 2**n, max(1, 2**n // 16)):
        p = distribution(run_circuit(iqft_circuit(n), encode_phase(m / 2**n, n)))
        assert decode_phase(p.argmax(), n) == m / 2**n


def test_histogram_csv():
    d = distribution(StateVector.from_bits("01"))
    text = histogram_csv(d)
    rows = list(csv.reader(io.StringIO(text)))
    assert tuple(rows[0]) == CSV_HEADER
    assert rows[2] == ["01", "1", "1.000000000", "—"]
    assert rows[1] == ["00", "0", "0.000000000", "—"]
    c = sample(d, 10, seed=0)
    rows = list(csv.reader(io.StringIO(histogram_csv(d, c))))
    assert rows[2][3] == "10" and rows[1][3] == "0"
