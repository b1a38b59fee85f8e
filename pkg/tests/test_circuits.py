import math

import numpy as np
import pytest

from qftlab.analysis import dft_matrix
from qftlab.circuits import (
    CP,
    H,
    SWAP,
    Circuit,
    CircuitOp,
    circuit_matrix,
    gate_counts,
    iqft_circuit,
    qft_circuit,
    run_circuit,
)
from qftlab.errors import DimensionMismatch, IndexOutOfRange, SizeOutOfRange
from qftlab.gates import hadamard, swap_gate
from qftlab.statevector import StateVector

from conftest import fourier_oracle, random_state


def test_qft1_is_hadamard():
    c = qft_circuit(1)
    assert c.ops == (CircuitOp(H, (0,)),)
    assert np.allclose(np.asarray(circuit_matrix(c)), np.asarray(hadamard()), atol=1e-15)


def test_qft2_structure_and_matrix():
    c = qft_circuit(2)
    assert c.ops == (
        CircuitOp(H, (0,)),
        CircuitOp(CP, (1, 0), math.pi / 2),
        CircuitOp(H, (1,)),
        CircuitOp(SWAP, (0, 1)),
    )
    m = np.asarray(circuit_matrix(c))
    want = np.array([[0.5 * 1j ** (j * k) for k in range(4)] for j in range(4)])
    assert np.allclose(m, want, atol=1e-15)


@pytest.mark.parametrize("n", range(1, 7))
def test_qft_matrix_equals_fourier(n):
    m = np.asarray(circuit_matrix(qft_circuit(n)))
    assert np.allclose(m, fourier_oracle(n), rtol=0, atol=1e-10)
    assert np.allclose(m, np.asarray(dft_matrix(n)).conj(), rtol=0, atol=1e-10)


@pytest.mark.parametrize("n", [1, 3, 5])
def test_iqft_is_adjoint(n):
    f = np.asarray(circuit_matrix(qft_circuit(n)))
    g = np.asarray(circuit_matrix(iqft_circuit(n)))
    assert np.allclose(g, f.conj().T, atol=1e-12)
    assert np.allclose(g @ f, np.eye(2**n), atol=1e-10)


def test_iqft1():
    assert iqft_circuit(1).ops == (CircuitOp(H, (0,)),)


@pytest.mark.parametrize("n", range(1, 11))
def test_roundtrip_random_states(n):
    rng = np.random.default_rng(n)
    q, iq = qft_circuit(n), iqft_circuit(n)
    for _ in range(10):
        s = StateVector(random_state(rng, n))
        back = run_circuit(iq, run_circuit(q, s))
        assert np.max(np.abs(np.asarray(back) - np.asarray(s))) < 1e-9


@pytest.mark.parametrize("n", range(1, 13))
def test_gate_counts(n):
    counts = gate_counts(qft_circuit(n))
    assert counts == {H: n, CP: n * (n - 1) // 2, SWAP: n // 2}
    assert gate_counts(iqft_circuit(n)) == counts


def test_run_empty_circuit(rng):
    s = StateVector(random_state(rng, 3))
    assert run_circuit(Circuit(3), s).allclose(s, atol=0)


@pytest.mark.parametrize("n", [1, 4, 8, 12])
def test_qft_of_zero_is_uniform_positive(n):
    out = np.asarray(run_circuit(qft_circuit(n), StateVector.basis(0, n)))
    assert np.allclose(out, 2 ** (-n / 2), rtol=0, atol=1e-12)
    assert np.all(out.real > 0)


def test_qft2_on_01():
    out = run_circuit(qft_circuit(2), StateVector.from_bits("01"))
    assert np.allclose(np.asarray(out), 0.5 * np.array([1, 1j, -1, -1j]), atol=1e-15)


@pytest.mark.parametrize("n", [2, 3, 5, 6])
def test_run_matches_matrix(n, rng):
    s = StateVector(random_state(rng, n))
    for c in (qft_circuit(n), iqft_circuit(n)):
        fast = np.asarray(run_circuit(c, s))
        slow = np.asarray(circuit_matrix(c)) @ np.asarray(s)
        assert np.allclose(fast, slow, rtol=0, atol=1e-12)


def test_norm_preserved_n12(rng):
    s = StateVector(random_state(rng, 12))
    out = run_circuit(qft_circuit(12), s)
    assert abs(np.linalg.norm(np.asarray(out)) - 1) < 1e-10


def test_circuit_matrix_single_ops():
    assert np.allclose(np.asarray(circuit_matrix(Circuit(1, (CircuitOp(H, (0,)),)))), np.asarray(hadamard()))
    sw = circuit_matrix(Circuit(2, (CircuitOp(SWAP, (0, 1)),)))
    assert np.array_equal(np.asarray(sw), np.asarray(swap_gate(0, 1, 2)))


def test_size_guards():
    with pytest.raises(SizeOutOfRange):
        qft_circuit(0)
    with pytest.raises(SizeOutOfRange):
        qft_circuit(15)
    with pytest.raises(SizeOutOfRange):
        circuit_matrix(qft_circuit(7))
    with pytest.raises(DimensionMismatch):
        run_circuit(qft_circuit(3), StateVector.basis(0, 2))
    with pytest.raises(IndexOutOfRange):
        Circuit(2, (CircuitOp(H, (2,)),))


def test_op_validation():
    with pytest.raises(ValueError):
        CircuitOp(CP, (0, 1))
    with pytest.raises(ValueError):
        CircuitOp(H, (0,), 1.0)
    with pytest.raises(ValueError):
        CircuitOp(CP, (1, 1), 0.5)
    with pytest.raises(ValueError):
        CircuitOp("X", (0,))


def test_text_format_golden():
    assert qft_circuit(3).to_text() == (
        "H q0\n"
        "CP q1 q0 angle=1.57079633\n"
        "CP q2 q0 angle=0.785398163\n"
        "H q1\n"
        "CP q2 q1 angle=1.57079633\n"
        "H q2\n"
        "SWAP q0 q2\n"
    )


@pytest.mark.parametrize("n", [1, 4, 7])
def test_text_roundtrip(n):
    for c in (qft_circuit(n), iqft_circuit(n)):
        back = Circuit.from_text(c.to_text(), n)
        assert [op.kind for op in back.ops] == [op.kind for op in c.ops]
        assert [op.targets for op in back.ops] == [op.targets for op in c.ops]
        for a, b in zip(back.ops, c.ops):
            if b.angle is not None:
                assert a.angle == pytest.approx(b.angle, rel=1e-8)


def test_text_parse_error():
    with pytest.raises(ValueError):
        CircuitOp.from_text("H x0")
