import numpy as np
import pytest


def random_state(rng, n):
    v = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    return v / np.linalg.norm(v)


def random_unitary(rng, k):
    d = 2**k
    z = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def fourier_oracle(n):
    """exp(+2 pi i jk/N)/sqrt(N) by explicit double loop."""
    N = 2**n
    F = np.empty((N, N), dtype=complex)
    for j in range(N):
        for k in range(N):
            F[j, k] = np.exp(2j * np.pi * j * k / N) / np.sqrt(N)
    return F


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


_acceptance: list[tuple[str, str]] = []


def pytest_runtest_logreport(report):
    if report.when == "call" and "test_acceptance.py" in report.nodeid:
        _acceptance.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _acceptance:
        mark = "PASS" if outcome == "passed" else "FAIL"
        terminalreporter.write_line(f"[{mark}] {name}")
