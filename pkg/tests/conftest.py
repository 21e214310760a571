import numpy as np
import pytest

SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
I2 = np.eye(2, dtype=complex)


def unit(n, j, k):
    e = np.zeros((n, n), dtype=complex)
    e[j, k] = 1
    return e


def kraus_apply(ops, x):
    """Direct evaluation of sum_j V_j x V_j^*, independent of any superoperator matrix."""
    return sum(v @ x @ v.conj().T for v in ops)


def brute_choi(fn, n):
    """Choi matrix from its definition, for a map given as a Python callable."""
    return sum(np.kron(unit(n, j, k), fn(unit(n, j, k))) for j in range(n) for k in range(n))


def brute_trace(fn, n):
    """Trace of a linear map as sum_{jk} <j| fn(|j><k|) |k>."""
    return sum(fn(unit(n, j, k))[j, k] for j in range(n) for k in range(n))


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
