"""Random instances for tests and demos.  All take a ``numpy.random.Generator``."""
from __future__ import annotations

from typing import List, Tuple

import numpy as np

from .decompose import Gksl, KWedge


def ginibre(n: int, rng: np.random.Generator, scale: float = 1.0, m: int = None) -> np.ndarray:
    m = n if m is None else m
    return scale * (rng.normal(size=(n, m)) + 1j * rng.normal(size=(n, m))) / np.sqrt(2)


def hermitian(n: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    g = ginibre(n, rng, scale)
    return 0.5 * (g + g.conj().T)


def state(n: int, rng: np.random.Generator) -> np.ndarray:
    """Random density matrix (full rank with probability one)."""
    g = ginibre(n, rng)
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def kraus_set(n: int, m: int, rng: np.random.Generator, scale: float = None) -> List[np.ndarray]:
    scale = 1 / np.sqrt(n) if scale is None else scale
    return [ginibre(n, rng, scale) for _ in range(m)]


def isometry(rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
    """``rows x cols`` matrix ``U`` with ``U^* U = 1``; requires ``rows >= cols``."""
    q, r = np.linalg.qr(ginibre(rows, rng, m=cols))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def mix_kraus(ops: List[np.ndarray], u: np.ndarray) -> List[np.ndarray]:
    """``W_i = sum_j u[i, j] V_j``; same map whenever ``u`` is an isometry."""
    return [sum(u[i, j] * v for j, v in enumerate(ops)) for i in range(u.shape[0])]


def weight(n: int, rng: np.random.Generator, min_re_trace: float = 0.1) -> np.ndarray:
    """Random complex weight with ``|Re tr B| >= min_re_trace``."""
    while True:
        b = ginibre(n, rng)
        if abs(np.trace(b).real) >= min_re_trace:
            return b


def hermitian_weight(n: int, rng: np.random.Generator, min_re_trace: float = 0.1) -> np.ndarray:
    while True:
        b = hermitian(n, rng)
        if abs(np.trace(b).real) >= min_re_trace:
            return b


def pd_weight(n: int, rng: np.random.Generator, floor: float = 0.1) -> np.ndarray:
    g = ginibre(n, rng)
    b = g @ g.conj().T / n + floor * np.eye(n)
    return 0.5 * (b + b.conj().T)


def wedge_spec(n: int, rng: np.random.Generator, max_kraus: int = 4) -> KWedge:
    m = int(rng.integers(1, max_kraus + 1))
    return KWedge(K0=ginibre(n, rng), kraus=kraus_set(n, m, rng))


def gksl_spec(n: int, rng: np.random.Generator, max_lindblads: int = 4) -> Gksl:
    m = int(rng.integers(1, max_lindblads + 1))
    return Gksl(H=hermitian(n, rng), lindblads=kraus_set(n, m, rng))


def wedge_instance(n: int, rng: np.random.Generator) -> Tuple[KWedge, np.ndarray]:
    return wedge_spec(n, rng), weight(n, rng)
