"""Dense complex matrix primitives.

Vectorization is column stacking throughout the package: for an ``n x n``
matrix ``B`` the entry ``vec(B)[j*n + k]`` is ``B[k, j]``.  With this
convention ``vec(A @ X @ B) == kron(B.T, A) @ vec(X)``.
"""
from __future__ import annotations

from typing import Tuple

import numpy as np

from .errors import DimensionError, NotHermitianError

ATOL = 1e-9
RTOL = 1e-9


def as_square(a, name: str = "matrix") -> np.ndarray:
    """Return ``a`` as a complex square 2-d array or raise DimensionError."""
    arr = np.asarray(a, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise DimensionError(f"{name} must be a non-empty square matrix, got shape {arr.shape}")
    return arr


def allclose(a, b, atol: float = ATOL, rtol: float = RTOL) -> bool:
    """Frobenius-norm closeness: ``|a-b| <= atol + rtol*max(|a|, |b|)``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        return False
    diff = np.linalg.norm(a - b)
    return bool(diff <= atol + rtol * max(np.linalg.norm(a), np.linalg.norm(b)))


def vec_mat(b) -> np.ndarray:
    """Column-stacked vector of a square matrix.

    >>> vec_mat([[1, 2], [3, 4]]).real
    array([1., 3., 2., 4.])
    """
    b = as_square(b)
    return b.reshape(-1, order="F")


def unvec_mat(v, n: int) -> np.ndarray:
    """Inverse of :func:`vec_mat`."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    if v.size != n * n:
        raise DimensionError(f"vector of length {v.size} cannot be unvec'ed to {n}x{n}")
    return v.reshape((n, n), order="F")


def hs_inner(a, b) -> complex:
    """Hilbert-Schmidt inner product ``tr(a^* b)``, conjugate-linear in ``a``."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return complex(np.vdot(a, b))


def kron(a, b) -> np.ndarray:
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def _same_square(a, b) -> Tuple[np.ndarray, np.ndarray]:
    a = as_square(a)
    b = as_square(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return a, b


def commutator(a, b) -> np.ndarray:
    a, b = _same_square(a, b)
    return a @ b - b @ a


def anticommutator(a, b) -> np.ndarray:
    a, b = _same_square(a, b)
    return a @ b + b @ a


def hermiticity_residual(h) -> float:
    """``|h - h^*|_F`` relative to ``max(1, |h|_F)``."""
    h = np.asarray(h, dtype=complex)
    return float(np.linalg.norm(h - h.conj().T) / max(1.0, np.linalg.norm(h)))


def is_hermitian(h, tol: float = ATOL) -> bool:
    return hermiticity_residual(h) <= tol


def herm_eig(h, tol: float = ATOL) -> Tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix with a reproducible gauge.

    The input is symmetrized before solving.  Eigenvalues are returned in
    descending order; eigenvectors are the columns of the second output, each
    rotated so that its largest-magnitude component (lowest index on ties) is
    real and positive.

    Raises
    ------
    NotHermitianError
        If ``|h - h^*|_F > tol * max(1, |h|_F)``.
    """
    h = as_square(h)
    res = hermiticity_residual(h)
    if res > tol:
        raise NotHermitianError(f"matrix is not Hermitian (relative residual {res:.3e} > {tol:.1e})")
    h = 0.5 * (h + h.conj().T)
    vals, vecs = np.linalg.eigh(h)
    vals = vals[::-1].copy()
    vecs = vecs[:, ::-1].copy()
    mags = np.abs(vecs)
    for i in range(vecs.shape[1]):
        col = mags[:, i]
        # lowest index among entries tied (to roundoff) with the maximum
        pivot = int(np.flatnonzero(col >= col.max() * (1 - 1e-12))[0])
        z = vecs[pivot, i]
        if z != 0:
            vecs[:, i] *= np.conj(z) / abs(z)
    return vals, vecs
