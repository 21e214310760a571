"""Superoperators, Choi matrices and Kraus operators.

A :class:`Superoperator` stores the ``n^2 x n^2`` matrix ``mat`` with
``vec(S(X)) == mat @ vec(X)`` (column stacking).  In this convention the
sandwich map ``X -> A X B`` has matrix ``kron(B.T, A)`` and the Choi matrix is

    C(S) = sum_{j,k} |j><k| (x) S(|j><k|).

Kraus sets are plain sequences of ``n x n`` arrays; an empty sequence is the
zero map and needs an explicit ``dim``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionError, NotCPError
from .linalg import ATOL, as_square, herm_eig, hermiticity_residual, unvec_mat, vec_mat


@dataclass(frozen=True, eq=False)
class Superoperator:
    """Linear map on ``n x n`` matrices held as its ``n^2 x n^2`` matrix."""

    mat: np.ndarray

    def __post_init__(self):
        mat = np.array(self.mat, dtype=complex)
        n = int(round(np.sqrt(mat.shape[0]))) if mat.ndim == 2 else 0
        if mat.ndim != 2 or mat.shape[0] != mat.shape[1] or n * n != mat.shape[0] or n < 1:
            raise DimensionError(f"superoperator matrix must be n^2 x n^2, got shape {mat.shape}")
        mat.setflags(write=False)
        object.__setattr__(self, "mat", mat)

    @property
    def n(self) -> int:
        return int(round(np.sqrt(self.mat.shape[0])))

    def __call__(self, x) -> np.ndarray:
        return apply(self, x)

    def _check(self, other: "Superoperator"):
        if not isinstance(other, Superoperator):
            return NotImplemented
        if other.n != self.n:
            raise DimensionError(f"dimension mismatch {self.n} vs {other.n}")
        return None

    def __add__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Superoperator(self.mat + other.mat)

    def __sub__(self, other):
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Superoperator(self.mat - other.mat)

    def __neg__(self):
        return Superoperator(-self.mat)

    def __mul__(self, c):
        if not np.isscalar(c):
            return NotImplemented
        return Superoperator(c * self.mat)

    __rmul__ = __mul__

    def __matmul__(self, other):
        """Composition ``(self @ other)(X) == self(other(X))``."""
        if self._check(other) is NotImplemented:
            return NotImplemented
        return Superoperator(self.mat @ other.mat)

    def __repr__(self):
        return f"Superoperator(n={self.n})"


def identity(n: int) -> Superoperator:
    return Superoperator(np.eye(n * n))


def zero(n: int) -> Superoperator:
    return Superoperator(np.zeros((n * n, n * n)))


def _swap_perm(n: int) -> np.ndarray:
    """Permutation matrix with ``P @ vec(X) == vec(X.T)``."""
    idx = np.arange(n * n).reshape((n, n)).T.reshape(-1)
    return np.eye(n * n)[idx]


def transpose_map(n: int) -> Superoperator:
    """The transposition ``X -> X.T``."""
    return Superoperator(_swap_perm(n))


def _kraus_dim(ops: Sequence, dim: Optional[int]) -> List[np.ndarray]:
    ops = [as_square(v, "Kraus operator") for v in ops]
    if not ops and dim is None:
        raise DimensionError("an empty Kraus set needs an explicit dimension")
    n = dim if dim is not None else ops[0].shape[0]
    for v in ops:
        if v.shape != (n, n):
            raise DimensionError(f"Kraus operator of shape {v.shape}, expected {(n, n)}")
    return ops


def from_kraus(ops: Sequence, dim: Optional[int] = None) -> Superoperator:
    """Superoperator of ``X -> sum_j V_j X V_j^*``."""
    ops = _kraus_dim(ops, dim)
    n = dim if dim is not None else ops[0].shape[0]
    mat = np.zeros((n * n, n * n), dtype=complex)
    for v in ops:
        mat += np.kron(v.conj(), v)
    return Superoperator(mat)


def from_sandwich(a, b) -> Superoperator:
    """Superoperator of ``X -> a X b``."""
    a = as_square(a)
    b = as_square(b)
    if a.shape != b.shape:
        raise DimensionError(f"shape mismatch {a.shape} vs {b.shape}")
    return Superoperator(np.kron(b.T, a))


def left_right(k) -> Superoperator:
    """``X -> k X + X k^*``."""
    k = as_square(k)
    eye = np.eye(k.shape[0])
    return from_sandwich(k, eye) + from_sandwich(eye, k.conj().T)


def hamiltonian_part(h) -> Superoperator:
    """``X -> -i[h, X]``."""
    h = as_square(h)
    eye = np.eye(h.shape[0])
    return -1j * (from_sandwich(h, eye) - from_sandwich(eye, h))


def anticommutator_part(z) -> Superoperator:
    """``X -> {z, X}``."""
    z = as_square(z)
    eye = np.eye(z.shape[0])
    return from_sandwich(z, eye) + from_sandwich(eye, z)


def apply(s: Superoperator, x) -> np.ndarray:
    x = as_square(x)
    if x.shape[0] != s.n:
        raise DimensionError(f"input is {x.shape[0]}x{x.shape[0]}, map acts on {s.n}x{s.n}")
    return unvec_mat(s.mat @ vec_mat(x), s.n)


def _reshuffle(m: np.ndarray, n: int) -> np.ndarray:
    # C[j*n+a, k*n+b] = S[b*n+a, k*n+j]; the index swap is an involution
    return m.reshape((n, n, n, n)).transpose(3, 1, 2, 0).reshape((n * n, n * n))


def choi(s: Superoperator) -> np.ndarray:
    """Choi matrix ``sum_{j,k} |j><k| (x) s(|j><k|)``."""
    return _reshuffle(s.mat, s.n)


def choi_to_superop(c) -> Superoperator:
    c = as_square(c, "Choi matrix")
    n = int(round(np.sqrt(c.shape[0])))
    if n * n != c.shape[0]:
        raise DimensionError(f"Choi matrix side {c.shape[0]} is not a perfect square")
    return Superoperator(_reshuffle(c, n))


def _psd_floor(vals: np.ndarray, tol: float) -> float:
    return -tol * max(1.0, float(vals[0]) if vals.size else 0.0)


def kraus_from_choi(c, tol: float = ATOL) -> List[np.ndarray]:
    """Kraus operators from the eigendecomposition of a PSD Choi matrix.

    Eigenpairs with eigenvalue above ``tol * max(1, lambda_max)`` contribute
    ``sqrt(lambda) * unvec(v)``, so the length of the result is the numerical
    Choi rank.  Eigenvectors carry the gauge fixed by :func:`herm_eig`.
    """
    c = as_square(c, "Choi matrix")
    n = int(round(np.sqrt(c.shape[0])))
    if n * n != c.shape[0]:
        raise DimensionError(f"Choi matrix side {c.shape[0]} is not a perfect square")
    vals, vecs = herm_eig(c, tol)
    if vals[-1] < _psd_floor(vals, tol):
        raise NotCPError(f"Choi matrix has eigenvalue {vals[-1]:.3e} below -tol*scale")
    cut = tol * max(1.0, float(vals[0]))
    return [np.sqrt(lam) * unvec_mat(vecs[:, i], n) for i, lam in enumerate(vals) if lam > cut]


def superop_trace(s: Superoperator) -> complex:
    return complex(np.trace(s.mat))


def hs_adjoint(s: Superoperator) -> Superoperator:
    """Adjoint w.r.t. the Hilbert-Schmidt inner product."""
    return Superoperator(s.mat.conj().T)


def dual_map(s: Superoperator) -> Superoperator:
    """The map ``s^*`` with ``tr(B s(A)) == tr(s^*(B) A)`` for all ``A, B``."""
    p = _swap_perm(s.n)
    return Superoperator(p @ s.mat.T @ p)


def is_cp(s: Superoperator, tol: float = ATOL) -> Tuple[bool, float]:
    """Complete-positivity verdict from the Choi spectrum.

    Returns ``(verdict, min_eig)``; the minimal eigenvalue is that of the
    Hermitian part of the Choi matrix, reported even when the verdict is
    negative because of non-Hermiticity.
    """
    c = choi(s)
    herm_ok = hermiticity_residual(c) <= tol
    vals = np.linalg.eigvalsh(0.5 * (c + c.conj().T))[::-1]
    min_eig = float(vals[-1])
    return bool(herm_ok and min_eig >= _psd_floor(vals, tol)), min_eig


def hermitian_preserving_residual(s: Superoperator) -> float:
    return hermiticity_residual(choi(s))


def is_hermitian_preserving(s: Superoperator, tol: float = ATOL) -> bool:
    return hermitian_preserving_residual(s) <= tol


def trace_annihilation_residual(s: Superoperator) -> float:
    """``|vec(I)^* mat|`` relative to ``max(1, |mat|_F)``."""
    row = vec_mat(np.eye(s.n)).conj() @ s.mat
    return float(np.linalg.norm(row) / max(1.0, np.linalg.norm(s.mat)))


def is_trace_annihilating(s: Superoperator, tol: float = ATOL) -> bool:
    return trace_annihilation_residual(s) <= tol
