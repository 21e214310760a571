"""Weighted traces and weighted inner products of superoperators.

For a weight matrix ``B`` the central quantity is the trace of the
superoperator ``X -> Phi(B^* X B)``.  It is evaluated as the Choi expectation
``<vec B| C(Phi) |vec B>``, which for a CP map equals ``sum_j |tr(B^* V_j)|^2``
over any Kraus set.  ``CP_B`` is the set of CP maps for which it vanishes.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import (
    DimensionError,
    InvalidStateError,
    NotCPError,
    NotHermitianError,
    NotPositiveDefiniteError,
    WeightError,
    ZeroWeightError,
)
from .linalg import ATOL, as_square, commutator, hermiticity_residual, is_hermitian, vec_mat
from .superop import (
    Superoperator,
    choi,
    from_sandwich,
    is_cp,
    kraus_from_choi,
)


class WeightMatrix:
    """A weight matrix ``B`` with cached trace and vectorization.

    Hypotheses are checked where they are needed: decompositions call
    :meth:`require_real_trace`, B-inner products call
    :meth:`require_positive_definite`.
    """

    __slots__ = ("B", "trace", "re_trace", "vec")

    def __init__(self, b):
        b = as_square(b, "weight matrix")
        b.setflags(write=False)
        self.B = b
        self.trace = complex(np.trace(b))
        self.re_trace = self.trace.real
        v = vec_mat(b)
        v.setflags(write=False)
        self.vec = v

    @property
    def n(self) -> int:
        return self.B.shape[0]

    def require_real_trace(self, tol: float = ATOL) -> "WeightMatrix":
        scale = max(1.0, float(np.linalg.norm(self.B)))
        if abs(self.re_trace) <= tol * scale:
            raise WeightError(f"Re tr(B) = {self.re_trace:.3e} must be nonzero")
        return self

    def require_nonzero(self, tol: float = ATOL) -> "WeightMatrix":
        if np.linalg.norm(self.B) <= tol:
            raise ZeroWeightError("weight matrix must be nonzero")
        return self

    def require_positive_definite(self, tol: float = ATOL) -> "WeightMatrix":
        if hermiticity_residual(self.B) > tol:
            raise NotPositiveDefiniteError("weight matrix is not Hermitian")
        lo = np.linalg.eigvalsh(0.5 * (self.B + self.B.conj().T))[0]
        if lo <= tol:
            raise NotPositiveDefiniteError(f"weight matrix has eigenvalue {lo:.3e} <= {tol:.1e}")
        return self

    def __repr__(self):
        return f"WeightMatrix(n={self.n}, tr={self.trace:.6g})"


def as_weight(b) -> WeightMatrix:
    return b if isinstance(b, WeightMatrix) else WeightMatrix(b)


def _check_dim(phi: Superoperator, *mats: np.ndarray):
    for m in mats:
        if m.shape != (phi.n, phi.n):
            raise DimensionError(f"matrix of shape {m.shape} for a map on {phi.n}x{phi.n}")


def sandwich_trace(phi: Superoperator, x, y) -> complex:
    """Trace of ``Z -> phi(x Z y)``, i.e. ``<vec(x^*)| C(phi) |vec(y)>``."""
    x = as_square(x)
    y = as_square(y)
    _check_dim(phi, x, y)
    return complex(np.vdot(vec_mat(x.conj().T), choi(phi) @ vec_mat(y)))


def composition_trace(phi: Superoperator, x, y) -> complex:
    """Same quantity as :func:`sandwich_trace`, through the composed superoperator."""
    return complex(np.trace((phi @ from_sandwich(x, y)).mat))


def weighted_trace(phi: Superoperator, b) -> complex:
    """Trace of ``X -> phi(B^* X B)``."""
    w = as_weight(b)
    _check_dim(phi, w.B)
    return complex(np.vdot(w.vec, choi(phi) @ w.vec))


def kraus_overlaps(ops: Sequence, b) -> np.ndarray:
    """``tr(B^* V_j)`` for each Kraus operator."""
    w = as_weight(b)
    return np.array([np.vdot(w.B, v) for v in ops], dtype=complex)


@dataclass
class CPBReport:
    member: bool
    is_cp: bool
    choi_min_eig: float
    weighted_trace: complex
    threshold: float
    kernel_residual: float
    overlaps: Optional[np.ndarray] = field(default=None, repr=False)


def in_cp_b(phi: Superoperator, b, tol: float = ATOL) -> Tuple[bool, CPBReport]:
    """Membership of ``phi`` in ``CP_B``.

    The report carries the Choi kernel residual ``|C(phi) vec B|`` and, when
    ``phi`` is CP, the overlaps ``tr(B^* V_j)`` of the Kraus operators
    extracted from its Choi matrix.
    """
    w = as_weight(b)
    _check_dim(phi, w.B)
    c = choi(phi)
    cp, min_eig = is_cp(phi, tol)
    wt = complex(np.vdot(w.vec, c @ w.vec))
    thr = tol * max(1.0, float(np.linalg.norm(c)))
    overlaps = None
    if cp:
        try:
            overlaps = kraus_overlaps(kraus_from_choi(c, tol), w)
        except (NotCPError, NotHermitianError):
            overlaps = None
    report = CPBReport(
        member=bool(cp and abs(wt) <= thr),
        is_cp=cp,
        choi_min_eig=min_eig,
        weighted_trace=wt,
        threshold=thr,
        kernel_residual=float(np.linalg.norm(c @ w.vec)),
        overlaps=overlaps,
    )
    return report.member, report


def entanglement_fidelity(phi: Superoperator, rho, tol: float = ATOL) -> float:
    """Entanglement fidelity ``tr(phi(rho (.) rho))`` of a map at a state."""
    rho = as_square(rho, "state")
    _check_dim(phi, rho)
    if not is_hermitian(rho, tol):
        raise InvalidStateError("state is not Hermitian")
    if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0] < -tol:
        raise InvalidStateError("state is not positive semidefinite")
    if abs(np.trace(rho) - 1) > tol:
        raise InvalidStateError(f"state has trace {np.trace(rho):.6g}, expected 1")
    f = sandwich_trace(phi, rho, rho)
    if abs(f.imag) > tol * max(1.0, abs(f)):
        raise NotCPError(f"entanglement fidelity has imaginary part {f.imag:.3e}")
    return f.real


def b_inner(phi: Superoperator, psi: Superoperator, b, tol: float = ATOL) -> complex:
    """B-weighted inner product ``tr(phi^dagger o (B (.) B) o psi)``."""
    w = as_weight(b).require_positive_definite(tol)
    if phi.n != psi.n:
        raise DimensionError(f"dimension mismatch {phi.n} vs {psi.n}")
    _check_dim(phi, w.B)
    mid = np.kron(w.B.T, w.B)
    return complex(np.trace(phi.mat.conj().T @ mid @ psi.mat))


def b_inner_basis_sum(phi: Superoperator, psi: Superoperator, b) -> complex:
    """``sum_a tr(phi(G_a)^* B psi(G_a) B)`` over the matrix-unit basis."""
    bm = as_weight(b).B
    n = phi.n
    total = 0j
    for j in range(n):
        for k in range(n):
            g = np.zeros((n, n), dtype=complex)
            g[j, k] = 1
            total += np.trace(phi(g).conj().T @ bm @ psi(g) @ bm)
    return complex(total)


def b_inner_closed_forms(h, z, ops: Sequence, b, tol: float = ATOL) -> Tuple[complex, complex, complex]:
    """Closed forms of three B-inner products for Hermitian ``h``, ``z``.

    Returns ``(c1, c2, c3)`` equal to ``<i[h,.], {z,.}>_B``,
    ``<i[h,.], Phi>_B`` and ``<{z,.}, Phi>_B`` with ``Phi = sum_j V_j (.) V_j^*``.
    """
    h = as_square(h)
    z = as_square(z)
    for name, m in (("H", h), ("Z", z)):
        if not is_hermitian(m, tol):
            raise NotHermitianError(f"{name} must be Hermitian")
    bm = as_weight(b).require_positive_definite(tol).B
    c1 = 1j * np.trace(bm) * np.trace(z @ commutator(bm, h))
    c2 = 0.0
    c3 = 0.0
    for v in ops:
        tbv = np.trace(bm @ v)
        c2 += 2 * (np.trace(h @ bm @ v) * np.conj(tbv)).imag
        c3 += 2 * (np.trace(z @ bm @ v) * np.conj(tbv)).real
    return complex(c1), complex(c2), complex(c3)
