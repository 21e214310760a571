"""Worked cases: the Bloch generator, the transposition map, the depolarizing
channel and a non-orthogonal Hamiltonian/dissipator pair."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .decompose import Gksl
from .errors import DimensionError, InvalidWeightError, WeightError
from .linalg import ATOL, as_square, hermiticity_residual
from .superop import (
    Superoperator,
    anticommutator_part,
    apply,
    choi,
    dual_map,
    from_kraus,
    hamiltonian_part,
    identity,
    transpose_map,
)
from .weighted import as_weight, b_inner, in_cp_b, weighted_trace

SIGMA_Z = np.diag([1.0, -1.0]).astype(complex)


@dataclass(frozen=True)
class BlochParams:
    omega: float
    gamma1: float = 0.0
    gamma2: float = 0.0
    gamma3: float = 0.0

    def __post_init__(self):
        if min(self.gamma1, self.gamma2, self.gamma3) < 0:
            raise ValueError("rates gamma1, gamma2, gamma3 must be non-negative")


def bloch_spec(p: BlochParams) -> Gksl:
    """Hamiltonian ``omega/2 sigma_z`` with decay, excitation and dephasing."""
    v1 = np.sqrt(p.gamma1) * np.array([[0, 1], [0, 0]], dtype=complex)
    v2 = np.sqrt(p.gamma2) * np.array([[0, 0], [1, 0]], dtype=complex)
    v3 = np.sqrt(p.gamma3) * SIGMA_Z
    return Gksl(H=0.5 * p.omega * SIGMA_Z, lindblads=[v1, v2, v3])


def bloch_generator(p: BlochParams) -> Superoperator:
    """Superoperator matrix of the Bloch-equation generator, written out entrywise."""
    g1, g2, g3, w = p.gamma1, p.gamma2, p.gamma3, p.omega
    off = -(g1 + g2) / 2 - 2 * g3
    mat = np.array(
        [
            [-g2, 0, 0, g1],
            [0, off + 1j * w, 0, 0],
            [0, 0, off - 1j * w, 0],
            [g2, 0, 0, -g1],
        ],
        dtype=complex,
    )
    return Superoperator(mat)


def _betas(B) -> Tuple[np.ndarray, complex]:
    b = as_square(B, "B")
    if b.shape != (2, 2):
        raise DimensionError("the Bloch case is a qubit case; B must be 2x2")
    tr = b[0, 0] + b[1, 1]
    if abs(tr.real) <= ATOL * max(1.0, np.linalg.norm(b)):
        raise WeightError("Re tr(B) must be nonzero")
    return b / tr, tr


def bloch_reference_parts(p: BlochParams, B) -> Tuple[Superoperator, Superoperator]:
    """Closed-form ``-i[H_B,.]`` and ``Gamma_B = {Phi_B^*(1)/2,.} - Phi_B``.

    Both are written in terms of ``beta_jk = b_jk / tr(B)`` and
    ``beta = (gamma1 beta_12 - gamma2 conj(beta_21)) / 2`` and satisfy
    ``L = ham - gamma``.
    """
    bt, _ = _betas(B)
    g1, g2, g3, w = p.gamma1, p.gamma2, p.gamma3, p.omega
    b11, b12, b21, b22 = bt[0, 0], bt[0, 1], bt[1, 0], bt[1, 1]
    be = (g1 * b12 - g2 * np.conj(b21)) / 2
    bc = np.conj(be)
    ham = np.array(
        [
            [0, be, bc, 0],
            [-bc, 1j * w + 2 * g3 * (np.conj(b11) - b11), 0, bc],
            [-be, 0, -1j * w + 2 * g3 * (np.conj(b22) - b22), be],
            [0, -be, -bc, 0],
        ],
        dtype=complex,
    )
    half = (g1 + g2) / 2
    gam = np.array(
        [
            [g2, be, bc, -g1],
            [-bc, half + 2 * g3 * (np.conj(b11) + b22), 0, bc],
            [-be, 0, half + 2 * g3 * (b11 + np.conj(b22)), be],
            [-g2, -be, -bc, g1],
        ],
        dtype=complex,
    )
    ham_part, gamma_part = Superoperator(ham), Superoperator(gam)
    resid = np.linalg.norm((ham_part - gamma_part - bloch_generator(p)).mat)
    assert resid <= 1e-12 * max(1.0, np.linalg.norm(ham)), resid
    return ham_part, gamma_part


def bloch_gamma_hermitian(p: BlochParams, B) -> Superoperator:
    """``Gamma_B`` for Hermitian ``B``, using only the off-diagonal ``b_12``.

    The entries are ``(b_12 / 2)(gamma1 - gamma2)`` after normalizing ``B`` to
    unit trace; for ``tr(B) = 1`` this is the weight's own ``b_12``.
    """
    bt, _ = _betas(B)
    if hermiticity_residual(bt) > ATOL:
        raise WeightError("B must be Hermitian for this form")
    g1, g2, g3 = p.gamma1, p.gamma2, p.gamma3
    x = bt[0, 1] / 2 * (g1 - g2)
    xc = np.conj(x)
    d = (g1 + g2) / 2 + 2 * g3
    mat = np.array(
        [
            [g2, x, xc, -g1],
            [-xc, d, 0, xc],
            [-x, 0, d, x],
            [-g2, -x, -xc, g1],
        ],
        dtype=complex,
    )
    return Superoperator(mat)


def dissipator_of(phi: Superoperator) -> Superoperator:
    """``{phi^*(1)/2, .} - phi``."""
    rate = apply(dual_map(phi), np.eye(phi.n))
    return anticommutator_part(0.5 * rate) - phi


# -- transposition -------------------------------------------------------------

def transpose_criterion(B) -> complex:
    """``tr(B conj(B))``; no hypothesis on ``B`` is checked."""
    b = as_square(B, "B")
    return complex(np.trace(b @ b.conj()))


@dataclass
class TransposeDecomposition:
    criterion: complex
    K: Optional[np.ndarray]
    phi: Optional[Superoperator]
    weighted_trace: Optional[complex] = None
    min_sampled_eig: Optional[float] = None

    @property
    def exists(self) -> bool:
        return self.K is not None


def transpose_decomposition(B, tol: float = 1e-12, samples: int = 50, seed: int = 0) -> TransposeDecomposition:
    """Split the transposition as ``K(.) + (.)K^* + Phi`` with ``Phi`` positive.

    Such a split with ``tr(Phi(B^*(.)B)) = 0`` and ``Im tr(B^* K) = 0``
    exists iff ``tr(B conj(B)) <= 0``.  In that case
    ``Phi = (.)^T - c id`` with ``c = tr(B conj(B)) / |tr B|^2 <= 0`` and
    ``K = c tr(B) / (2 Re tr B) 1``.  Positivity of ``Phi`` holds because it
    is a non-negative combination of positive maps; it is additionally checked
    on ``samples`` random PSD inputs.  A criterion value within ``tol`` of the
    non-positive reals counts as decomposable.
    """
    w = as_weight(B).require_real_trace(ATOL)
    crit = transpose_criterion(w.B)
    scale = max(1.0, float(np.linalg.norm(w.B)) ** 2)
    if abs(crit.imag) > tol * scale or crit.real > tol * scale:
        return TransposeDecomposition(criterion=crit, K=None, phi=None)
    cr = min(crit.real, 0.0)
    n = w.n
    abs2 = abs(w.trace) ** 2
    c = cr / abs2
    K = (cr * w.trace / (2 * w.re_trace * abs2)) * np.eye(n)
    phi = transpose_map(n) - c * identity(n)
    rng = np.random.default_rng(seed)
    worst = np.inf
    for _ in range(samples):
        g = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        out = phi(g @ g.conj().T)
        worst = min(worst, float(np.linalg.eigvalsh(0.5 * (out + out.conj().T))[0]))
    return TransposeDecomposition(
        criterion=crit,
        K=K,
        phi=phi,
        weighted_trace=weighted_trace(phi, w),
        min_sampled_eig=worst,
    )


# -- depolarizing channel ------------------------------------------------------

def depolarizing_map(n: int) -> Superoperator:
    """``X -> tr(X) 1/n`` from its ``n^2`` Kraus operators ``|j><k|/sqrt(n)``."""
    ops = []
    for j in range(n):
        for k in range(n):
            e = np.zeros((n, n), dtype=complex)
            e[j, k] = 1 / np.sqrt(n)
            ops.append(e)
    return from_kraus(ops)


@dataclass
class DepolarizingReport:
    n: int
    choi_rank: int
    choi_is_scaled_identity: bool
    kernel_residual: float
    expected_residual: float
    overlap_norm: float
    weighted_trace: complex
    excluded: bool


def depolarizing_exclusion(B, n: Optional[int] = None, tol: float = ATOL) -> DepolarizingReport:
    """Show the depolarizing channel lies outside ``CP_B`` for nonzero ``B``.

    ``C(D) = 1/n`` on ``C^n (x) C^n``, so the kernel residual
    ``|C(D) vec B|`` is ``|B|_F / n`` and the Kraus-overlap norm
    ``sqrt(sum_jk |tr(B^* V_jk)|^2) = sqrt(<vec B|C(D)|vec B>)`` is
    ``|B|_F / sqrt(n)``.  Both are strictly positive.
    """
    w = as_weight(B).require_nonzero(tol)
    if n is not None and n != w.n:
        raise DimensionError(f"B is {w.n}x{w.n}, requested n={n}")
    n = w.n
    d = depolarizing_map(n)
    c = choi(d)
    rank = int(np.linalg.matrix_rank(c, tol=tol))
    member, rep = in_cp_b(d, w, tol)
    return DepolarizingReport(
        n=n,
        choi_rank=rank,
        choi_is_scaled_identity=bool(np.allclose(c, np.eye(n * n) / n, atol=tol)),
        kernel_residual=rep.kernel_residual,
        expected_residual=float(np.linalg.norm(w.B) / n),
        overlap_norm=float(np.sqrt(max(rep.weighted_trace.real, 0.0))),
        weighted_trace=rep.weighted_trace,
        excluded=not member,
    )


# -- orthogonality -------------------------------------------------------------

def orthogonality_counterexample(B, j: int, k: int, tol: float = ATOL):
    """A Hamiltonian part and a dissipator in ``CP_B`` that are not B-orthogonal.

    ``B`` must be diagonal, positive definite, with ``b_j != b_k``.  Returns
    ``(H, V, value)`` where ``value`` is the B-inner product of ``i[H,.]``
    with ``Phi - {Phi^*(1)/2, .}``, ``Phi = V(.)V^*``; it equals
    ``(b_j - b_k)(tr(B) - b_j)``.
    """
    b = as_square(B, "B")
    n = b.shape[0]
    if np.linalg.norm(b - np.diag(np.diag(b))) > tol or np.abs(np.diag(b).imag).max() > tol:
        raise InvalidWeightError("B must be real diagonal in the standard basis")
    bd = np.diag(b).real
    if bd.min() <= tol:
        raise InvalidWeightError("B must be positive definite")
    if not (0 <= j < n and 0 <= k < n) or j == k:
        raise InvalidWeightError(f"need distinct indices in range({n}), got {j}, {k}")
    if abs(bd[j] - bd[k]) <= tol:
        raise InvalidWeightError("b_j and b_k must differ")

    def unit(a, c):
        e = np.zeros((n, n), dtype=complex)
        e[a, c] = 1
        return e

    H = bd[k] * unit(j, j) + unit(j, k) + unit(k, j) - bd[j] * unit(k, k)
    v0 = 1j * unit(j, j) + unit(j, k) - unit(k, k)
    trb = bd.sum()
    V = v0 - (np.trace(b @ v0) / trb) * np.eye(n)
    phi = from_kraus([V])
    # i[H,.] against Phi - {Phi^*(1)/2, .}
    value = b_inner(-hamiltonian_part(H), -dissipator_of(phi), b, tol)
    expected = (bd[j] - bd[k]) * (trb - bd[j])
    assert abs(np.trace(b @ H)) <= tol * max(1.0, trb)
    assert abs(np.trace(b @ V)) <= tol * max(1.0, trb)
    assert abs(value - expected) <= 1e-10 * max(1.0, abs(expected)), (value, expected)
    return H, V, value
