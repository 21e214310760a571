"""Unique B-weighted splitting of generators of CP semigroups.

Every ``L`` in the Lie wedge of the CP maps can be written as
``L = K(.) + (.)K^* + Phi`` with ``Phi`` completely positive.  Fixing a weight
``B`` with ``Re tr(B) != 0`` and demanding

* ``tr(Phi(B^* (.) B)) == 0`` and
* ``Im tr(B^* K) == 0``

makes the pair ``(K, Phi)`` unique.  :func:`decompose` computes it in closed
form from the Choi matrix of ``L``; :func:`decompose_constructive` follows
the shift-the-Kraus-operators construction and serves as an independent
route.  :func:`decompose_cptp` specializes to trace-annihilating generators,
returning the Hamiltonian ``H`` with ``L = -i[H,.] + Phi - {Phi^*(1)/2, .}``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Sequence, Union

import numpy as np

from .errors import (
    DimensionError,
    NotHermitianError,
    NotHermitianPreservingError,
    NotInWedgeError,
    NotTracePreservingError,
)
from .linalg import ATOL, as_square, herm_eig, hermiticity_residual, is_hermitian, vec_mat, unvec_mat
from .superop import (
    Superoperator,
    anticommutator_part,
    apply,
    choi,
    dual_map,
    from_kraus,
    hamiltonian_part,
    kraus_from_choi,
    left_right,
    trace_annihilation_residual,
)
from .weighted import WeightMatrix, as_weight, kraus_overlaps


# -- generator specifications ------------------------------------------------

@dataclass
class RawSuperop:
    L: Superoperator


@dataclass
class KWedge:
    """``K0(.) + (.)K0^* + sum_j V_j (.) V_j^*``."""

    K0: np.ndarray
    kraus: List[np.ndarray] = field(default_factory=list)


@dataclass
class Gksl:
    """``-i[H,.] + sum_j (V_j (.) V_j^* - {V_j^* V_j, .}/2)``."""

    H: np.ndarray
    lindblads: List[np.ndarray] = field(default_factory=list)


GeneratorSpec = Union[RawSuperop, KWedge, Gksl]


def build_generator(spec: GeneratorSpec, tol: float = ATOL) -> Superoperator:
    if isinstance(spec, RawSuperop):
        return spec.L
    if isinstance(spec, KWedge):
        k0 = as_square(spec.K0, "K0")
        return left_right(k0) + from_kraus(spec.kraus, dim=k0.shape[0])
    if isinstance(spec, Gksl):
        h = as_square(spec.H, "H")
        if not is_hermitian(h, tol):
            raise NotHermitianError("Hamiltonian must be Hermitian")
        n = h.shape[0]
        phi = from_kraus(spec.lindblads, dim=n)
        rate = sum((v.conj().T @ v for v in map(np.asarray, spec.lindblads)), np.zeros((n, n)))
        return hamiltonian_part(h) + phi - anticommutator_part(0.5 * rate)
    raise TypeError(f"unknown generator spec {type(spec).__name__}")


# -- results ------------------------------------------------------------------

@dataclass
class Diagnostics:
    reconstruction_residual: float
    choi_min_eig: float
    weighted_trace_abs: float
    im_trBK_abs: float
    kernel_residual: float
    tol: float


@dataclass
class Decomposition:
    B: WeightMatrix
    K: np.ndarray
    phi: Superoperator
    phi_choi: np.ndarray
    phi_kraus: List[np.ndarray]
    diagnostics: Diagnostics

    @property
    def H(self) -> np.ndarray:
        """Hermitian ``H`` with ``K = Z - iH``."""
        return 0.5j * (self.K - self.K.conj().T)

    @property
    def Z(self) -> np.ndarray:
        return 0.5 * (self.K + self.K.conj().T)


@dataclass
class CptpDecomposition:
    B: WeightMatrix
    H: np.ndarray
    phi: Superoperator
    phi_choi: np.ndarray
    phi_kraus: List[np.ndarray]
    diagnostics: Diagnostics
    domain_condition_residual: float
    z_residual: float
    trBH_abs: float


def recompose(d: Decomposition) -> Superoperator:
    return left_right(d.K) + d.phi


def recompose_cptp(d: CptpDecomposition) -> Superoperator:
    rate = apply(dual_map(d.phi), np.eye(d.phi.n))
    return hamiltonian_part(d.H) + d.phi - anticommutator_part(0.5 * rate)


# -- the splitting ------------------------------------------------------------

def _finish(L: Superoperator, w: WeightMatrix, K: np.ndarray, phi: Superoperator, tol: float) -> Decomposition:
    c = choi(phi)
    c = 0.5 * (c + c.conj().T)
    vals, _ = herm_eig(c, tol)
    scale = max(1.0, float(abs(vals).max()))
    if vals[-1] < -tol * scale:
        raise NotInWedgeError(
            f"dissipative part has Choi eigenvalue {vals[-1]:.3e}; generator is not in the CP wedge"
        )
    kraus = kraus_from_choi(c, tol)
    diag = Diagnostics(
        reconstruction_residual=float(np.linalg.norm((left_right(K) + phi - L).mat)),
        choi_min_eig=float(vals[-1]),
        weighted_trace_abs=float(abs(np.vdot(w.vec, c @ w.vec))),
        im_trBK_abs=float(abs(np.vdot(w.B, K).imag)),
        kernel_residual=float(np.linalg.norm(c @ w.vec)),
        tol=tol,
    )
    return Decomposition(B=w, K=K, phi=phi, phi_choi=c, phi_kraus=kraus, diagnostics=diag)


def _fix_phase(K: np.ndarray, w: WeightMatrix) -> np.ndarray:
    # K -> K + i*lam*1 leaves K(.)+(.)K^* unchanged; pick lam with Im tr(B^*K) = 0
    return K - 1j * (np.vdot(w.B, K).imag / w.re_trace) * np.eye(K.shape[0])


def decompose(L: Superoperator, B, tol: float = ATOL) -> Decomposition:
    """Split ``L`` into ``K(.) + (.)K^* + Phi`` relative to the weight ``B``.

    With ``Phi`` in ``CP_B`` the Choi matrix of ``Phi`` annihilates ``vec B``,
    so ``C(L) vec B = tr(B) vec K + tr(B K^*) vec 1``.  Pairing with ``vec B``
    gives ``t = tr(B^* K)`` as ``<vec B|C(L)|vec B> / (2 Re tr B)`` and then
    ``K`` directly.

    Raises
    ------
    WeightError
        ``Re tr(B)`` vanishes.
    NotHermitianPreservingError
        ``C(L)`` is not Hermitian.
    NotInWedgeError
        The remainder ``Phi`` is not completely positive.
    """
    w = as_weight(B).require_real_trace(tol)
    if w.n != L.n:
        raise DimensionError(f"weight is {w.n}x{w.n}, generator acts on {L.n}x{L.n}")
    c = choi(L)
    if hermiticity_residual(c) > tol:
        raise NotHermitianPreservingError("generator is not Hermitian-preserving")
    c = 0.5 * (c + c.conj().T)
    cb = c @ w.vec
    s = np.vdot(w.vec, cb)
    if abs(s.imag) > tol * max(1.0, abs(s)):
        raise NotHermitianPreservingError(f"<vec B|C(L)|vec B> has imaginary part {s.imag:.3e}")
    t = s.real / (2 * w.re_trace)
    K = unvec_mat((cb - t * vec_mat(np.eye(L.n))) / w.trace, L.n)
    K = _fix_phase(K, w)
    return _finish(L, w, K, L - left_right(K), tol)


def decompose_constructive(K0, ks: Sequence, B, tol: float = ATOL) -> Decomposition:
    """Split ``K0(.) + (.)K0^* + sum_j V_j (.) V_j^*`` by shifting each ``V_j``.

    Each Kraus operator is replaced by ``V_j - c_j 1`` with
    ``c_j = tr(B^* V_j) / tr(B^*)``, which removes its overlap with ``B``; the
    displaced terms are absorbed into ``K``, whose free ``i*lam*1`` component
    is then fixed by ``Im tr(B^* K) = 0``.
    """
    w = as_weight(B).require_real_trace(tol)
    K0 = as_square(K0, "K0")
    n = K0.shape[0]
    if w.n != n:
        raise DimensionError(f"weight is {w.n}x{w.n}, K0 is {n}x{n}")
    ks = [as_square(v, "Kraus operator") for v in ks]
    eye = np.eye(n)
    coef = kraus_overlaps(ks, w) / np.conj(w.trace)
    shifted = [v - cj * eye for v, cj in zip(ks, coef)]
    K = K0.astype(complex).copy()
    for v, cj in zip(ks, coef):
        K += np.conj(cj) * v
    K -= (np.sum(np.abs(coef) ** 2) / 2) * eye
    K = _fix_phase(K, w)
    L = left_right(K0) + from_kraus(ks, dim=n)
    return _finish(L, w, K, from_kraus(shifted, dim=n), tol)


def decompose_cptp(L: Superoperator, B, tol: float = ATOL) -> CptpDecomposition:
    """Hamiltonian/dissipator split of a trace-annihilating generator.

    Returns Hermitian ``H`` and ``Phi`` in ``CP_B`` with
    ``L = -i[H,.] + Phi - {Phi^*(1)/2, .}`` and
    ``Re tr(B^* H) = Im tr(Phi(B)) / 2``; for Hermitian ``B`` the latter
    reads ``tr(B H) = 0``.
    """
    res = trace_annihilation_residual(L)
    if res > tol:
        raise NotTracePreservingError(f"generator does not annihilate the trace (residual {res:.3e})")
    d = decompose(L, B, tol)
    w = d.B
    H = d.H
    rate = apply(dual_map(d.phi), np.eye(L.n))
    scale = max(1.0, float(np.linalg.norm(L.mat)))
    z_res = float(np.linalg.norm(d.Z + 0.5 * rate))
    if z_res > tol * scale:
        raise NotTracePreservingError(f"anticommutator part deviates from -Phi^*(1)/2 by {z_res:.3e}")
    phi_b = apply(d.phi, w.B)
    dom_res = float(abs(np.vdot(w.B, H).real - 0.5 * np.trace(phi_b).imag))
    trbh = float(abs(np.trace(w.B @ H))) if is_hermitian(w.B, tol) else float("nan")
    return CptpDecomposition(
        B=w,
        H=0.5 * (H + H.conj().T),
        phi=d.phi,
        phi_choi=d.phi_choi,
        phi_kraus=d.phi_kraus,
        diagnostics=d.diagnostics,
        domain_condition_residual=dom_res,
        z_residual=z_res,
        trBH_abs=trbh,
    )


# -- wedge membership ---------------------------------------------------------

@dataclass
class WedgeReport:
    member: bool
    hermitian_residual: float
    cond_cp_min_eig: float
    prefilter_member: bool
    decompose_member: bool
    dissipator_min_eig: float
    tol: float

    @property
    def consistent(self) -> bool:
        return self.prefilter_member == self.decompose_member


def validate_cp_wedge(L: Superoperator, tol: float = ATOL) -> WedgeReport:
    """Membership of ``L`` in the Lie wedge of the CP maps.

    Two verdicts are computed.  The fast one projects the Choi matrix onto the
    complement of the maximally entangled vector and checks that it is PSD
    (conditional complete positivity).  The authoritative one runs
    :func:`decompose` with ``B = 1`` and inspects the spectrum of ``C(Phi)``.
    """
    n = L.n
    c = choi(L)
    herm = hermiticity_residual(c)
    ch = 0.5 * (c + c.conj().T)
    gamma = vec_mat(np.eye(n))
    p = np.eye(n * n) - np.outer(gamma, gamma) / n
    pcp = p @ ch @ p
    vals = np.linalg.eigvalsh(0.5 * (pcp + pcp.conj().T))
    scale = max(1.0, float(abs(vals).max()))
    prefilter = bool(herm <= tol and vals[0] >= -tol * scale)

    dec_ok = False
    diss_min = float("nan")
    if herm <= tol:
        try:
            d = decompose(L, np.eye(n), tol)
            dec_ok = True
            diss_min = d.diagnostics.choi_min_eig
        except NotInWedgeError:
            phi = L - left_right(_closed_form_K(ch, n))
            cp = choi(phi)
            diss_min = float(np.linalg.eigvalsh(0.5 * (cp + cp.conj().T))[0])
    return WedgeReport(
        member=dec_ok,
        hermitian_residual=herm,
        cond_cp_min_eig=float(vals[0]),
        prefilter_member=prefilter,
        decompose_member=dec_ok,
        dissipator_min_eig=diss_min,
        tol=tol,
    )


def _closed_form_K(c: np.ndarray, n: int) -> np.ndarray:
    """``K`` of the ``B = 1`` splitting, without any membership check."""
    g = vec_mat(np.eye(n))
    cb = c @ g
    t = np.vdot(g, cb).real / (2 * n)
    return unvec_mat((cb - t * g) / n, n)
