"""Acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL ...`` line (visible
without ``-s``) and then asserts.  Instances come from fixed seeds.
"""
import itertools
import time

import numpy as np
import pytest

from cpsplit.casework import (
    BlochParams,
    bloch_gamma_hermitian,
    bloch_generator,
    bloch_reference_parts,
    bloch_spec,
    depolarizing_exclusion,
    depolarizing_map,
    dissipator_of,
    orthogonality_counterexample,
    transpose_decomposition,
)
from cpsplit.decompose import KWedge, build_generator, decompose, decompose_constructive, decompose_cptp, recompose
from cpsplit.linalg import vec_mat
from cpsplit.sampling import (
    ginibre,
    gksl_spec,
    hermitian,
    hermitian_weight,
    isometry,
    kraus_set,
    mix_kraus,
    pd_weight,
    state,
    weight,
)
from cpsplit.superop import anticommutator_part, choi, from_kraus, hamiltonian_part, identity, left_right, transpose_map
from cpsplit.weighted import (
    b_inner,
    b_inner_closed_forms,
    composition_trace,
    entanglement_fidelity,
    in_cp_b,
    weighted_trace,
)


@pytest.fixture
def report(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\ncriterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
        assert ok, detail

    return emit


def wedge_instances(seed, count=200):
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        n = (2, 3, 4)[i % 3]
        m = int(rng.integers(1, 5))
        k0, ops, b = ginibre(n, rng), kraus_set(n, m, rng), weight(n, rng)
        out.append((k0, ops, b))
    return out


INSTANCES = wedge_instances(1001)


def test_criterion_1_round_trip(report):
    worst = dict(recon=0.0, imtrbk=0.0, wt=0.0, mineig=0.0)
    ok = True
    start = time.perf_counter()
    for k0, ops, b in INSTANCES:
        L = build_generator(KWedge(k0, ops))
        d = decompose(L, b)
        cn = max(np.linalg.norm(d.phi_choi), 1e-300)
        recon = np.linalg.norm((recompose(d) - L).mat) / max(1.0, np.linalg.norm(L.mat))
        imtrbk = abs(np.vdot(b, d.K).imag)
        wt = abs(weighted_trace(d.phi, b)) / cn
        mineig = -np.linalg.eigvalsh(d.phi_choi)[0] / cn
        ok &= recon <= 1e-10 and imtrbk <= 1e-11 and wt <= 1e-10 and mineig <= 1e-9
        worst = {k: max(worst[k], v) for k, v in zip(worst, (recon, imtrbk, wt, mineig))}
    elapsed = time.perf_counter() - start
    ok &= elapsed < 10
    detail = (
        f"200 instances in {elapsed:.2f}s; max rel recon {worst['recon']:.1e}, "
        f"|Im tr(B*K)| {worst['imtrbk']:.1e}, rel |wt| {worst['wt']:.1e}, rel -min eig {worst['mineig']:.1e}"
    )
    report(1, bool(ok), detail)


def test_criterion_2_dual_algorithm(report):
    dk = dc = 0.0
    for k0, ops, b in INSTANCES:
        d1 = decompose(build_generator(KWedge(k0, ops)), b)
        d2 = decompose_constructive(k0, ops, b)
        dk = max(dk, np.linalg.norm(d1.K - d2.K))
        dc = max(dc, np.linalg.norm(d1.phi_choi - d2.phi_choi))
    report(2, dk <= 1e-9 and dc <= 1e-9, f"max |K - K'| {dk:.1e}, max |C - C'| {dc:.1e} over 200 instances")


def test_criterion_3_uniqueness(report):
    rng = np.random.default_rng(1003)
    worst = 0.0
    count = 0
    for lam in (-1.0, 0.3, 7.0):
        for _ in range(20):
            n = int(rng.integers(2, 5))
            m = int(rng.integers(1, 5))
            k0, ops, b = ginibre(n, rng), kraus_set(n, m, rng), weight(n, rng)
            ref = decompose(build_generator(KWedge(k0, ops)), b)
            mixed = mix_kraus(ops, isometry(m + 2, m, rng))
            alt = decompose(build_generator(KWedge(k0 + 1j * lam * np.eye(n), mixed)), b)
            worst = max(worst, np.linalg.norm(ref.K - alt.K), np.linalg.norm(ref.phi_choi - alt.phi_choi))
            count += 1
    report(3, worst <= 1e-9, f"{count} instances, lambda in (-1, 0.3, 7); max deviation {worst:.1e}")


def test_criterion_4_gks_recovery(report):
    rng = np.random.default_rng(1004)
    tr_v = tr_h = 0.0
    for i in range(100):
        n = (2, 3, 4)[i % 3]
        d = decompose_cptp(build_generator(gksl_spec(n, rng)), np.eye(n))
        tr_v = max([tr_v] + [abs(np.trace(v)) for v in d.phi_kraus])
        tr_h = max(tr_h, abs(np.trace(d.H)))
    report(4, tr_v <= 1e-9 and tr_h <= 1e-10, f"100 generators; max |tr V_j| {tr_v:.1e}, max |tr H| {tr_h:.1e}")


def test_criterion_5_bloch(report):
    grid = (0.0, 0.5, 1.0, 2.0, 5.0)
    g_err = 0.0
    for w, g1, g2, g3 in itertools.product(grid, repeat=4):
        p = BlochParams(w, g1, g2, g3)
        g_err = max(g_err, np.abs(bloch_generator(p).mat - build_generator(bloch_spec(p)).mat).max())
    rng = np.random.default_rng(1005)
    r_err = s_err = 0.0
    for _ in range(50):
        p = BlochParams(*rng.uniform(0, 3, size=4))
        b = hermitian_weight(2, rng)
        ham, gam = bloch_reference_parts(p, b)
        d = decompose_cptp(bloch_generator(p), b)
        r_err = max(r_err, np.abs(ham.mat - hamiltonian_part(d.H).mat).max(), np.abs(gam.mat - dissipator_of(d.phi).mat).max())
        s_err = max(s_err, np.abs(bloch_gamma_hermitian(p, b).mat - dissipator_of(d.phi).mat).max())
    ok = g_err <= 1e-12 and r_err <= 1e-10 and s_err <= 1e-10
    report(5, ok, f"625-point grid max {g_err:.1e}; 50 Hermitian B: reference parts {r_err:.1e}, Hermitian form {s_err:.1e}")


def test_criterion_6_orthogonality(report):
    rng = np.random.default_rng(1006)
    ortho = 0.0
    for i in range(100):
        n = (2, 3, 4)[i % 3]
        b = pd_weight(n, rng)
        cb = np.conj(np.trace(b))
        ops = [v - np.vdot(b, v) / cb * np.eye(n) for v in kraus_set(n, int(rng.integers(1, 4)), rng)]
        ortho = max(ortho, abs(b_inner(left_right(ginibre(n, rng)), from_kraus(ops), b)))
    closed = 0.0
    for i in range(100):
        n = (2, 3)[i % 2]
        h, z, b = hermitian(n, rng), hermitian(n, rng), pd_weight(n, rng)
        ops = kraus_set(n, int(rng.integers(1, 4)), rng)
        c1, c2, c3 = b_inner_closed_forms(h, z, ops, b)
        ih = -1 * hamiltonian_part(h)
        phi = from_kraus(ops)
        closed = max(
            closed,
            abs(c1 - b_inner(ih, anticommutator_part(z), b)),
            abs(c2 - b_inner(ih, phi, b)),
            abs(c3 - b_inner(anticommutator_part(z), phi, b)),
        )
    _, _, value = orthogonality_counterexample(np.diag([2.0, 1.0]), 0, 1)
    ok = ortho <= 1e-10 and closed <= 1e-11 and abs(value - 1) <= 1e-10
    report(6, ok, f"max |<K-part, Phi>_B| {ortho:.1e}; closed forms {closed:.1e}; diag(2,1) value {value.real:.12f}")


def test_criterion_7_transposition(report):
    a = transpose_decomposition(np.eye(2))
    ok_a = (not a.exists) and abs(a.criterion - 2) <= 1e-12
    b = transpose_decomposition(np.array([[1, 1j], [-1j, 1]]))
    ok_b = b.exists and np.abs(b.K).max() <= 1e-12 and np.abs(b.phi.mat - transpose_map(2).mat).max() <= 1e-12 and abs(b.weighted_trace) <= 1e-12
    rng = np.random.default_rng(1007)
    mismatches = positives = 0
    for i in range(100):
        n = (2, 3)[i % 2]
        bm = hermitian_weight(n, rng) if i % 4 < 2 else weight(n, rng)
        crit = sum(bm[j, k] * np.conj(bm[k, j]) for j in range(n) for k in range(n))
        expect = abs(crit) <= 1e-12 or (abs(crit.imag) <= 1e-12 and crit.real <= 0)
        got = transpose_decomposition(bm).exists
        mismatches += got != expect
        positives += expect
    ok = ok_a and ok_b and mismatches == 0 and positives > 0
    report(7, ok, f"B=I criterion {a.criterion.real:g}, no split: {ok_a}; PSD example split: {ok_b}; "
                  f"100 random B: {mismatches} mismatches, {positives} decomposable")


def test_criterion_8_depolarizing(report):
    rng = np.random.default_rng(1008)
    worst = 0.0
    ok = True
    for n in (2, 3):
        d = depolarizing_map(n)
        c = choi(d)
        ok &= np.linalg.matrix_rank(c) == n * n and np.allclose(c, np.eye(n * n) / n, atol=1e-15)
        for _ in range(20):
            b = ginibre(n, rng)
            res = np.linalg.norm(c @ vec_mat(b))
            over = np.sqrt(weighted_trace(d, b).real)
            r = depolarizing_exclusion(b)
            worst = max(worst, abs(res - np.linalg.norm(b) / n), abs(over - np.linalg.norm(b) / np.sqrt(n)),
                        abs(r.kernel_residual - res))
            ok &= not in_cp_b(d, b)[0] and r.excluded
    ok &= worst <= 1e-12
    report(8, bool(ok), f"C(D) = 1/n with rank n^2; |C(D) vec B| = |B|_F/n and Kraus-overlap norm = |B|_F/sqrt(n), "
                        f"max deviation {worst:.1e}; never in CP_B")


def test_criterion_9_identity_chain(report):
    rng = np.random.default_rng(1009)
    worst = 0.0
    for i in range(200):
        n = (2, 3, 4)[i % 3]
        ops = kraus_set(n, int(rng.integers(1, 5)), rng)
        phi, b = from_kraus(ops), ginibre(n, rng)
        w1 = weighted_trace(phi, b)
        w2 = composition_trace(phi, b.conj().T, b)
        w3 = sum(abs(np.trace(b.conj().T @ v)) ** 2 for v in ops)
        worst = max(worst, abs(w1 - w2), abs(w1 - w3), abs(w2 - w3))
    fid = 0.0
    for i in range(20):
        n = (2, 3, 4)[i % 3]
        fid = max(fid, abs(entanglement_fidelity(identity(n), state(n, rng)) - 1))
    report(9, worst <= 1e-11 and fid <= 1e-12, f"200 pairs max pairwise gap {worst:.1e}; F_e(id, rho) max gap {fid:.1e}")
