import itertools

import numpy as np
import pytest

from cpsplit import errors
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
    transpose_criterion,
    transpose_decomposition,
)
from cpsplit.decompose import build_generator, decompose_cptp
from cpsplit.sampling import ginibre, hermitian, hermitian_weight, kraus_set, pd_weight, weight
from cpsplit.superop import (
    Superoperator,
    choi,
    from_kraus,
    hamiltonian_part,
    identity,
    left_right,
    transpose_map,
)
from cpsplit.weighted import b_inner, in_cp_b

from conftest import I2, SX, SZ, unit

GRID = (0.0, 0.5, 1.0, 2.0, 5.0)


# -- Bloch -------------------------------------------------------------------------

def test_bloch_params_reject_negative_rates():
    with pytest.raises(ValueError):
        BlochParams(1.0, -0.1)


def test_bloch_matrix_examples():
    np.testing.assert_array_equal(bloch_generator(BlochParams(1)).mat, np.diag([0, 1j, -1j, 0]))
    m = bloch_generator(BlochParams(0, 1, 1, 0)).mat
    np.testing.assert_array_equal(m[0], [-1, 0, 0, 1])
    np.testing.assert_array_equal(m[3], [1, 0, 0, -1])
    assert m[1, 1] == -1 and m[2, 2] == -1


def test_bloch_grid_matches_gksl_construction():
    for w, g1, g2, g3 in itertools.product(GRID, repeat=4):
        p = BlochParams(w, g1, g2, g3)
        diff = np.abs(bloch_generator(p).mat - build_generator(bloch_spec(p)).mat).max()
        assert diff <= 1e-12, p


def test_reference_parts_identity_weight():
    p = BlochParams(0.7, 1.1, 0.4, 0.3)
    ham, gam = bloch_reference_parts(p, I2)
    np.testing.assert_allclose(gam.mat, dissipator_of(from_kraus(bloch_spec(p).lindblads)).mat, atol=1e-15)
    np.testing.assert_allclose(ham.mat, hamiltonian_part(0.35 * SZ).mat, atol=1e-15)


@pytest.mark.parametrize("hermitian_b", [True, False])
def test_reference_parts_match_cptp_decomposition(rng, hermitian_b):
    for _ in range(15):
        p = BlochParams(*rng.uniform(0, 3, size=4))
        b = hermitian_weight(2, rng) if hermitian_b else weight(2, rng)
        ham, gam = bloch_reference_parts(p, b)
        d = decompose_cptp(bloch_generator(p), b)
        assert np.abs(ham.mat - hamiltonian_part(d.H).mat).max() <= 1e-10
        assert np.abs(gam.mat - dissipator_of(d.phi).mat).max() <= 1e-10


def test_hermitian_simplification(rng):
    p = BlochParams(1.0, 2.0, 0.5, 0.25)
    b = I2 + 0.25 * SX
    np.testing.assert_allclose(bloch_gamma_hermitian(p, b).mat, bloch_reference_parts(p, b)[1].mat, atol=1e-14)
    # with unit trace the entries use b_12 itself
    bn = b / np.trace(b)
    x = bn[0, 1] / 2 * (p.gamma1 - p.gamma2)
    gam = bloch_gamma_hermitian(p, bn).mat
    assert abs(gam[0, 1] - x) < 1e-15 and abs(gam[1, 0] + np.conj(x)) < 1e-15
    for _ in range(10):
        b = hermitian_weight(2, rng)
        np.testing.assert_allclose(bloch_gamma_hermitian(p, b).mat, bloch_reference_parts(p, b)[1].mat, atol=1e-12)


def test_bloch_weight_errors():
    p = BlochParams(1.0, 1.0)
    with pytest.raises(errors.WeightError):
        bloch_reference_parts(p, SZ)
    with pytest.raises(errors.DimensionError):
        bloch_reference_parts(p, np.eye(3))
    with pytest.raises(errors.WeightError):
        bloch_gamma_hermitian(p, I2 + unit(2, 0, 1))


# -- transposition -------------------------------------------------------------------

def test_transpose_identity_weight_has_no_split():
    t = transpose_decomposition(I2)
    assert not t.exists and t.criterion == 2


def test_transpose_psd_weight_splits():
    b = np.array([[1, 1j], [-1j, 1]])
    t = transpose_decomposition(b)
    assert t.exists and abs(t.criterion) < 1e-15
    assert np.abs(t.K).max() < 1e-15
    np.testing.assert_allclose(t.phi.mat, transpose_map(2).mat, atol=1e-15)
    assert abs(t.weighted_trace) <= 1e-12
    assert t.min_sampled_eig >= -1e-10


def test_transpose_both_branches_near_sigma_z():
    # B = diag(1 + eps, -1) + delta (i|0><1| - i|1><0|): tr(B conj(B)) = (1 + eps)^2 + 1 - 2 delta^2
    base = np.diag([1.0, -1.0])
    no = transpose_decomposition(base + np.array([[0.1, 0.5j], [-0.5j, 0]]))
    assert not no.exists and abs(no.criterion - (1.21 + 1 - 0.5)) < 1e-14
    yes = transpose_decomposition(base + np.array([[0.1, 1.2j], [-1.2j, 0]]))
    assert abs(yes.criterion - (1.21 + 1 - 2.88)) < 1e-14
    assert yes.exists and yes.criterion.real < 0


def test_transpose_split_is_valid(rng):
    found = 0
    for _ in range(200):
        b = weight(2, rng)
        t = transpose_decomposition(b)
        crit = np.trace(b @ b.conj())
        assert t.exists == (abs(crit.imag) <= 1e-12 * max(1, np.linalg.norm(b) ** 2) and crit.real <= 1e-12 * max(1, np.linalg.norm(b) ** 2))
        if t.exists:
            found += 1
            np.testing.assert_allclose((left_right(t.K) + t.phi).mat, transpose_map(2).mat, atol=1e-12)
            assert abs(t.weighted_trace) <= 1e-10
            assert abs(np.vdot(b, t.K).imag) <= 1e-12
            assert t.min_sampled_eig >= -1e-10
    # random Hermitian weights cover the decomposable branch
    for _ in range(200):
        b = hermitian_weight(2, rng)
        t = transpose_decomposition(b)
        assert t.exists == (np.trace(b @ b.conj()).real <= 1e-12 * max(1, np.linalg.norm(b) ** 2))
        found += t.exists
    assert found > 0


def test_transpose_hypothesis_boundary():
    b = unit(2, 0, 1)
    assert transpose_criterion(b) == 0
    with pytest.raises(errors.WeightError):
        transpose_decomposition(b)


# -- depolarizing ---------------------------------------------------------------------

def test_depolarizing_map_action(rng):
    x = ginibre(3, rng)
    np.testing.assert_allclose(depolarizing_map(3)(x), np.trace(x) * np.eye(3) / 3, atol=1e-15)


def test_depolarizing_examples():
    r = depolarizing_exclusion(SZ)
    assert r.excluded and r.choi_rank == 4
    assert abs(r.overlap_norm - 1) < 1e-15
    assert abs(r.kernel_residual - np.sqrt(2) / 2) < 1e-15
    r = depolarizing_exclusion(I2)
    assert r.excluded and abs(r.weighted_trace - 1) < 1e-15
    with pytest.raises(errors.ZeroWeightError):
        depolarizing_exclusion(np.zeros((3, 3)))
    with pytest.raises(errors.DimensionError):
        depolarizing_exclusion(I2, n=3)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_depolarizing_random_weights(rng, n):
    for _ in range(10):
        b = ginibre(n, rng)
        r = depolarizing_exclusion(b)
        assert r.choi_is_scaled_identity and r.choi_rank == n * n
        assert abs(r.kernel_residual - np.linalg.norm(b) / n) <= 1e-12
        assert abs(r.kernel_residual - r.expected_residual) <= 1e-12
        assert abs(r.overlap_norm - np.linalg.norm(b) / np.sqrt(n)) <= 1e-12
        assert r.excluded and not in_cp_b(depolarizing_map(n), b)[0]


# -- orthogonality -------------------------------------------------------------------

def test_orthogonality_examples():
    _, _, v = orthogonality_counterexample(np.diag([2.0, 1.0]), 0, 1)
    assert abs(v - 1) < 1e-10
    _, _, v = orthogonality_counterexample(np.diag([3.0, 1.0, 1.0]), 0, 2)
    assert abs(v - 4) < 1e-10


def test_orthogonality_value_against_oracle(rng):
    for _ in range(10):
        n = int(rng.integers(2, 5))
        bd = rng.uniform(0.2, 3, size=n)
        j, k = rng.choice(n, size=2, replace=False)
        b = np.diag(bd)
        H, V, value = orthogonality_counterexample(b, int(j), int(k))
        phi = from_kraus([V])
        direct = b_inner(-1 * hamiltonian_part(H), -1 * dissipator_of(phi), b)
        assert abs(value - direct) < 1e-12
        assert abs(value - (bd[j] - bd[k]) * (bd.sum() - bd[j])) < 1e-10
        assert in_cp_b(phi, b)[0]


@pytest.mark.parametrize(
    "b, j, k",
    [
        (2.0 * np.eye(2), 0, 1),
        (np.array([[2.0, 0.1], [0.1, 1.0]]), 0, 1),
        (np.diag([1.0, -1.0]), 0, 1),
        (np.diag([2.0, 1.0]), 0, 0),
        (np.diag([2.0, 1.0]), 0, 2),
    ],
)
def test_orthogonality_rejects(b, j, k):
    with pytest.raises(errors.InvalidWeightError):
        orthogonality_counterexample(b, j, k)


def test_orthogonal_to_cp_b(rng):
    """K(.) + (.)K^* is B-orthogonal to every element of CP_B."""
    for n in (2, 3):
        b = pd_weight(n, rng)
        cb = np.conj(np.trace(b))
        ops = [v - np.vdot(b, v) / cb * np.eye(n) for v in kraus_set(n, 3, rng)]
        val = b_inner(left_right(ginibre(n, rng)), from_kraus(ops), b)
        assert abs(val) <= 1e-10


def test_identity_weight_hamiltonian_dissipator_orthogonal(rng):
    for n in (2, 3):
        h = hermitian(n, rng)
        h -= np.trace(h) / n * np.eye(n)
        ops = [v - np.trace(v) / n * np.eye(n) for v in kraus_set(n, 2, rng)]
        val = b_inner(-1 * hamiltonian_part(h), -1 * dissipator_of(from_kraus(ops)), np.eye(n))
        assert abs(val) <= 1e-10


def test_dissipator_of_matches_definition(rng):
    ops = kraus_set(3, 2, rng)
    x = ginibre(3, rng)
    rate = sum(v.conj().T @ v for v in ops)
    expect = 0.5 * (rate @ x + x @ rate) - sum(v @ x @ v.conj().T for v in ops)
    np.testing.assert_allclose(dissipator_of(from_kraus(ops))(x), expect, atol=1e-12)
    assert isinstance(dissipator_of(identity(2)), Superoperator)
    assert choi(dissipator_of(identity(2))).shape == (4, 4)
