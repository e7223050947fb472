import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from weakinv.errors import NumericalError, ValidationError
from weakinv.operators import (
    DensityMatrix,
    HermitianOperator,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    commutator,
    dagger,
    eigh,
    expectation,
    expm_herm,
    geq_margin,
    hermiticity_defect,
    operator_geq,
    variance,
)


def random_hermitian(dim, seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return 0.5 * (g + g.conj().T)


def random_density(dim, seed):
    rng = np.random.default_rng(seed)
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return m / np.trace(m).real


def test_pauli_algebra():
    assert np.allclose(SIGMA_X @ SIGMA_X, np.eye(2))
    assert np.allclose(commutator(SIGMA_X, SIGMA_Y), 2j * SIGMA_Z)
    assert np.allclose(commutator(SIGMA_Y, SIGMA_Z), 2j * SIGMA_X)
    assert np.allclose(commutator(SIGMA_Z, SIGMA_X), 2j * SIGMA_Y)


def test_hermiticity_defect_detects_asymmetry():
    a = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    assert hermiticity_defect(a) == pytest.approx(1.0)
    assert hermiticity_defect(SIGMA_Y) == 0.0


def test_hermitian_operator_rejects_nonhermitian():
    with pytest.raises(ValidationError):
        HermitianOperator.from_matrix(np.array([[0.0, 1.0], [0.0, 0.0]]))


def test_density_matrix_validation():
    rho = DensityMatrix.from_matrix(np.diag([0.25, 0.75]).astype(complex))
    assert rho.trace_defect == pytest.approx(0.0, abs=1e-15)
    assert rho.min_eig == pytest.approx(0.25)

    with pytest.raises(ValidationError):
        DensityMatrix.from_matrix(np.diag([0.5, 0.6]))   # trace 1.1
    with pytest.raises(ValidationError):
        DensityMatrix.from_matrix(np.diag([1.5, -0.5]))  # negative weight


def test_eigh_reconstruction_certified():
    h = random_hermitian(7, 11)
    spec = eigh(h)
    assert spec.recon_error <= 1e-9 * max(1.0, np.abs(h).max())
    assert np.all(np.diff(spec.eigenvalues) >= 0.0)


def test_expectation_and_variance_pure_state():
    # spin up along z: <sz> = 1, var = 0; <sx> = 0, var = 1
    rho = np.diag([1.0, 0.0]).astype(complex)
    assert expectation(SIGMA_Z, rho) == pytest.approx(1.0)
    assert variance(SIGMA_Z, rho) == pytest.approx(0.0, abs=1e-12)
    assert expectation(SIGMA_X, rho) == pytest.approx(0.0, abs=1e-12)
    assert variance(SIGMA_X, rho) == pytest.approx(1.0)


def test_expectation_rejects_large_imaginary_part():
    # tr(a rho) = i/2 for the raising operator against (1 + sigma_y)/2
    rho = 0.5 * (np.eye(2) + SIGMA_Y).astype(complex)
    with pytest.raises(ValidationError):
        expectation(np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex), rho)


def test_expm_herm_inverse_pair():
    h = random_hermitian(5, 3)
    u = expm_herm(h, 1.0) @ expm_herm(h, -1.0)
    assert np.abs(u - np.eye(5)).max() < 1e-12


def test_geq_margin_orders_operators():
    a = np.diag([2.0, 3.0])
    b = np.diag([1.0, 1.0])
    assert geq_margin(a, b) == pytest.approx(1.0)
    assert operator_geq(a, b)
    assert not operator_geq(b, a)


@given(st.integers(2, 8), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_variance_nonnegative(dim, seed):
    a = random_hermitian(dim, seed)
    rho = random_density(dim, seed + 1)
    assert variance(a, rho) >= 0.0


@given(st.integers(2, 8), st.integers(0, 10**6))
@settings(max_examples=40, deadline=None)
def test_eigh_roundtrip_random(dim, seed):
    h = random_hermitian(dim, seed)
    spec = eigh(h)
    rebuilt = (spec.eigenvectors * spec.eigenvalues) @ spec.eigenvectors.conj().T
    assert np.abs(rebuilt - h).max() < 1e-10 * max(1.0, np.abs(h).max())


def test_dagger_matches_conjugate_transpose():
    a = np.array([[1.0, 2.0j], [0.5, -1.0]], dtype=complex)
    assert np.array_equal(dagger(a), a.conj().T)
