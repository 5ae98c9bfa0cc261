import numpy as np
import pytest

from sepscope.bases import pauli
from sepscope.kernel import (
    HermiticityError,
    NegativityError,
    ShapeError,
    TraceError,
    default_tol,
    eig_hermitian,
    kron,
    partial_trace,
    svd_real,
    validate_density,
)


def test_kron_identities():
    np.testing.assert_array_equal(kron([np.eye(2), np.eye(2)]), np.eye(4))


def test_kron_zz_is_diagonal():
    z = pauli(3)
    np.testing.assert_array_equal(kron(z, z), np.diag([1, -1, -1, 1]))


def test_kron_first_factor_is_outermost():
    e0, e1 = np.array([[1], [0]]), np.array([[0], [1]])
    v = kron(e1, e0, e1).ravel()
    assert np.argmax(v) == 0b101


def test_kron_rejects_empty():
    with pytest.raises(ValueError):
        kron([])


def test_eig_diagonal():
    np.testing.assert_allclose(eig_hermitian(np.diag([0.75, 0.25])), [0.25, 0.75])


def test_eig_sigma_x():
    np.testing.assert_allclose(eig_hermitian(pauli(1)), [-1, 1])


def test_eig_rejects_non_hermitian():
    with pytest.raises(HermiticityError):
        eig_hermitian(np.array([[0, 1], [0, 0]]))


def test_eig_vectors_diagonalize(rng):
    a = rng.normal(size=(5, 5)) + 1j * rng.normal(size=(5, 5))
    h = a + a.conj().T
    w, v = eig_hermitian(h, vectors=True)
    np.testing.assert_allclose(v.conj().T @ h @ v, np.diag(w), atol=1e-12)
    assert np.all(np.diff(w) >= 0)


@pytest.mark.parametrize(
    "m, expected",
    [
        (np.zeros((3, 8)), [0, 0, 0]),
        (np.eye(3), [1, 1, 1]),
        (np.array([[2.0, 0], [0, 0]]), [2, 0]),
    ],
)
def test_svd_examples(m, expected):
    _, s, _ = svd_real(m)
    np.testing.assert_allclose(s, expected)


def test_svd_reconstructs(rng):
    m = rng.normal(size=(3, 8))
    u, s, v = svd_real(m)
    np.testing.assert_allclose(u.T @ u, np.eye(3), atol=1e-12)
    np.testing.assert_allclose(v.T @ v, np.eye(8), atol=1e-12)
    full = np.zeros((3, 8))
    full[:3, :3] = np.diag(s)
    np.testing.assert_allclose(u @ full @ v.T, m, atol=1e-12)
    assert np.all(np.diff(s) <= 0)


def test_validate_ghz_matrix():
    eight_rho = np.zeros((8, 8))
    eight_rho[0, 0] = eight_rho[0, 7] = eight_rho[7, 0] = eight_rho[7, 7] = 4
    rho = validate_density(eight_rho / 8, [2, 2, 2])
    assert rho.shape == (2, 2, 2) and rho.dim == 8 and rho.n_sites == 3
    assert rho.all_qubits


def test_validate_errors():
    with pytest.raises(TraceError):
        validate_density(2 * np.eye(2), [2])
    with pytest.raises(HermiticityError):
        validate_density(np.array([[0, 1], [0, 0]]), [2])
    with pytest.raises(NegativityError):
        validate_density(np.diag([1.5, -0.5]), [2])
    with pytest.raises(ShapeError):
        validate_density(np.eye(4) / 4, [2, 3])


def test_validated_matrix_is_read_only():
    rho = validate_density(np.eye(2) / 2, [2])
    with pytest.raises(ValueError):
        rho.matrix[0, 0] = 1


def test_tolerance_env_override(monkeypatch):
    assert default_tol() == 1e-9
    monkeypatch.setenv("SEPSCOPE_TOL", "1e-6")
    assert default_tol() == 1e-6
    validate_density(np.diag([1 + 5e-7, -5e-7]), [2])


def test_partial_trace_of_product(rng):
    a = np.diag([0.3, 0.7])
    b = np.diag([0.1, 0.2, 0.7])
    np.testing.assert_allclose(partial_trace(kron(a, b), (2, 3), 0), b)
    np.testing.assert_allclose(partial_trace(kron(a, b), (2, 3), 1), a)
