import itertools

import numpy as np
import pytest

from sepscope.bases import basis_element, bloch_operator, element_norm, label, local_basis, pauli, su_d_generators


def test_pauli_matrices():
    np.testing.assert_array_equal(pauli(0), np.eye(2))
    np.testing.assert_array_equal(pauli(1), [[0, 1], [1, 0]])
    np.testing.assert_array_equal(pauli(2), [[0, -1j], [1j, 0]])
    np.testing.assert_array_equal(pauli(3), [[1, 0], [0, -1]])
    with pytest.raises(IndexError):
        pauli(4)


def test_pauli_algebra():
    x, y, z = pauli(1), pauli(2), pauli(3)
    np.testing.assert_allclose(x @ y, 1j * z)
    for a, b in itertools.product(range(4), repeat=2):
        assert np.trace(pauli(a) @ pauli(b)) == 2 * (a == b)


def test_su2_generators_are_scaled_paulis():
    gens = su_d_generators(2).elements[1:]
    for g, k in zip(gens, range(1, 4)):
        np.testing.assert_allclose(g, pauli(k) / np.sqrt(2), atol=1e-15)


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_gram_matrix_is_identity(d):
    gens = su_d_generators(d).elements[1:]
    assert len(gens) == d * d - 1
    gram = np.array([[np.trace(a @ b) for b in gens] for a in gens])
    np.testing.assert_allclose(gram, np.eye(d * d - 1), atol=1e-12)
    for g in gens:
        assert abs(np.trace(g)) < 1e-12
        np.testing.assert_allclose(g, g.conj().T)


def test_su_d_identity_first():
    basis = su_d_generators(3)
    np.testing.assert_array_equal(basis[0], np.eye(3))
    np.testing.assert_allclose(basis.norms(), [3] + [1] * 8)


def test_local_basis_picks_paulis_for_qubits():
    np.testing.assert_array_equal(local_basis(2)[3], pauli(3))
    assert len(local_basis(3)) == 9


def test_basis_element_examples():
    np.testing.assert_array_equal(basis_element((2, 2, 2), (0, 0, 0)), np.eye(8))
    expected = np.kron(np.kron(pauli(3), pauli(3)), np.eye(2))
    np.testing.assert_array_equal(basis_element((2, 2, 2), (3, 3, 0)), expected)


def test_qubit_qutrit_elements_orthogonal():
    shape = (2, 3)
    for mu, nu in itertools.product(range(1, 9), repeat=2):
        a, b = basis_element(shape, (1, mu)), basis_element(shape, (1, nu))
        assert np.isclose(np.trace(a @ b), 2 * (mu == nu), atol=1e-12)


def test_element_norm_matches_trace():
    shape = (2, 3)
    for idx in itertools.product(range(4), range(9)):
        b = basis_element(shape, idx)
        assert np.isclose(np.trace(b @ b).real, element_norm(shape, idx))


def test_basis_element_bad_index():
    with pytest.raises(IndexError):
        basis_element((2, 2), (0, 4))


def test_labels():
    assert label((2, 2, 2), (1, 2, 0)) == "xy0"
    assert "5" in label((2, 3), (3, 5))


def test_bloch_operator():
    np.testing.assert_allclose(bloch_operator([0, 0, 1]), pauli(3))
    np.testing.assert_allclose(bloch_operator([1, 1, 0]), pauli(1) + pauli(2))
