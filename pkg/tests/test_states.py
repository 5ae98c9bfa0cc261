import itertools

import numpy as np
import pytest

from sepscope import states
from sepscope.hs import decompose, is_mds_pattern
from sepscope.kernel import kron


def _ket(bits: str) -> np.ndarray:
    v = np.zeros(2 ** len(bits))
    v[int(bits, 2)] = 1
    return v


def test_ghz_variant_one_matrix():
    expected = np.zeros((8, 8))
    expected[np.ix_([0, 7], [0, 7])] = 0.5
    np.testing.assert_allclose(states.ghz_state(1).matrix, expected, atol=1e-15)


def test_ghz_variant_two_flips_corner_sign():
    m = states.ghz_state(2).matrix
    np.testing.assert_allclose(np.diag(m), np.diag(states.ghz_state(1).matrix))
    assert m[0, 7] == pytest.approx(-0.5)


def test_ghz_variants_orthonormal_basis():
    vecs = np.array([states.ghz_vector(k) for k in range(1, 9)])
    np.testing.assert_allclose(vecs @ vecs.conj().T, np.eye(8), atol=1e-15)


def test_ghz_variant_out_of_range():
    with pytest.raises(ValueError):
        states.ghz_state(9)


def test_w_state():
    v = (_ket("001") + _ket("010") + _ket("100")) / np.sqrt(3)
    np.testing.assert_allclose(states.w_state().matrix, np.outer(v, v), atol=1e-15)


def test_r_gate_action():
    r = states.braid_r_gate()
    np.testing.assert_allclose(r @ _ket("00"), (_ket("00") - _ket("11")) / np.sqrt(2))
    np.testing.assert_allclose(r @ r.T, np.eye(4), atol=1e-15)


def test_yang_baxter():
    r = states.braid_r_gate()
    i2 = np.eye(2)
    lhs = kron(r, i2) @ kron(i2, r) @ kron(r, i2)
    rhs = kron(i2, r) @ kron(r, i2) @ kron(i2, r)
    assert np.max(np.abs(lhs - rhs)) <= 1e-14


@pytest.mark.parametrize("n", [3, 4])
def test_braid_relations(n):
    g = {i: states.braid_generator(n, i) for i in range(1, n)}
    for i in range(1, n - 1):
        assert np.max(np.abs(g[i] @ g[i + 1] @ g[i] - g[i + 1] @ g[i] @ g[i + 1])) <= 1e-14
    for i, j in itertools.combinations(range(1, n), 2):
        if j - i >= 2:
            assert np.max(np.abs(g[i] @ g[j] - g[j] @ g[i])) <= 1e-14


def test_braid_generator_bounds():
    with pytest.raises(IndexError):
        states.braid_generator(3, 3)
    with pytest.raises(ValueError):
        states.braid_generator(1, 1)


def test_braid_state_b1_amplitudes():
    v = (_ket("000") - _ket("011") - _ket("101") - _ket("110")) / 2
    np.testing.assert_array_equal(8 * states.braid_state(3, 1).matrix, 8 * np.outer(v, v))


def test_braid_states_orthonormal():
    mats = [states.braid_state(3, i).matrix for i in range(1, 9)]
    total = sum(mats)
    np.testing.assert_allclose(total, np.eye(8), atol=1e-14)


def test_ghz_diagonal_examples():
    np.testing.assert_allclose(states.ghz_diagonal([1] + [0] * 7).matrix, states.ghz_state(1).matrix, atol=1e-15)
    np.testing.assert_allclose(states.ghz_diagonal([1 / 8] * 8).matrix, np.eye(8) / 8, atol=1e-15)
    q = 0.3
    mixed = states.ghz_diagonal(states.ghz_noise_params(q))
    np.testing.assert_allclose(mixed.matrix, states.mix_white_noise(states.ghz_state(1), q).matrix, atol=1e-15)


def test_ghz_diag_params_sorts():
    params = states.GhzDiagParams.from_probabilities([0.1, 0.5, 0, 0, 0.2, 0.2, 0, 0])
    assert params.p == (0.5, 0.2, 0.2, 0.1, 0, 0, 0, 0)
    assert params.permutation[:4] == (1, 4, 5, 0)


@pytest.mark.parametrize("probs", [[0.5] * 8, [-0.1, 1.1] + [0] * 6, [1, 0]])
def test_ghz_diag_params_invalid(probs):
    with pytest.raises(ValueError):
        states.GhzDiagParams.from_probabilities(probs)


def test_mix_white_noise_endpoints(rng):
    rho = states.random_density((2, 3), rng)
    np.testing.assert_allclose(states.mix_white_noise(rho, 1).matrix, rho.matrix)
    np.testing.assert_allclose(states.mix_white_noise(rho, 0).matrix, np.eye(6) / 6)
    with pytest.raises(ValueError):
        states.mix_white_noise(rho, 1.5)


def test_named_examples():
    rho = states.named_example("four_qubit_xyz")
    np.testing.assert_allclose(np.linalg.eigvalsh(rho.matrix), [0] * 12 + [0.25] * 4, atol=1e-12)
    np.testing.assert_allclose(states.named_example("two_param", 0, 0).matrix, np.eye(8) / 8)
    spec = np.linalg.eigvalsh(8 * states.two_param(0.6, 0.8).matrix)
    np.testing.assert_allclose(spec, [0] * 4 + [2] * 4, atol=1e-12)
    with pytest.raises(ValueError):
        states.named_example("nope")


def test_two_param_outside_disk():
    with pytest.raises(ValueError):
        states.two_param(0.8, 0.8)


def test_is_mds():
    assert states.is_mds(states.four_qubit_xyz())
    assert not states.is_mds(states.ghz_state(1))
    assert states.is_mds(states.mix_white_noise(states.four_qubit_xyz(), 0))


@pytest.mark.parametrize("shape", [(2, 2, 2), (2, 3), (2, 2, 2, 2)])
def test_random_mds(shape, rng):
    rho = states.random_mds(shape, rng)
    assert states.is_mds(rho)
    assert is_mds_pattern(decompose(rho))


def test_mds_from_correlations():
    rho = states.mds_from_correlations((2, 2), {(3, 3): 0.5})
    np.testing.assert_allclose(np.diag(rho.matrix).real, [0.375, 0.125, 0.125, 0.375])
    with pytest.raises(ValueError):
        states.mds_from_correlations((2, 2), {(3, 0): 0.5})


def test_product_state():
    rho = states.product_state([np.diag([1, 0]), np.eye(3) / 3])
    assert rho.shape == (2, 3)
    assert np.trace(rho.matrix) == pytest.approx(1)
