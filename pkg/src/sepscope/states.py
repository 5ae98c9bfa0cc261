"""Constructors for the states analysed by the library."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .bases import basis_element
from .hs import HSDecomposition, is_mds_pattern, reconstruct
from .kernel import DensityMatrix, kron, partial_trace, validate_density

FACTORY_TOL = 1e-12

# (first branch, second branch, sign) on three qubits; variant k occupies
# rows {a, 7 - a} of the computational basis.
_GHZ_BRANCHES = {
    1: (0b000, 0b111, +1),
    2: (0b000, 0b111, -1),
    3: (0b001, 0b110, +1),
    4: (0b001, 0b110, -1),
    5: (0b010, 0b101, +1),
    6: (0b010, 0b101, -1),
    7: (0b011, 0b100, +1),
    8: (0b011, 0b100, -1),
}


def _pure(vec, shape) -> DensityMatrix:
    vec = np.asarray(vec, dtype=complex)
    vec = vec / np.linalg.norm(vec)
    return validate_density(np.outer(vec, vec.conj()), shape, FACTORY_TOL)


def ghz_vector(variant: int) -> np.ndarray:
    if variant not in _GHZ_BRANCHES:
        raise ValueError(f"GHZ variant must be 1..8, got {variant}")
    a, b, sign = _GHZ_BRANCHES[variant]
    v = np.zeros(8, dtype=complex)
    v[a] = 1 / np.sqrt(2)
    v[b] = sign / np.sqrt(2)
    return v


def ghz_state(variant: int = 1) -> DensityMatrix:
    return _pure(ghz_vector(variant), (2, 2, 2))


def w_state() -> DensityMatrix:
    v = np.zeros(8)
    v[[0b001, 0b010, 0b100]] = 1
    return _pure(v, (2, 2, 2))


def braid_r_gate() -> np.ndarray:
    """Real orthogonal two-qubit gate obeying the braided Yang-Baxter relation.

    Sends ``|00> -> (|00> - |11>)/sqrt(2)`` and ``|01> -> (|01> + |10>)/sqrt(2)``.
    """
    r = np.array(
        [[1, 0, 0, 1],
         [0, 1, -1, 0],
         [0, 1, 1, 0],
         [-1, 0, 0, 1]],
        dtype=float,
    )
    return r / np.sqrt(2)


def braid_generator(n: int, i: int) -> np.ndarray:
    """``g_i = I^(i-1) (x) R (x) I^(n-i-1)`` acting on ``n`` qubits (1-based ``i``)."""
    if n < 2:
        raise ValueError(f"need at least two qubits, got n={n}")
    if not 1 <= i <= n - 1:
        raise IndexError(f"generator index must be in 1..{n - 1}, got {i}")
    return kron(np.eye(2 ** (i - 1)), braid_r_gate(), np.eye(2 ** (n - i - 1))).real


def braid_state(n: int, index: int) -> DensityMatrix:
    """State ``g_1 g_2 ... g_(n-1) |C_index>`` for the 1-based computational index."""
    if not 1 <= index <= 2**n:
        raise IndexError(f"computational index must be in 1..{2 ** n}, got {index}")
    op = np.eye(2**n)
    for i in range(1, n):
        op = op @ braid_generator(n, i)
    return _pure(op[:, index - 1], (2,) * n)


@dataclass(frozen=True)
class GhzDiagParams:
    """Eight GHZ-diagonal weights, stored sorted in descending order.

    ``permutation[k]`` is the position in the caller's vector of the k-th
    sorted weight.
    """

    p: tuple[float, ...]
    permutation: tuple[int, ...] = field(default=tuple(range(8)))

    @classmethod
    def from_probabilities(cls, probs, tol: float = 1e-12) -> "GhzDiagParams":
        probs = np.asarray(probs, dtype=float)
        if probs.shape != (8,):
            raise ValueError(f"expected 8 probabilities, got {probs.shape}")
        if np.any(probs < -tol):
            raise ValueError(f"negative probability {probs.min()}")
        if abs(probs.sum() - 1) > tol:
            raise ValueError(f"probabilities sum to {probs.sum()}, not 1")
        order = np.argsort(-probs, kind="stable")
        return cls(tuple(float(x) for x in np.clip(probs[order], 0, None)), tuple(int(i) for i in order))


def ghz_diagonal(params: GhzDiagParams | np.ndarray) -> DensityMatrix:
    """``sum_i p_i |GHZ_i><GHZ_i|`` with the sorted weights."""
    if not isinstance(params, GhzDiagParams):
        params = GhzDiagParams.from_probabilities(params)
    m = np.zeros((8, 8), dtype=complex)
    for k, p in enumerate(params.p, start=1):
        v = ghz_vector(k)
        m += p * np.outer(v, v.conj())
    return validate_density(m, (2, 2, 2), FACTORY_TOL)


def ghz_noise_params(p: float) -> GhzDiagParams:
    """GHZ-diagonal weights of ``p |GHZ_1><GHZ_1| + (1 - p) I/8``."""
    rest = (1 - p) / 8
    return GhzDiagParams.from_probabilities([rest + p] + [rest] * 7)


def mix_white_noise(rho: DensityMatrix, p: float) -> DensityMatrix:
    """``p rho + (1 - p) I/D``."""
    if not 0 <= p <= 1:
        raise ValueError(f"mixing weight must lie in [0, 1], got {p}")
    m = p * rho.matrix + (1 - p) * np.eye(rho.dim) / rho.dim
    return validate_density(m, rho.shape, FACTORY_TOL)


def four_qubit_xyz() -> DensityMatrix:
    """``16 rho = I + xxxx + yyyy + zzzz``."""
    hs = HSDecomposition((2,) * 4, {(0,) * 4: 1.0, (1,) * 4: 1.0, (2,) * 4: 1.0, (3,) * 4: 1.0})
    return validate_density(reconstruct(hs), hs.shape, FACTORY_TOL)


def two_param(r1: float, r3: float) -> DensityMatrix:
    """``8 rho = I + r1 xxx + r3 IIz``; a state only while ``r1^2 + r3^2 <= 1``."""
    if r1 * r1 + r3 * r3 > 1 + FACTORY_TOL:
        raise ValueError(f"r1^2 + r3^2 = {r1 * r1 + r3 * r3:.6g} > 1: matrix is not positive")
    hs = HSDecomposition((2, 2, 2), {(0, 0, 0): 1.0, (1, 1, 1): float(r1), (0, 0, 3): float(r3)})
    return validate_density(reconstruct(hs), hs.shape, FACTORY_TOL)


NAMED_EXAMPLES = {"four_qubit_xyz": four_qubit_xyz, "two_param": two_param}


def named_example(name: str, *args) -> DensityMatrix:
    try:
        builder = NAMED_EXAMPLES[name]
    except KeyError:
        raise ValueError(f"unknown example {name!r}; known: {sorted(NAMED_EXAMPLES)}") from None
    return builder(*args)


def is_mds(rho: DensityMatrix, tol: float = 1e-10) -> bool:
    """True when tracing out any single site leaves the maximally mixed state."""
    for site in range(rho.n_sites):
        reduced = partial_trace(rho.matrix, rho.shape, site)
        rest = reduced.shape[0]
        if np.max(np.abs(reduced - np.eye(rest) / rest)) > tol:
            return False
    return True


def random_density(shape, rng: np.random.Generator, rank: int | None = None) -> DensityMatrix:
    """Ginibre-distributed random density matrix."""
    D = int(np.prod(shape))
    rank = D if rank is None else rank
    g = rng.normal(size=(D, rank)) + 1j * rng.normal(size=(D, rank))
    m = g @ g.conj().T
    return validate_density(m / np.trace(m).real, shape, FACTORY_TOL)


def random_mds(shape, rng: np.random.Generator, margin: float = 0.05) -> DensityMatrix:
    """Random state whose only non-identity terms act on every site.

    The correlation operator is rescaled below the inverse of its spectral
    radius, so the result is positive semidefinite.
    """
    shape = tuple(shape)
    D = int(np.prod(shape))
    ranges = [range(1, d * d) for d in shape]
    corr = np.zeros((D, D), dtype=complex)
    for idx in itertools.product(*ranges):
        corr += rng.normal() * basis_element(shape, idx)
    radius = np.max(np.abs(np.linalg.eigvalsh(corr)))
    scale = rng.uniform(0.05, 1.0) / (radius * (1 + margin))
    m = (np.eye(D) + scale * corr) / D
    return validate_density(m, shape, FACTORY_TOL)


def mds_from_correlations(shape, coeffs: dict) -> DensityMatrix:
    """State ``(1/D)(I + sum c_i B_i)`` from full-weight coefficients only."""
    shape = tuple(shape)
    full = {(0,) * len(shape): 1.0, **{tuple(k): float(v) for k, v in coeffs.items()}}
    hs = HSDecomposition(shape, full)
    if not is_mds_pattern(hs):
        raise ValueError("coefficients include terms that do not act on every site")
    return validate_density(reconstruct(hs), shape)


def product_state(factors) -> DensityMatrix:
    """Tensor product of single-site density matrices."""
    mats = [np.asarray(f, dtype=complex) for f in factors]
    return validate_density(kron(mats), [m.shape[0] for m in mats], FACTORY_TOL)

