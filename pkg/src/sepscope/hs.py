"""Hilbert-Schmidt coefficient transforms.

A state on local dimensions ``(d_1, ..., d_n)`` with total dimension ``D`` is
written ``rho = (1/D) sum_i c_i B_i`` where ``B_i`` runs over products of
local basis elements and ``c_(0,...,0) = 1``. For qubits ``c_i = tr(rho B_i)``;
in general ``c_i = D tr(rho B_i) / tr(B_i^2)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .bases import basis_element, element_norm, label
from .kernel import DensityMatrix, svd_real

# coefficients below this magnitude are treated as exact zeros
ZERO = 1e-13
MDS_TOL = 1e-10


@dataclass(frozen=True)
class HSDecomposition:
    shape: tuple[int, ...]
    coeffs: Mapping[tuple[int, ...], float] = field(default_factory=dict)

    @property
    def dim(self) -> int:
        return int(np.prod(self.shape))

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.shape)

    def __getitem__(self, index) -> float:
        return self.coeffs.get(tuple(index), 0.0)

    def items(self):
        """Non-identity ``(multi_index, coefficient)`` pairs in sorted order."""
        return [(k, v) for k, v in sorted(self.coeffs.items()) if k != self.identity]

    def weight(self, index) -> int:
        return sum(1 for i in index if i != 0)

    def labelled(self) -> dict[str, float]:
        return {label(self.shape, k): v for k, v in self.items()}

    def restrict(self, predicate) -> "HSDecomposition":
        """Keep the identity plus every term whose multi-index passes ``predicate``."""
        kept = {k: v for k, v in self.coeffs.items() if k == self.identity or predicate(k)}
        return HSDecomposition(self.shape, kept)


def all_indices(shape: Sequence[int]):
    return itertools.product(*(range(d * d) for d in shape))


def decompose(rho: DensityMatrix | np.ndarray, shape: Sequence[int] | None = None) -> HSDecomposition:
    """Hilbert-Schmidt coefficients of ``rho``.

    Accepts a validated DensityMatrix, or any Hermitian unit-trace matrix
    together with ``shape``.
    """
    if isinstance(rho, DensityMatrix):
        m, shape = rho.matrix, rho.shape
    else:
        if shape is None:
            raise ValueError("shape is required for a bare matrix")
        m = np.asarray(rho, dtype=complex)
    shape = tuple(shape)
    D = int(np.prod(shape))
    # tr(rho B) = sum(rho * B^T)
    mt = m.T
    coeffs = {}
    for idx in all_indices(shape):
        b = basis_element(shape, idx)
        value = D * np.sum(mt * b) / element_norm(shape, idx)
        c = float(value.real)
        if abs(c) > ZERO:
            coeffs[idx] = c
    return HSDecomposition(shape, coeffs)


def reconstruct(hs: HSDecomposition) -> np.ndarray:
    """``(1/D) sum_i c_i B_i``; Hermitian with unit trace, not necessarily PSD."""
    D = hs.dim
    out = np.zeros((D, D), dtype=complex)
    for idx, c in hs.coeffs.items():
        out += c * basis_element(hs.shape, idx)
    return out / D


def l1_offidentity(hs: HSDecomposition) -> float:
    """Sum of ``|c_i|`` over every non-identity multi-index."""
    return float(sum(abs(v) for _, v in hs.items()))


def l1_separability_sum(hs: HSDecomposition) -> float:
    """Left-hand side of the l1 separability condition.

    Correlation terms (two or more non-identity sites) enter with ``|c|``,
    single-site blocks with the Euclidean norm of their Bloch vector.
    """
    total = 0.0
    for site, vec in local_vectors(hs).items():
        total += float(np.linalg.norm(vec))
    for idx, c in hs.items():
        if hs.weight(idx) >= 2:
            total += abs(c)
    return total


def local_vectors(hs: HSDecomposition) -> dict[int, np.ndarray]:
    """Per-site coefficient vectors of the single-site terms (nonzero sites only)."""
    out = {}
    n = len(hs.shape)
    for site in range(n):
        d = hs.shape[site]
        vec = np.zeros(d * d - 1)
        for mu in range(1, d * d):
            idx = tuple(mu if s == site else 0 for s in range(n))
            vec[mu - 1] = hs[idx]
        if np.any(vec != 0):
            out[site] = vec
    return out


def is_mds_pattern(hs: HSDecomposition, tol: float = MDS_TOL) -> bool:
    """True when every non-identity term acts non-trivially on all sites."""
    n = len(hs.shape)
    return all(abs(c) <= tol for idx, c in hs.items() if hs.weight(idx) < n)


@dataclass(frozen=True)
class GSSplit:
    pivot: int
    g_part: HSDecomposition
    s_part: HSDecomposition


def gs_split(hs: HSDecomposition, pivot: int) -> GSSplit:
    """Split non-identity terms by whether they act trivially on ``pivot``."""
    if not 0 <= pivot < len(hs.shape):
        raise IndexError(f"no site {pivot} in shape {hs.shape}")
    if hs.shape[pivot] != 2:
        raise ValueError(f"pivot site {pivot} has dimension {hs.shape[pivot]}, not a qubit")
    ident = hs.identity
    g = {k: v for k, v in hs.coeffs.items() if k != ident and k[pivot] == 0}
    s = {k: v for k, v in hs.coeffs.items() if k[pivot] != 0}
    return GSSplit(pivot, HSDecomposition(hs.shape, g), HSDecomposition(hs.shape, s))


def ptu_from_split(split: GSSplit) -> np.ndarray:
    """``rho(PTU)`` rebuilt as ``(2[I + G] - D rho) / D`` from a G/S split."""
    shape = split.g_part.shape
    D = int(np.prod(shape))
    ident = (0,) * len(shape)
    g = reconstruct(HSDecomposition(shape, {**split.g_part.coeffs, ident: 1.0}))
    s = reconstruct(HSDecomposition(shape, {**split.s_part.coeffs, ident: 0.0}))
    return g - s


@dataclass(frozen=True, eq=False)
class SVDReduction:
    """Singular values and rotations of coefficient matrices.

    ``singular_values[l]`` and ``rotations[l] = (U, V)`` describe the matrix
    ``U @ diag(s) @ V.T`` for slice ``l``. The qubit-qudit reduction has a
    single slice and ``pivot = None``.
    """

    shape: tuple[int, ...]
    pivot: int | None
    singular_values: np.ndarray
    rotations: tuple[tuple[np.ndarray, np.ndarray], ...]

    @property
    def total(self) -> float:
        return float(np.sum(np.abs(self.singular_values)))


def correlation_matrix(hs: HSDecomposition) -> np.ndarray:
    """The 3 x (d^2-1) matrix ``t[l, mu]`` of a qubit-qudit decomposition."""
    if len(hs.shape) != 2 or hs.shape[0] != 2:
        raise ValueError(f"expected a qubit-qudit shape [2, d], got {list(hs.shape)}")
    d = hs.shape[1]
    t = np.zeros((3, d * d - 1))
    for l in range(1, 4):
        for mu in range(1, d * d):
            t[l - 1, mu - 1] = hs[(l, mu)]
    return t


def svd_reduce_qubit_qudit(hs: HSDecomposition) -> SVDReduction:
    t = correlation_matrix(hs)
    if not is_mds_pattern(hs):
        raise ValueError("decomposition is not MDS: single-site coefficients are nonzero")
    u, s, v = svd_real(t)
    return SVDReduction(hs.shape, None, s[np.newaxis, :], ((u, v),))


def triple_tensor(hs: HSDecomposition) -> np.ndarray:
    """``R[a, b, c]`` (0-based Pauli axes) of a three-qubit decomposition."""
    if hs.shape != (2, 2, 2):
        raise ValueError(f"expected three qubits, got shape {list(hs.shape)}")
    r = np.zeros((3, 3, 3))
    for a, b, c in itertools.product(range(3), repeat=3):
        r[a, b, c] = hs[(a + 1, b + 1, c + 1)]
    return r


def svd_reduce_3q_slices(hs: HSDecomposition, pivot: int = 0) -> SVDReduction:
    """SVD of the three 3x3 slices of ``R`` taken at fixed pivot index.

    The slice matrix has rows indexed by the first remaining site and
    columns by the second, e.g. sites (B, C) for pivot A.
    """
    r = triple_tensor(hs)
    if pivot not in (0, 1, 2):
        raise IndexError(f"pivot must be 0, 1 or 2, got {pivot}")
    r = np.moveaxis(r, pivot, 0)
    values, rotations = [], []
    for l in range(3):
        u, s, v = svd_real(r[l])
        values.append(s)
        rotations.append((u, v))
    return SVDReduction(hs.shape, pivot, np.array(values), tuple(rotations))
