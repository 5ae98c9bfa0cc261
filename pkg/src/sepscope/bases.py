"""Local operator bases: Pauli matrices for qubits, SU(d) generators for qudits.

Element 0 of every local basis is the identity. Qubit sites always use the
Pauli matrices (``tr(s_i s_j) = 2 delta_ij``); sites with ``d >= 3`` use
Gell-Mann type generators rescaled so that ``tr(f_mu f_nu) = delta_mu_nu``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .kernel import kron

_PAULI = (
    np.eye(2, dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, -1j], [1j, 0]], dtype=complex),
    np.array([[1, 0], [0, -1]], dtype=complex),
)
for _m in _PAULI:
    _m.setflags(write=False)

AXES = "0xyz"


def pauli(index: int) -> np.ndarray:
    """``0 -> I``, ``1 -> sigma_x``, ``2 -> sigma_y``, ``3 -> sigma_z``."""
    if index not in (0, 1, 2, 3):
        raise IndexError(f"Pauli index must be 0..3, got {index}")
    return _PAULI[index]


def bloch_operator(vector) -> np.ndarray:
    """``n . sigma`` for a real 3-vector ``n``."""
    x, y, z = (float(c) for c in vector)
    return x * _PAULI[1] + y * _PAULI[2] + z * _PAULI[3]


@dataclass(frozen=True, eq=False)
class OperatorBasis:
    dim: int
    elements: tuple[np.ndarray, ...]

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, index):
        return self.elements[index]

    def norms(self) -> np.ndarray:
        """Hilbert-Schmidt squared norms ``tr(e_i^2)``."""
        return np.array([np.trace(e @ e).real for e in self.elements])


@lru_cache(maxsize=None)
def su_d_generators(d: int) -> OperatorBasis:
    """Identity followed by the ``d**2 - 1`` traceless generators.

    Order: symmetric off-diagonal pairs (row-major), antisymmetric pairs
    (row-major), then the diagonal generators. Each generator has unit
    Hilbert-Schmidt norm.
    """
    if d < 2:
        raise ValueError(f"dimension must be >= 2, got {d}")
    pairs = [(j, k) for j in range(d) for k in range(j + 1, d)]
    gens = []
    for j, k in pairs:
        g = np.zeros((d, d), dtype=complex)
        g[j, k] = g[k, j] = 1
        gens.append(g)
    for j, k in pairs:
        g = np.zeros((d, d), dtype=complex)
        g[j, k] = -1j
        g[k, j] = 1j
        gens.append(g)
    for l in range(1, d):
        diag = np.zeros(d)
        diag[:l] = 1
        diag[l] = -l
        gens.append(np.diag(diag).astype(complex))
    # Gell-Mann normalization is tr(g^2) = 2; rescale to 1.
    gens = [g / np.sqrt(np.trace(g @ g).real) for g in gens]
    elements = (np.eye(d, dtype=complex), *gens)
    for e in elements:
        e.setflags(write=False)
    return OperatorBasis(d, elements)


@lru_cache(maxsize=None)
def local_basis(d: int) -> OperatorBasis:
    """Basis used for a site of dimension ``d`` inside a composite system."""
    if d == 2:
        return OperatorBasis(2, _PAULI)
    return su_d_generators(d)


def basis_element(shape: Sequence[int], multi_index: Sequence[int]) -> np.ndarray:
    """Kronecker product of the per-site basis elements named by ``multi_index``."""
    return _basis_element(tuple(shape), tuple(multi_index))


@lru_cache(maxsize=4096)
def _basis_element(shape, multi_index):
    if len(shape) != len(multi_index):
        raise ValueError(f"multi-index {multi_index} has wrong length for shape {shape}")
    factors = []
    for d, i in zip(shape, multi_index):
        if not 0 <= i < d * d:
            raise IndexError(f"index {i} out of range for a site of dimension {d}")
        factors.append(local_basis(d)[i])
    out = kron(factors)
    out.setflags(write=False)
    return out


def element_norm(shape: Sequence[int], multi_index: Sequence[int]) -> float:
    """``tr(B^2)`` of a basis element, from the per-site normalization table."""
    norm = 1.0
    for d, i in zip(shape, multi_index):
        norm *= 2.0 if d == 2 else (float(d) if i == 0 else 1.0)
    return norm


def label(shape: Sequence[int], multi_index: Sequence[int]) -> str:
    """Readable name such as ``xy0`` or ``z,5`` for a multi-index."""
    if all(d == 2 for d in shape):
        return "".join(AXES[i] for i in multi_index)
    parts = [AXES[i] if d == 2 else str(i) for d, i in zip(shape, multi_index)]
    return ",".join(parts)
