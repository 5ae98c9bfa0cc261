"""Partial transpose and its unitary-rotated variants.

``ptu_qubit`` is the partial transpose on one qubit followed by a 180 degree
rotation about y on that qubit; its net effect on the Hilbert-Schmidt
expansion is ``sigma -> -sigma`` on that site. ``global_tu`` does the same for
every qubit after a full transpose.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bases import pauli
from .kernel import DensityMatrix, kron


@dataclass(frozen=True, eq=False)
class TransformedMatrix:
    matrix: np.ndarray
    source_shape: tuple[int, ...]
    transform: str
    site: int | None = None

    def spectrum(self) -> np.ndarray:
        return np.linalg.eigvalsh(self.matrix)


def _check_site(rho: DensityMatrix, site: int):
    if not 0 <= site < rho.n_sites:
        raise IndexError(f"site {site} out of range for shape {rho.shape}")


def _pt(m: np.ndarray, shape: tuple[int, ...], site: int) -> np.ndarray:
    n = len(shape)
    t = m.reshape(shape + shape)
    t = np.swapaxes(t, site, n + site)
    D = m.shape[0]
    return t.reshape(D, D)


def _local(shape, site, op) -> np.ndarray:
    return kron([op if s == site else np.eye(d) for s, d in enumerate(shape)])


def partial_transpose(rho: DensityMatrix, site: int) -> TransformedMatrix:
    _check_site(rho, site)
    return TransformedMatrix(_pt(rho.matrix, rho.shape, site), rho.shape, "PT", site)


def ptu_qubit(rho: DensityMatrix, site: int) -> TransformedMatrix:
    _check_site(rho, site)
    if rho.shape[site] != 2:
        raise ValueError(f"site {site} has dimension {rho.shape[site]}, not a qubit")
    y = _local(rho.shape, site, pauli(2))
    m = y @ _pt(rho.matrix, rho.shape, site) @ y
    return TransformedMatrix(m, rho.shape, "PTU", site)


def global_tu(rho: DensityMatrix) -> TransformedMatrix:
    if not rho.all_qubits:
        raise ValueError(f"global transpose-rotation needs all qubits, got shape {rho.shape}")
    y = kron([pauli(2)] * rho.n_sites)
    return TransformedMatrix(y @ rho.matrix.T @ y, rho.shape, "GlobalTU")


def min_pt_eigenvalues(rho: DensityMatrix) -> list[float]:
    """Smallest eigenvalue of the partial transpose at each site."""
    return [float(partial_transpose(rho, s).spectrum()[0]) for s in range(rho.n_sites)]
