"""Dense matrix primitives shared by every other module.

Subsystem ordering is fixed globally: the first site is the outermost
(most significant) Kronecker factor, so ``|abc>`` sits at row ``4a + 2b + c``
for three qubits.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

DEFAULT_TOL = 1e-9


def default_tol() -> float:
    """Tolerance used when the caller passes none (``SEPSCOPE_TOL`` overrides)."""
    value = os.environ.get("SEPSCOPE_TOL")
    if value is None:
        return DEFAULT_TOL
    return float(value)


class DensityError(ValueError):
    """Base class for rejected density matrices."""


class ShapeError(DensityError):
    pass


class TraceError(DensityError):
    def __init__(self, trace):
        self.trace = trace
        super().__init__(f"trace is {trace!r}, expected 1")


class HermiticityError(DensityError):
    def __init__(self, defect):
        self.defect = defect
        super().__init__(f"Hermiticity defect max|m - m^H| = {defect:.3e}")


class NegativityError(DensityError):
    def __init__(self, min_eigenvalue):
        self.min_eigenvalue = min_eigenvalue
        super().__init__(f"minimum eigenvalue {min_eigenvalue:.3e} is negative")


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """A validated density matrix tagged with its local dimensions."""

    matrix: np.ndarray
    shape: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def n_sites(self) -> int:
        return len(self.shape)

    @property
    def all_qubits(self) -> bool:
        return all(d == 2 for d in self.shape)


def as_matrix(m) -> np.ndarray:
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d array, got ndim={arr.ndim}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix has non-finite entries")
    return arr


def kron(*factors) -> np.ndarray:
    """Kronecker product with the first factor outermost.

    Accepts either several matrices or a single sequence of matrices.
    """
    if len(factors) == 1 and not isinstance(factors[0], np.ndarray):
        factors = tuple(factors[0])
    if not factors:
        raise ValueError("kron needs at least one factor")
    mats = [as_matrix(f) for f in factors]
    return reduce(np.kron, mats)


def hermiticity_defect(m: np.ndarray) -> float:
    return float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0


def eig_hermitian(m, tol: float | None = None, vectors: bool = False):
    """Eigenvalues (ascending) of a Hermitian matrix.

    With ``vectors=True`` the eigenvectors are returned as columns alongside.
    """
    tol = default_tol() if tol is None else tol
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"matrix is not square: {m.shape}")
    defect = hermiticity_defect(m)
    if defect > tol:
        raise HermiticityError(defect)
    h = (m + m.conj().T) / 2
    if vectors:
        return np.linalg.eigh(h)
    return np.linalg.eigvalsh(h)


def svd_real(m):
    """Full real SVD ``m = U @ diag(s) @ V.T`` with ``s`` descending.

    ``U`` and ``V`` are square orthogonal matrices; ``s`` has ``min(m.shape)``
    entries.
    """
    m = np.asarray(m, dtype=float)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    u, s, vt = np.linalg.svd(m, full_matrices=True)
    return u, s, vt.T


def validate_density(m, shape: Sequence[int], tol: float | None = None) -> DensityMatrix:
    """Check trace, Hermiticity and positivity and return a DensityMatrix."""
    tol = default_tol() if tol is None else tol
    shape = tuple(int(d) for d in shape)
    if not shape or any(d < 2 for d in shape):
        raise ShapeError(f"invalid local dimensions {shape}")
    m = as_matrix(m)
    total = int(np.prod(shape))
    if m.shape != (total, total):
        raise ShapeError(f"matrix of shape {m.shape} does not match local dimensions {shape}")
    defect = hermiticity_defect(m)
    if defect > tol:
        raise HermiticityError(defect)
    tr = np.trace(m)
    if abs(tr - 1) > tol:
        raise TraceError(complex(tr) if abs(tr.imag) > tol else float(tr.real))
    lo = float(np.linalg.eigvalsh((m + m.conj().T) / 2)[0])
    if lo < -tol:
        raise NegativityError(lo)
    m = (m + m.conj().T) / 2
    m.setflags(write=False)
    return DensityMatrix(m, shape)


def partial_trace(m: np.ndarray, shape: Sequence[int], site: int) -> np.ndarray:
    """Trace out a single site, keeping the remaining ones in order."""
    shape = tuple(shape)
    n = len(shape)
    t = np.asarray(m).reshape(shape + shape)
    t = np.trace(t, axis1=site, axis2=n + site)
    rest = int(np.prod(shape)) // shape[site]
    return t.reshape(rest, rest)
