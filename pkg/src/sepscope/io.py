"""JSON schemas for matrices and certificates.

Matrix file::

    {"shape": [2, 2, 2], "matrix": [[[re, im], ...], ...]}

Certificate file::

    {"shape": [...], "terms": [{"weight": w, "factors": [<matrix rows>, ...]}]}
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .kernel import DensityMatrix, validate_density

SIG_DIGITS = 15


def fmt_float(x: float) -> float:
    """Round to 15 significant digits; normalizes ``-0.0`` to ``0.0``."""
    x = float(f"{float(x):.{SIG_DIGITS}g}")
    return 0.0 if x == 0 else x


def matrix_to_json(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[fmt_float(z.real), fmt_float(z.imag)] for z in row] for row in m]


def matrix_from_json(rows) -> np.ndarray:
    try:
        arr = np.array(rows, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValueError(f"matrix entries must be [re, im] pairs: {exc}") from None
    if arr.ndim != 3 or arr.shape[2] != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"matrix must be a square array of [re, im] pairs, got shape {arr.shape}")
    return arr[..., 0] + 1j * arr[..., 1]


def density_to_dict(rho: DensityMatrix) -> dict:
    return {"shape": list(rho.shape), "matrix": matrix_to_json(rho.matrix)}


def density_from_dict(data: dict, tol: float | None = None) -> DensityMatrix:
    if "shape" not in data or "matrix" not in data:
        raise ValueError("matrix file needs 'shape' and 'matrix' fields")
    return validate_density(matrix_from_json(data["matrix"]), data["shape"], tol)


def dumps(data) -> str:
    """Deterministic JSON: sorted keys, floats already rounded by the caller."""
    return json.dumps(_round(data), sort_keys=True, indent=2) + "\n"


def _round(obj):
    if isinstance(obj, float):
        return fmt_float(obj)
    if isinstance(obj, (np.floating, np.integer)):
        return _round(obj.item())
    if isinstance(obj, dict):
        return {str(k): _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _round(obj.tolist())
    return obj


def read_json(path) -> dict:
    with Path(path).open() as fh:
        return json.load(fh)


def write_json(path, data) -> None:
    Path(path).write_text(dumps(data))
