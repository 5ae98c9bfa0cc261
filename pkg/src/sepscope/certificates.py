"""Explicit separable decompositions and their numerical verification.

A certificate lists ``(weight, [rho_1, ..., rho_n])`` product terms. Factors
are stored as explicit local density matrices, so checking one needs no
knowledge of how it was built.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .bases import bloch_operator, local_basis, pauli
from .hs import (
    HSDecomposition,
    SVDReduction,
    is_mds_pattern,
    l1_separability_sum,
    local_vectors,
    svd_reduce_qubit_qudit,
    svd_reduce_3q_slices,
)
from .kernel import DensityMatrix, kron

WEIGHT_TOL = 1e-12
SUM_TOL = 1e-10

_AXIS = {"x": np.array([1.0, 0, 0]), "y": np.array([0, 1.0, 0]), "z": np.array([0, 0, 1.0])}


class CertificateError(ValueError):
    """A builder's precondition does not hold."""


@dataclass(frozen=True, eq=False)
class ProductTerm:
    weight: float
    factors: tuple[np.ndarray, ...]


@dataclass(frozen=True, eq=False)
class SeparableDecomposition:
    shape: tuple[int, ...]
    terms: tuple[ProductTerm, ...] = field(default_factory=tuple)

    def __len__(self):
        return len(self.terms)

    def total_weight(self) -> float:
        return math.fsum(t.weight for t in self.terms)

    def matrix(self) -> np.ndarray:
        D = int(np.prod(self.shape))
        # per-entry compensated summation keeps 30+ term sums at roundoff level
        parts = [t.weight * kron(t.factors) for t in self.terms]
        if not parts:
            return np.zeros((D, D), dtype=complex)
        stack = np.stack(parts)
        re = np.apply_along_axis(math.fsum, 0, stack.real)
        im = np.apply_along_axis(math.fsum, 0, stack.imag)
        return re + 1j * im


def qubit_state(bloch) -> np.ndarray:
    """``(I + n . sigma)/2``; ``bloch=None`` gives the maximally mixed qubit."""
    if bloch is None:
        return np.eye(2, dtype=complex) / 2
    return (pauli(0) + bloch_operator(bloch)) / 2


def mixed(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex) / d


def certificate_problems(rho: DensityMatrix, cert: SeparableDecomposition, tol: float = 1e-10) -> list[str]:
    """Every reason ``cert`` fails to certify ``rho``; empty when it is valid."""
    if tuple(cert.shape) != tuple(rho.shape):
        raise ValueError(f"certificate shape {cert.shape} does not match state shape {rho.shape}")
    problems = []
    for k, term in enumerate(cert.terms):
        if term.weight < -WEIGHT_TOL:
            problems.append(f"term {k}: negative weight {term.weight:.6g}")
        if len(term.factors) != len(cert.shape):
            problems.append(f"term {k}: {len(term.factors)} factors for {len(cert.shape)} sites")
            continue
        for site, (f, d) in enumerate(zip(term.factors, cert.shape)):
            f = np.asarray(f)
            if f.shape != (d, d):
                problems.append(f"term {k} site {site}: factor shape {f.shape}, expected {(d, d)}")
                continue
            if np.max(np.abs(f - f.conj().T)) > tol:
                problems.append(f"term {k} site {site}: factor not Hermitian")
            elif abs(np.trace(f) - 1) > tol:
                problems.append(f"term {k} site {site}: factor trace {np.trace(f).real:.6g}")
            elif np.linalg.eigvalsh(f)[0] < -tol:
                problems.append(f"term {k} site {site}: factor has eigenvalue {np.linalg.eigvalsh(f)[0]:.3e}")
    total = cert.total_weight()
    if abs(total - 1) > SUM_TOL:
        problems.append(f"weights sum to {total:.15g}")
    if problems:
        return problems
    deviation = float(np.max(np.abs(cert.matrix() - rho.matrix)))
    if deviation > tol:
        problems.append(f"max entry deviation {deviation:.3e} exceeds {tol:.1e}")
    return problems


def verify_certificate(rho: DensityMatrix, cert: SeparableDecomposition, tol: float = 1e-10) -> bool:
    return not certificate_problems(rho, cert, tol)


def _sign_patterns(k: int, sign: int):
    """All ``k``-tuples of +-1 whose product is ``sign``."""
    for pattern in itertools.product((1, -1), repeat=k):
        if math.prod(pattern) == sign:
            yield pattern


def _expand_qubit_term(n: int, coeff: float, directions: dict[int, np.ndarray]) -> list[ProductTerm]:
    """Product terms whose mixture reproduces ``|c| I + c (n_1.sigma)...(n_k.sigma)``.

    ``directions`` maps site -> unit Bloch vector for the non-identity sites;
    the result carries total weight ``|c|``.
    """
    sites = sorted(directions)
    k = len(sites)
    sign = 1 if coeff >= 0 else -1
    weight = abs(coeff) / 2 ** (k - 1)
    out = []
    for pattern in _sign_patterns(k, sign):
        signs = dict(zip(sites, pattern))
        factors = tuple(
            qubit_state(signs[s] * directions[s]) if s in directions else mixed(2) for s in range(n)
        )
        out.append(ProductTerm(weight, factors))
    return out


def _with_remainder(shape, terms: list[ProductTerm]) -> SeparableDecomposition:
    used = math.fsum(t.weight for t in terms)
    rest = 1.0 - used
    if rest < -WEIGHT_TOL:
        raise CertificateError(f"term weights sum to {used:.15g} > 1")
    remainder = ProductTerm(max(rest, 0.0), tuple(mixed(d) for d in shape))
    return SeparableDecomposition(tuple(shape), tuple(terms) + (remainder,))


def _require_qubits(shape):
    if not all(d == 2 for d in shape):
        raise CertificateError(f"builder needs all-qubit shape, got {list(shape)}")


def certify_l1(hs: HSDecomposition) -> SeparableDecomposition:
    """Certificate for an all-qubit state whose l1 sum is at most 1.

    Each correlation term ``c sigma_a (x) sigma_b ...`` on ``k`` sites becomes
    ``2**(k-1)`` products of ``(I +- sigma)/2`` factors with sign product
    ``sign(c)``, each of weight ``|c| / 2**(k-1)``. Single-site blocks are
    grouped into one pure state along their Bloch vector. The leftover weight
    goes to the maximally mixed product.
    """
    _require_qubits(hs.shape)
    total = l1_separability_sum(hs)
    if total > 1 + WEIGHT_TOL:
        raise CertificateError(f"l1 sum {total:.6g} > 1")
    n = len(hs.shape)
    terms = []
    for site, vec in sorted(local_vectors(hs).items()):
        norm = float(np.linalg.norm(vec))
        terms.extend(_expand_qubit_term(n, norm, {site: vec / norm}))
    for idx, c in hs.items():
        if hs.weight(idx) < 2:
            continue
        dirs = {s: np.eye(3)[i - 1] for s, i in enumerate(idx) if i != 0}
        terms.extend(_expand_qubit_term(n, c, dirs))
    return _with_remainder(hs.shape, terms)


def certify_3q_mds_svd(hs: HSDecomposition, reduction: SVDReduction | None = None) -> SeparableDecomposition:
    """l1-style certificate built on the SVD-rotated slices of a 3-qubit MDS tensor."""
    if not is_mds_pattern(hs):
        raise CertificateError("slice certificate needs a decomposition with triple terms only")
    if reduction is None:
        reduction = min((svd_reduce_3q_slices(hs, p) for p in range(3)), key=lambda r: r.total)
    if reduction.total > 1 + WEIGHT_TOL:
        raise CertificateError(f"sum of slice singular values {reduction.total:.6g} > 1")
    pivot = reduction.pivot
    others = [s for s in range(3) if s != pivot]
    terms = []
    for l in range(3):
        u, v = reduction.rotations[l]
        for i, s in enumerate(reduction.singular_values[l]):
            if s <= 0:
                continue
            dirs = {pivot: np.eye(3)[l], others[0]: u[:, i], others[1]: v[:, i]}
            terms.extend(_expand_qubit_term(3, float(s), dirs))
    return _with_remainder(hs.shape, terms)


def certify_qubit_qudit_mds(hs: HSDecomposition, reduction: SVDReduction | None = None) -> SeparableDecomposition:
    """Certificate for an MDS qubit-qudit state with ``sum s_i <= 1``.

    For every singular direction ``i`` the terms
    ``(I +- sbar_i)/2 (x) (I +- fbar_i)/d`` enter with weight ``s_i/2`` each,
    where ``sbar_i = sum_l U[l, i] sigma_l`` and ``fbar_i = sum_mu V[mu, i] f_mu``.
    """
    if reduction is None:
        reduction = svd_reduce_qubit_qudit(hs)
    s = reduction.singular_values[0]
    if reduction.total > 1 + WEIGHT_TOL:
        raise CertificateError(f"sum of singular values {reduction.total:.6g} > 1")
    d = hs.shape[1]
    gens = local_basis(d).elements[1:]
    u, v = reduction.rotations[0]
    terms = []
    for i, si in enumerate(s):
        if si <= 0:
            continue
        sbar = bloch_operator(u[:, i])
        fbar = sum(v[mu, i] * g for mu, g in enumerate(gens))
        for sign in (1, -1):
            factors = ((np.eye(2) + sign * sbar) / 2, (np.eye(d) + sign * fbar) / d)
            terms.append(ProductTerm(float(si) / 2, factors))
    return _with_remainder(hs.shape, terms)


def certify_two_param(r1: float, r3: float) -> SeparableDecomposition:
    """Four equal-weight products covering the whole disk ``r1^2 + r3^2 <= 1``."""
    if r1 * r1 + r3 * r3 > 1 + WEIGHT_TOL:
        raise CertificateError(f"r1^2 + r3^2 = {r1 * r1 + r3 * r3:.6g} > 1")
    x = _AXIS["x"]
    terms = []
    for sa, sb in ((1, 1), (1, -1), (-1, -1), (-1, 1)):
        c = np.array([sa * sb * r1, 0.0, r3])
        terms.append(ProductTerm(0.25, (qubit_state(sa * x), qubit_state(sb * x), qubit_state(c))))
    return SeparableDecomposition((2, 2, 2), tuple(terms))


def _paired_axis_terms(axis: str, weight: float) -> list[ProductTerm]:
    """``(I+s)^3`` and ``(I-s)^3`` along one axis, each with ``weight``."""
    e = _AXIS[axis]
    return [ProductTerm(weight, tuple(qubit_state(sign * e) for _ in range(3))) for sign in (1, -1)]


# (direction at A, B, C) of the four triple terms in the braid state; a
# leading '-' flips the axis.
_BRAID_FAMILIES = (("z", "z", "z"), ("x", "x", "-z"), ("x", "-z", "x"), ("z", "x", "-x"))


def _axis(name: str) -> np.ndarray:
    return -_AXIS[name[1:]] if name.startswith("-") else _AXIS[name]


def certify_braid_mixed(p: float) -> SeparableDecomposition:
    """Certificate for ``p B1 + (1-p) I/8`` valid up to ``p = 1/5``.

    Each triple family contributes the four even-parity sign patterns at
    weight ``p/4``; the three ``yy`` pair terms are absorbed into
    ``(I+y)^3`` and ``(I-y)^3`` at weight ``p/2``.
    """
    if p < 0 or p > 0.2 + WEIGHT_TOL:
        raise CertificateError(f"braid certificate needs 0 <= p <= 1/5, got {p}")
    terms = []
    for family in _BRAID_FAMILIES:
        dirs = {s: _axis(a) for s, a in enumerate(family)}
        terms.extend(_expand_qubit_term(3, p, dirs))
    terms.extend(_paired_axis_terms("y", p / 2))
    return _with_remainder((2, 2, 2), terms)


# Sign patterns of the fifteen two-axis products; each row is (A, B, C).
_W_PRODUCTS = (
    ("z", "z", "-z"), ("-z", "z", "z"), ("z", "-z", "z"),
    ("x", "x", "z"), ("-x", "-x", "z"),
    ("x", "z", "x"), ("-x", "z", "-x"),
    ("z", "x", "x"), ("z", "-x", "-x"),
    ("y", "y", "z"), ("-y", "-y", "z"),
    ("y", "z", "y"), ("-y", "z", "-y"),
    ("z", "y", "y"), ("z", "-y", "-y"),
)


def certify_w_mixed(p: float) -> SeparableDecomposition:
    """Certificate for ``p W + (1-p) I/8`` valid up to ``p = 1/9``.

    Fifteen pure products at weight ``p/3`` and three products with a single
    ``|1>`` factor at weight ``4p/3``; the remaining ``1 - 9p`` is white noise.
    """
    if p < 0 or p > 1 / 9 + WEIGHT_TOL:
        raise CertificateError(f"W certificate needs 0 <= p <= 1/9, got {p}")
    terms = [ProductTerm(p / 3, tuple(qubit_state(_axis(a)) for a in row)) for row in _W_PRODUCTS]
    down = qubit_state(-_AXIS["z"])
    for site in range(3):
        factors = tuple(down if s == site else mixed(2) for s in range(3))
        terms.append(ProductTerm(4 * p / 3, factors))
    return _with_remainder((2, 2, 2), terms)


def certify_ghz_diag_special(r111: float, r122: float, r212: float, r221: float, c: float) -> SeparableDecomposition:
    """Certificate for GHZ-diagonal states with equal ``zz`` pair coefficients ``c >= 0``.

    The pair terms are absorbed into ``(I+z)^3`` and ``(I-z)^3`` at weight
    ``c/2``; each triple term is expanded like the l1 construction.
    """
    if c < -WEIGHT_TOL:
        raise CertificateError(f"pair coefficient {c:.6g} is negative")
    total = abs(r111) + abs(r122) + abs(r212) + abs(r221) + c
    if total > 1 + WEIGHT_TOL:
        raise CertificateError(f"|R111|+|R122|+|R212|+|R221|+C = {total:.6g} > 1")
    terms = []
    for coeff, axes in ((r111, "xxx"), (r122, "xyy"), (r212, "yxy"), (r221, "yyx")):
        if coeff != 0:
            terms.extend(_expand_qubit_term(3, coeff, {s: _AXIS[a] for s, a in enumerate(axes)}))
    if c > 0:
        terms.extend(_paired_axis_terms("z", c / 2))
    return _with_remainder((2, 2, 2), terms)


def certificate_to_dict(cert: SeparableDecomposition) -> dict:
    from .io import matrix_to_json

    return {
        "shape": list(cert.shape),
        "terms": [
            {"weight": t.weight, "factors": [matrix_to_json(f) for f in t.factors]} for t in cert.terms
        ],
    }


def certificate_from_dict(data: dict) -> SeparableDecomposition:
    from .io import matrix_from_json

    shape = tuple(int(d) for d in data["shape"])
    terms = tuple(
        ProductTerm(float(t["weight"]), tuple(matrix_from_json(f) for f in t["factors"])) for t in data["terms"]
    )
    return SeparableDecomposition(shape, terms)


def expected_term_count(hs: HSDecomposition) -> int:
    """Number of terms ``certify_l1`` emits for ``hs`` (remainder included)."""
    count = len(local_vectors(hs))
    count += sum(2 ** (hs.weight(idx) - 1) for idx, _ in hs.items() if hs.weight(idx) >= 2)
    return count + 1

