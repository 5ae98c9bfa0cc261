"""Entanglement and separability criteria.

Every criterion returns a :class:`CriterionVerdict`. ``Entangled`` always
carries a witness; ``SeparableCertified`` always carries a certificate that
has been checked against the state. Values within ``tol`` of a boundary are
reported as ``Inconclusive``.
"""
from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .certificates import (
    CertificateError,
    SeparableDecomposition,
    certificate_problems,
    certify_3q_mds_svd,
    certify_ghz_diag_special,
    certify_l1,
    certify_qubit_qudit_mds,
)
from .hs import (
    HSDecomposition,
    decompose,
    is_mds_pattern,
    l1_offidentity,
    l1_separability_sum,
    reconstruct,
    svd_reduce_3q_slices,
    svd_reduce_qubit_qudit,
)
from .kernel import DensityMatrix, default_tol, validate_density
from .ptu import partial_transpose, ptu_qubit
from .states import GhzDiagParams, ghz_diagonal, is_mds, mix_white_noise

log = logging.getLogger(__name__)

# closed form vs numeric disagreement that signals a transcription bug
CROSS_CHECK_TOL = 1e-8
SITE_NAMES = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


class Outcome(str, enum.Enum):
    ENTANGLED = "Entangled"
    SEPARABLE = "SeparableCertified"
    INCONCLUSIVE = "Inconclusive"


@dataclass
class CriterionVerdict:
    criterion: str
    outcome: Outcome
    witness: dict | None = None
    certificate: SeparableDecomposition | None = None
    diagnostics: dict = field(default_factory=dict)

    @property
    def entangled(self) -> bool:
        return self.outcome is Outcome.ENTANGLED

    @property
    def separable(self) -> bool:
        return self.outcome is Outcome.SEPARABLE


def _certified(name, rho: DensityMatrix, cert: SeparableDecomposition, diagnostics) -> CriterionVerdict:
    problems = certificate_problems(rho, cert)
    if problems:
        raise RuntimeError(f"{name}: built certificate does not verify: {problems[0]}")
    return CriterionVerdict(name, Outcome.SEPARABLE, certificate=cert, diagnostics=diagnostics)


def _state_of(hs: HSDecomposition) -> DensityMatrix:
    return validate_density(reconstruct(hs), hs.shape)


def ppt_verdict(rho: DensityMatrix, tol: float | None = None, with_vector: bool = False) -> CriterionVerdict:
    """Partial transpose at every site; a negative eigenvalue proves entanglement.

    Never certifies separability.
    """
    tol = default_tol() if tol is None else tol
    mins = {}
    for site in range(rho.n_sites):
        mins[site] = float(partial_transpose(rho, site).spectrum()[0])
    site = min(mins, key=mins.get)
    diagnostics = {"min_eigenvalue_per_site": [mins[s] for s in range(rho.n_sites)]}
    if mins[site] < -tol:
        witness = {"site": site, "eigenvalue": mins[site]}
        if with_vector:
            _, vecs = np.linalg.eigh(partial_transpose(rho, site).matrix)
            witness["eigenvector"] = vecs[:, 0]
        return CriterionVerdict("ppt", Outcome.ENTANGLED, witness, diagnostics=diagnostics)
    return CriterionVerdict("ppt", Outcome.INCONCLUSIVE, diagnostics=diagnostics)


def l1_sufficient(hs: HSDecomposition) -> CriterionVerdict:
    """Certify full separability when the l1 sum of the coefficients is at most 1."""
    if not all(d == 2 for d in hs.shape):
        raise ValueError(f"l1 criterion needs an all-qubit shape, got {list(hs.shape)}")
    total = l1_separability_sum(hs)
    diagnostics = {"l1_sum": total, "l1_offidentity": l1_offidentity(hs)}
    if total <= 1 + 1e-12:
        return _certified("l1", _state_of(hs), certify_l1(hs), diagnostics)
    return CriterionVerdict("l1", Outcome.INCONCLUSIVE, diagnostics=diagnostics)


def svd_sufficient(hs: HSDecomposition) -> CriterionVerdict:
    """SVD-sharpened l1 test for MDS qubit-qudit and three-qubit states.

    For three qubits every pivot is tried and the smallest singular-value sum
    is used.
    """
    if not is_mds_pattern(hs):
        raise ValueError("SVD criterion needs an MDS decomposition")
    if len(hs.shape) == 2 and hs.shape[0] == 2:
        red = svd_reduce_qubit_qudit(hs)
        diagnostics = {"singular_values": red.singular_values[0].tolist(), "sum": red.total}
        build = lambda: certify_qubit_qudit_mds(hs, red)  # noqa: E731
    elif hs.shape == (2, 2, 2):
        reds = [svd_reduce_3q_slices(hs, p) for p in range(3)]
        red = min(reds, key=lambda r: r.total)
        diagnostics = {
            "pivot_sums": [r.total for r in reds],
            "best_pivot": red.pivot,
            "slice_singular_values": red.singular_values.tolist(),
            "sum": red.total,
        }
        build = lambda: certify_3q_mds_svd(hs, red)  # noqa: E731
    else:
        raise ValueError(f"SVD criterion supports shapes [2, d] and [2, 2, 2], got {list(hs.shape)}")
    if red.total <= 1 + 1e-12:
        return _certified("svd", _state_of(hs), build(), diagnostics)
    return CriterionVerdict("svd", Outcome.INCONCLUSIVE, diagnostics=diagnostics)


def _has_qubit_correlation_form(hs: HSDecomposition, tol: float = 1e-10) -> bool:
    """Qubit-qudit state without pure-qudit terms, so PTU maps rho to 2I/D - rho."""
    return all(abs(c) <= tol for idx, c in hs.items() if idx[0] == 0)


def mds_eigen_bound(rho: DensityMatrix, tol: float | None = None) -> CriterionVerdict:
    """An eigenvalue above ``2/D`` proves entanglement for MDS-type states."""
    tol = default_tol() if tol is None else tol
    if rho.all_qubits:
        if not is_mds(rho):
            raise ValueError("eigenvalue bound needs an MDS state")
    elif len(rho.shape) == 2 and rho.shape[0] == 2:
        if not _has_qubit_correlation_form(decompose(rho)):
            raise ValueError("eigenvalue bound needs a qubit-qudit state with no pure-qudit terms")
    else:
        raise ValueError(f"eigenvalue bound supports n qubits or [2, d], got {list(rho.shape)}")
    bound = 2 / rho.dim
    top = float(np.linalg.eigvalsh(rho.matrix)[-1])
    diagnostics = {"max_eigenvalue": top, "bound": bound}
    if top - bound > tol:
        return CriterionVerdict(
            "mds_bound", Outcome.ENTANGLED, {"eigenvalue": top, "bound": bound}, diagnostics=diagnostics
        )
    return CriterionVerdict("mds_bound", Outcome.INCONCLUSIVE, diagnostics=diagnostics)


def guhne_necessary(rho: DensityMatrix, tol: float | None = None) -> CriterionVerdict:
    """``|rho_18| <= (rho_22 rho_33 ... rho_77)^(1/6)`` holds for fully separable 3-qubit states."""
    tol = default_tol() if tol is None else tol
    if rho.shape != (2, 2, 2):
        raise ValueError(f"criterion is defined for three qubits, got {list(rho.shape)}")
    m = rho.matrix
    lhs = float(abs(m[0, 7]))
    diag = np.clip(np.real(np.diag(m))[1:7], 0, None)
    rhs = float(np.prod(diag) ** (1 / 6))
    diagnostics = {"lhs": lhs, "rhs": rhs}
    if lhs - rhs > tol:
        return CriterionVerdict("guhne", Outcome.ENTANGLED, {"lhs": lhs, "rhs": rhs}, diagnostics=diagnostics)
    return CriterionVerdict("guhne", Outcome.INCONCLUSIVE, diagnostics=diagnostics)


# --- GHZ-diagonal states -------------------------------------------------

# rows {a, 7 - a} hold variants (2k+1, 2k+2); see states._GHZ_BRANCHES
_GHZ_BLOCKS = ((0, 7), (1, 6), (2, 5), (3, 4))


def ghz_diag_coefficients(p) -> dict[str, float]:
    """The seven Hilbert-Schmidt parameters of a GHZ-diagonal state."""
    p1, p2, p3, p4, p5, p6, p7, p8 = p
    return {
        "R111": p1 + p3 + p5 + p7 - p2 - p4 - p6 - p8,
        "R221": p2 + p4 + p5 + p7 - p1 - p3 - p6 - p8,
        "R212": p2 + p3 + p6 + p7 - p1 - p4 - p5 - p8,
        "R122": p2 + p3 + p5 + p8 - p1 - p4 - p6 - p7,
        "t33": 2 * (p1 + p2 + p7 + p8) - 1,
        "o33": 2 * (p1 + p2 + p5 + p6) - 1,
        "p33": 2 * (p1 + p2 + p3 + p4) - 1,
    }


def ghz_diag_lambda_min_single_block(p) -> list[float]:
    """Smallest PTU eigenvalue of ``8 rho`` per pivot A, B, C from one block only.

    Each expression keeps only the block spanned by ``|000>, |111>``, so it is
    never below the true minimum and can lie above it; see
    :func:`ghz_diag_lambda_min`.
    """
    p1, p2, p3, p4, p5, p6, p7, p8 = p
    gap = p1 - p2
    return [4 * (p7 + p8 - gap), 4 * (p5 + p6 - gap), 4 * (p3 + p4 - gap)]


def ghz_diag_lambda_min(p) -> list[float]:
    """Exact smallest PTU eigenvalue of ``8 rho`` per pivot A, B, C.

    Under the PTU on one qubit the state splits into four 2x2 blocks; for
    descending weights two of them can hold the minimum.
    """
    p1, p2, p3, p4, p5, p6, p7, p8 = p
    return [
        4 * min(p7 + p8 - (p1 - p2), p5 + p6 - (p3 - p4)),
        4 * min(p5 + p6 - (p1 - p2), p7 + p8 - (p3 - p4)),
        4 * min(p3 + p4 - (p1 - p2), p7 + p8 - (p5 - p6)),
    ]


@dataclass
class GhzDiagReport:
    params: GhzDiagParams
    coefficients: dict[str, float]
    lambda_min_single_block: list[float]
    lambda_min: list[float]
    lambda_min_numeric: list[float]
    p1_bound_holds: bool
    special_case: bool
    special_value: float | None
    special_entangled: bool | None
    verdict: CriterionVerdict

    def as_dict(self) -> dict:
        return {
            "p": list(self.params.p),
            "permutation": list(self.params.permutation),
            "coefficients": self.coefficients,
            "lambda_min_single_block_8rho": self.lambda_min_single_block,
            "lambda_min_8rho": self.lambda_min,
            "lambda_min_numeric_8rho": self.lambda_min_numeric,
            "p1_le_quarter": self.p1_bound_holds,
            "special_case": self.special_case,
            "p1_minus_half_p2": self.special_value,
            "special_case_entangled": self.special_entangled,
        }


def ghz_diag_analysis(params: GhzDiagParams | np.ndarray, tol: float | None = None) -> GhzDiagReport:
    """Closed-form analysis of a GHZ-diagonal state, cross-checked numerically.

    Entangled when any PTU minimum is negative. Separability is certified
    on the equal-pair line when ``p1 - p2/2 <= 1/4``, otherwise through the
    l1 construction when it applies. ``p1 <= 1/4`` alone is reported but
    does not certify anything.
    """
    tol = default_tol() if tol is None else tol
    if not isinstance(params, GhzDiagParams):
        params = GhzDiagParams.from_probabilities(params)
    p = params.p
    rho = ghz_diagonal(params)
    coeffs = ghz_diag_coefficients(p)
    hs = decompose(rho)
    numeric_coeffs = {
        "R111": hs[(1, 1, 1)], "R221": hs[(2, 2, 1)], "R212": hs[(2, 1, 2)], "R122": hs[(1, 2, 2)],
        "t33": hs[(0, 3, 3)], "o33": hs[(3, 0, 3)], "p33": hs[(3, 3, 0)],
    }
    for key, value in coeffs.items():
        if abs(value - numeric_coeffs[key]) > CROSS_CHECK_TOL:
            raise RuntimeError(f"{key}: closed form {value} disagrees with decomposition {numeric_coeffs[key]}")

    single = ghz_diag_lambda_min_single_block(p)
    exact = ghz_diag_lambda_min(p)
    numeric = [8 * float(ptu_qubit(rho, s).spectrum()[0]) for s in range(3)]
    for site, (a, b) in enumerate(zip(exact, numeric)):
        if abs(a - b) > CROSS_CHECK_TOL:
            raise RuntimeError(f"pivot {SITE_NAMES[site]}: closed form {a} disagrees with numeric {b}")

    t, o, q = coeffs["t33"], coeffs["o33"], coeffs["p33"]
    special = abs(t - o) <= tol and abs(o - q) <= tol
    special_value = p[0] - p[1] / 2 if special else None
    special_entangled = None if special_value is None else special_value > 0.25

    diagnostics = {"lambda_min_8rho": exact, "p1": p[0]}
    site = int(np.argmin(numeric))
    if numeric[site] / 8 < -tol:
        verdict = CriterionVerdict(
            "ghz_diag", Outcome.ENTANGLED, {"site": site, "eigenvalue": numeric[site] / 8}, diagnostics=diagnostics
        )
    else:
        verdict = _ghz_diag_certificate(rho, hs, coeffs, special, special_value, diagnostics)
    return GhzDiagReport(
        params, coeffs, single, exact, numeric, p[0] <= 0.25 + 1e-12,
        special, special_value, special_entangled, verdict,
    )


def _ghz_diag_certificate(rho, hs, coeffs, special, special_value, diagnostics) -> CriterionVerdict:
    if special and special_value <= 0.25 + 1e-12:
        c = (coeffs["t33"] + coeffs["o33"] + coeffs["p33"]) / 3
        try:
            cert = certify_ghz_diag_special(coeffs["R111"], coeffs["R122"], coeffs["R212"], coeffs["R221"], c)
        except CertificateError as exc:
            log.debug("special-case certificate unavailable: %s", exc)
        else:
            return _certified("ghz_diag", rho, cert, {**diagnostics, "route": "special_case"})
    total = l1_separability_sum(hs)
    if total <= 1 + 1e-12:
        return _certified("ghz_diag", rho, certify_l1(hs), {**diagnostics, "route": "l1", "l1_sum": total})
    return CriterionVerdict("ghz_diag", Outcome.INCONCLUSIVE, diagnostics={**diagnostics, "l1_sum": total})


def ghz_diag_params_of(rho: DensityMatrix, tol: float = 1e-10) -> GhzDiagParams | None:
    """Weights of ``rho`` in the GHZ basis if it is GHZ-diagonal, else None.

    The returned params keep the caller's labelling only when it is already
    sorted; otherwise None is returned as the sorted state is a different one.
    """
    if rho.shape != (2, 2, 2):
        return None
    m = rho.matrix
    mask = np.zeros((8, 8), dtype=bool)
    for a, b in _GHZ_BLOCKS:
        mask[a, a] = mask[b, b] = mask[a, b] = mask[b, a] = True
    if np.max(np.abs(m[~mask]), initial=0) > tol or np.max(np.abs(m.imag)) > tol:
        return None
    p = []
    for a, b in _GHZ_BLOCKS:
        if abs(m[a, a] - m[b, b]) > tol:
            return None
        diag, off = m[a, a].real, m[a, b].real
        p.extend([diag + off, diag - off])
    p = np.array(p)
    if np.any(np.diff(p) > tol):
        return None
    p = np.clip(p, 0, None)
    return GhzDiagParams.from_probabilities(p / p.sum(), tol=1e-9)


# --- noise thresholds ----------------------------------------------------

DETECTORS: dict[str, Callable[[DensityMatrix, float], bool]] = {
    "ppt": lambda rho, tol: ppt_verdict(rho, tol).entangled,
    "guhne": lambda rho, tol: guhne_necessary(rho, tol).entangled,
    "mds_bound": lambda rho, tol: mds_eigen_bound(rho, tol).entangled,
}


class NonMonotoneError(ValueError):
    pass


def threshold_by_bisection(fires: Callable[[float], bool], tol_p: float = 1e-6, scan_points: int = 64) -> float | None:
    """Infimum of ``p`` in [0, 1] above which ``fires(p)`` holds.

    A scan on ``scan_points`` equally spaced values checks that the firing
    set is an interval ending at 1; bisection then refines the crossing.
    Returns None when nothing fires.
    """
    grid = np.linspace(0.0, 1.0, scan_points)
    fired = [bool(fires(float(p))) for p in grid]
    if not any(fired):
        return None
    first = fired.index(True)
    if not all(fired[first:]):
        raise NonMonotoneError("detector is not monotone in the mixing weight")
    if first == 0:
        return 0.0
    lo, hi = float(grid[first - 1]), float(grid[first])
    while hi - lo > tol_p:
        mid = (lo + hi) / 2
        if fires(mid):
            hi = mid
        else:
            lo = mid
    return (lo + hi) / 2


def noise_threshold(
    rho: DensityMatrix,
    detector: str = "ppt",
    tol_p: float = 1e-6,
    tol: float | None = None,
    scan_points: int = 64,
) -> float | None:
    """Smallest signal weight ``p`` beyond which ``p rho + (1-p) I/D`` is detected."""
    tol = default_tol() if tol is None else tol
    try:
        detect = DETECTORS[detector]
    except KeyError:
        raise ValueError(f"unknown detector {detector!r}; known: {sorted(DETECTORS)}") from None
    return threshold_by_bisection(lambda p: detect(mix_white_noise(rho, p), tol), tol_p, scan_points)


def ppt_scan(rho: DensityMatrix, points: int = 64) -> list[tuple[float, list[float]]]:
    """``(p, [min PT eigenvalue per site])`` rows for a white-noise sweep."""
    rows = []
    for p in np.linspace(0.0, 1.0, points):
        mixed = mix_white_noise(rho, float(p))
        rows.append((float(p), ppt_verdict(mixed, 0.0).diagnostics["min_eigenvalue_per_site"]))
    return rows


# --- combined pipeline ---------------------------------------------------


@dataclass
class Analysis:
    rho: DensityMatrix
    hs: HSDecomposition
    verdicts: list[CriterionVerdict]
    ghz_diag: GhzDiagReport | None = None

    @property
    def outcome(self) -> Outcome:
        kinds = {v.outcome for v in self.verdicts}
        if Outcome.ENTANGLED in kinds and Outcome.SEPARABLE in kinds:
            raise RuntimeError("criteria disagree: both entangled and certified separable")
        if Outcome.ENTANGLED in kinds:
            return Outcome.ENTANGLED
        if Outcome.SEPARABLE in kinds:
            return Outcome.SEPARABLE
        return Outcome.INCONCLUSIVE


def analyze(rho: DensityMatrix, tol: float | None = None) -> Analysis:
    """Run every applicable criterion.

    Order: PPT, Guhne (three qubits), MDS eigenvalue bound, l1, SVD,
    GHZ-diagonal closed forms.
    """
    tol = default_tol() if tol is None else tol
    hs = decompose(rho)
    verdicts = [ppt_verdict(rho, tol)]
    if rho.shape == (2, 2, 2):
        verdicts.append(guhne_necessary(rho, tol))
    mds = is_mds(rho)
    qubit_qudit = len(rho.shape) == 2 and rho.shape[0] == 2 and rho.shape[1] > 2
    if (rho.all_qubits and mds) or (qubit_qudit and _has_qubit_correlation_form(hs)):
        verdicts.append(mds_eigen_bound(rho, tol))
    if rho.all_qubits:
        verdicts.append(l1_sufficient(hs))
    if mds and (rho.shape == (2, 2, 2) or (len(rho.shape) == 2 and rho.shape[0] == 2)):
        verdicts.append(svd_sufficient(hs))
    report = None
    params = ghz_diag_params_of(rho)
    if params is not None:
        report = ghz_diag_analysis(params, tol)
        verdicts.append(report.verdict)
    return Analysis(rho, hs, verdicts, report)
