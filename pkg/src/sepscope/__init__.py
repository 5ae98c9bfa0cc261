"""Separability and entanglement analysis of multi-qubit and qubit-qudit states."""

from .certificates import (
    CertificateError,
    ProductTerm,
    SeparableDecomposition,
    certify_3q_mds_svd,
    certify_braid_mixed,
    certify_l1,
    certify_qubit_qudit_mds,
    certify_two_param,
    certify_w_mixed,
    verify_certificate,
)
from .criteria import (
    CriterionVerdict,
    Outcome,
    analyze,
    ghz_diag_analysis,
    guhne_necessary,
    l1_sufficient,
    mds_eigen_bound,
    noise_threshold,
    ppt_verdict,
    svd_sufficient,
)
from .hs import HSDecomposition, decompose, gs_split, reconstruct
from .kernel import (
    DensityError,
    DensityMatrix,
    HermiticityError,
    NegativityError,
    TraceError,
    eig_hermitian,
    kron,
    svd_real,
    validate_density,
)
from .ptu import global_tu, partial_transpose, ptu_qubit
from .states import braid_state, ghz_diagonal, ghz_state, mix_white_noise, w_state

__version__ = "0.1.0"

__all__ = [
    "CertificateError",
    "CriterionVerdict",
    "DensityError",
    "DensityMatrix",
    "HSDecomposition",
    "HermiticityError",
    "NegativityError",
    "Outcome",
    "ProductTerm",
    "SeparableDecomposition",
    "TraceError",
    "analyze",
    "braid_state",
    "certify_3q_mds_svd",
    "certify_braid_mixed",
    "certify_l1",
    "certify_qubit_qudit_mds",
    "certify_two_param",
    "certify_w_mixed",
    "decompose",
    "eig_hermitian",
    "ghz_diag_analysis",
    "ghz_diagonal",
    "ghz_state",
    "global_tu",
    "gs_split",
    "guhne_necessary",
    "kron",
    "l1_sufficient",
    "mds_eigen_bound",
    "mix_white_noise",
    "noise_threshold",
    "partial_transpose",
    "ppt_verdict",
    "ptu_qubit",
    "reconstruct",
    "svd_real",
    "svd_sufficient",
    "validate_density",
    "verify_certificate",
    "w_state",
]
