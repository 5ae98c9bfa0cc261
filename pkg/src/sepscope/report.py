"""Report records produced by the command-line interface."""
from __future__ import annotations

import time

import numpy as np

from .certificates import certificate_to_dict
from .criteria import Analysis, CriterionVerdict, analyze, noise_threshold, ppt_scan
from .hs import l1_offidentity, l1_separability_sum
from .kernel import DensityMatrix

SITE_NAMES = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _verdict_dict(v: CriterionVerdict) -> dict:
    out = {"criterion": v.criterion, "outcome": v.outcome.value, "diagnostics": v.diagnostics}
    if v.witness is not None:
        out["witness"] = {k: w for k, w in v.witness.items() if k != "eigenvector"}
    if v.certificate is not None:
        out["certificate"] = certificate_to_dict(v.certificate)
    return out


def analysis_report(rho: DensityMatrix, descriptor: dict, tol: float | None = None, timing: bool = False) -> dict:
    """Full analysis record; ``timing`` adds wall-clock seconds and breaks byte determinism."""
    start = time.perf_counter()
    result: Analysis = analyze(rho, tol)
    report = {
        "input": descriptor,
        "shape": list(rho.shape),
        "spectrum": np.linalg.eigvalsh(rho.matrix).tolist(),
        "hs": {
            "nonzero": result.hs.labelled(),
            "l1_sum": l1_separability_sum(result.hs),
            "l1_offidentity": l1_offidentity(result.hs),
        },
        "verdicts": [_verdict_dict(v) for v in result.verdicts],
        "overall": result.outcome.value,
    }
    if result.ghz_diag is not None:
        report["ghz_diagonal"] = result.ghz_diag.as_dict()
    if timing:
        report["timing_seconds"] = time.perf_counter() - start
    return report


def threshold_record(
    rho: DensityMatrix,
    descriptor: dict,
    detector: str = "ppt",
    tol_p: float = 1e-6,
    tol: float | None = None,
    points: int = 64,
) -> dict:
    p_star = noise_threshold(rho, detector, tol_p, tol, points)
    return {
        "input": descriptor,
        "detector": detector,
        "tol_p": tol_p,
        "threshold": p_star,
        "scan": [{"p": p, "min_ptu_eigenvalue": mins} for p, mins in ppt_scan(rho, points)],
    }


def scan_csv(record: dict) -> str:
    n = len(record["scan"][0]["min_ptu_eigenvalue"])
    header = ["p"] + [f"min_ptu_eigenvalue_{SITE_NAMES[s]}" for s in range(n)]
    lines = [",".join(header)]
    for row in record["scan"]:
        lines.append(",".join(f"{x:.15g}" for x in [row["p"], *row["min_ptu_eigenvalue"]]))
    return "\n".join(lines) + "\n"


def analysis_table(report: dict) -> str:
    lines = [
        f"input    {report['input']}",
        f"shape    {report['shape']}",
        f"spectrum {' '.join(f'{x:.6g}' for x in report['spectrum'])}",
        f"l1 sum   {report['hs']['l1_sum']:.6g}",
        "",
        f"{'criterion':<10} {'outcome':<19} detail",
    ]
    for v in report["verdicts"]:
        if "witness" in v:
            detail = ", ".join(f"{k}={_short(x)}" for k, x in v["witness"].items())
        elif "certificate" in v:
            detail = f"{len(v['certificate']['terms'])}-term certificate"
        else:
            detail = ""
        lines.append(f"{v['criterion']:<10} {v['outcome']:<19} {detail}")
    lines.append("")
    lines.append(f"overall  {report['overall']}")
    return "\n".join(lines) + "\n"


def threshold_table(record: dict) -> str:
    p = record["threshold"]
    head = f"detector {record['detector']}: p* = {'none' if p is None else f'{p:.7g}'} (tol {record['tol_p']:g})"
    return head + "\n" + scan_csv(record).replace(",", "\t")


def _short(x) -> str:
    return f"{x:.6g}" if isinstance(x, float) else str(x)

