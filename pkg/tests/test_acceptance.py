"""Acceptance criteria, one test per criterion.

Each test records a PASS/FAIL line; the lines are printed in the pytest
terminal summary and when this file is run as a script.
"""
import itertools

import numpy as np
import pytest

from sepscope import states
from sepscope.certificates import (
    certify_braid_mixed,
    certify_l1,
    certify_two_param,
    certify_w_mixed,
    verify_certificate,
)
from sepscope.criteria import (
    Outcome,
    ghz_diag_analysis,
    ghz_diag_lambda_min_single_block,
    guhne_necessary,
    mds_eigen_bound,
    noise_threshold,
    ppt_verdict,
    threshold_by_bisection,
)
from sepscope.hs import HSDecomposition, correlation_matrix, decompose, reconstruct, svd_reduce_qubit_qudit
from sepscope.kernel import kron, validate_density
from sepscope.ptu import global_tu, partial_transpose, ptu_qubit

RESULTS: dict[str, str] = {}

B1_8RHO = np.array([
    [2, 0, 0, -2, 0, -2, -2, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
    [-2, 0, 0, 2, 0, 2, 2, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
    [-2, 0, 0, 2, 0, 2, 2, 0],
    [-2, 0, 0, 2, 0, 2, 2, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
], dtype=float)


def record(key: str, title: str, ok: bool, detail: str = ""):
    RESULTS[key] = f"{'PASS' if ok else 'FAIL'}  {key:<4} {title}" + (f"  ({detail})" if detail else "")
    assert ok, RESULTS[key]


def _maxdiff(a, b) -> float:
    return float(np.max(np.abs(np.asarray(a) - np.asarray(b))))


def test_01_ghz_ptu_spectrum():
    spec = ptu_qubit(states.ghz_state(1), 0).spectrum()
    err = _maxdiff(spec, [-0.5, 0, 0, 0, 0, 0.5, 0.5, 0.5])
    record("1", "GHZ PTU spectrum", err <= 1e-12, f"max error {err:.1e}")


def test_02_b1_ptu_spectrum_and_matrix():
    rho = states.braid_state(3, 1)
    err = _maxdiff(ptu_qubit(rho, 0).spectrum(), [-0.5, 0, 0, 0, 0, 0.5, 0.5, 0.5])
    exact = bool(np.array_equal(rho.matrix, B1_8RHO / 8))
    record("2", "B1 PTU spectrum and density matrix", err <= 1e-12 and exact, f"max error {err:.1e}, exact={exact}")


def test_03_w_pt_spectrum_and_matrix():
    out = partial_transpose(states.w_state(), 0)
    r2 = np.sqrt(2)
    err = _maxdiff(out.spectrum(), sorted([0, 0, 0, 0, 1 / 3, 2 / 3, r2 / 3, -r2 / 3]))
    expected = np.zeros((8, 8))
    expected[np.ix_([1, 2], [1, 2])] = 8
    expected[4, 4] = 8
    expected[0, [5, 6]] = expected[[5, 6], 0] = 8
    merr = _maxdiff(out.matrix, expected / 24)
    record("3", "W PT spectrum and matrix", err <= 1e-12 and merr <= 1e-12, f"spectrum {err:.1e}, matrix {merr:.1e}")


def test_04_mixed_closed_forms():
    worst = 0.0
    r2 = np.sqrt(2)
    for p in np.linspace(0, 1, 21):
        b1 = states.mix_white_noise(states.braid_state(3, 1), p)
        closed = sorted([(1 - p)] * 4 + [(1 + 3 * p)] * 3 + [1 - 5 * p])
        worst = max(worst, _maxdiff(ptu_qubit(b1, 0).spectrum(), np.array(closed) / 8))
        w = states.mix_white_noise(states.w_state(), p)
        closed = sorted([3 * (1 - p)] * 4 + [3 + 13 * p, 3 + 5 * p, 3 - 3 * p + 8 * r2 * p, 3 - 3 * p - 8 * r2 * p])
        worst = max(worst, _maxdiff(ptu_qubit(w, 0).spectrum(), np.array(closed) / 24))
    record("4", "mixed B1 and W PTU closed forms", worst <= 1e-10, f"max error {worst:.1e}")


def test_05_thresholds():
    got = {
        "GHZ": (noise_threshold(states.ghz_state(1)), 0.2),
        "B1": (noise_threshold(states.braid_state(3, 1)), 0.2),
        "W": (noise_threshold(states.w_state()), 3 / (3 + 8 * np.sqrt(2))),
    }
    ok = all(v is not None and abs(v - e) <= 1e-6 for v, e in got.values())
    detail = ", ".join(f"{k} {v:.7f}" for k, (v, _) in got.items())
    record("5", "white-noise thresholds", ok, detail)


def test_06_four_qubit_example():
    rho = states.four_qubit_xyz()
    err = _maxdiff(np.linalg.eigvalsh(rho.matrix), [0] * 12 + [0.25] * 4)
    verdict = mds_eigen_bound(rho)
    record("6", "4-qubit MDS example", err <= 1e-12 and verdict.entangled, f"spectrum {err:.1e}, {verdict.outcome.value}")


def test_07_braid_algebra():
    r = states.braid_r_gate()
    i2 = np.eye(2)
    worst = _maxdiff(kron(r, i2) @ kron(i2, r) @ kron(r, i2), kron(i2, r) @ kron(r, i2) @ kron(i2, r))
    for n in (2, 3, 4):
        g = {i: states.braid_generator(n, i) for i in range(1, n)}
        for i in range(1, n - 1):
            worst = max(worst, _maxdiff(g[i] @ g[i + 1] @ g[i], g[i + 1] @ g[i] @ g[i + 1]))
        for i, j in itertools.combinations(range(1, n), 2):
            if j - i >= 2:
                worst = max(worst, _maxdiff(g[i] @ g[j], g[j] @ g[i]))
    record("7", "Yang-Baxter and braid relations", worst <= 1e-14, f"max residual {worst:.1e}")


def test_08_odd_mds_suite():
    rng = np.random.default_rng(8)
    worst, fired = 0.0, 0
    for _ in range(200):
        rho = states.random_mds((2, 2, 2), rng)
        spec = np.linalg.eigvalsh(rho.matrix)
        for site in range(3):
            worst = max(worst, _maxdiff(ptu_qubit(rho, site).spectrum(), spec))
        worst = max(worst, _maxdiff(global_tu(rho).spectrum(), spec))
        r_op = 8 * rho.matrix - np.eye(8)
        eig_r = np.linalg.eigvalsh(r_op)
        worst = max(worst, _maxdiff(eig_r, -eig_r[::-1]))
        fired += guhne_necessary(rho).entangled
    record("8", "odd-n MDS properties", worst <= 1e-10 and fired == 0, f"max error {worst:.1e}, guhne fired {fired}")


def test_09_qubit_qudit_suite():
    rng = np.random.default_rng(9)
    worst, excess = 0.0, 0.0
    for _ in range(200):
        rho = states.random_mds((2, 3), rng)
        lam = np.linalg.eigvalsh(rho.matrix)
        worst = max(worst, _maxdiff(ptu_qubit(rho, 0).spectrum(), np.sort(1 / 3 - lam)))
        hs = decompose(rho)
        excess = max(excess, svd_reduce_qubit_qudit(hs).total - np.abs(correlation_matrix(hs)).sum())
    record("9", "qubit-qutrit MDS properties", worst <= 1e-10 and excess <= 1e-12, f"max error {worst:.1e}")


def test_10_hs_roundtrip():
    rng = np.random.default_rng(10)
    worst = 0.0
    for shape in [(2, 2), (2, 2, 2), (2, 2, 2, 2), (2, 3)]:
        for _ in range(25):
            rho = states.random_density(shape, rng)
            worst = max(worst, _maxdiff(reconstruct(decompose(rho)), rho.matrix))
    record("10", "HS roundtrip", worst <= 1e-12, f"max error {worst:.1e}")


def _random_l1_tensor(rng):
    n = int(rng.integers(2, 5))
    coeffs = {(0,) * n: 1.0}
    for _ in range(int(rng.integers(1, 6))):
        idx = tuple(int(i) for i in rng.integers(0, 4, size=n))
        if any(idx):
            coeffs[idx] = coeffs.get(idx, 0.0) + rng.normal()
    hs = HSDecomposition((2,) * n, coeffs)
    total = sum(abs(c) for _, c in hs.items()) or 1.0
    scale = rng.uniform(0, 1) / total
    return HSDecomposition(hs.shape, {k: (v if k == hs.identity else v * scale) for k, v in coeffs.items()})


def test_11_certificate_suite():
    cases = []
    for r in np.linspace(0, 1, 6):
        for theta in np.linspace(0, 2 * np.pi, 12, endpoint=False):
            r1, r3 = r * np.cos(theta), r * np.sin(theta)
            cases.append((states.two_param(r1, r3), certify_two_param(r1, r3)))
    for p in np.linspace(0, 0.2, 9):
        cases.append((states.mix_white_noise(states.braid_state(3, 1), p), certify_braid_mixed(p)))
    for p in np.linspace(0, 1 / 9, 9):
        cases.append((states.mix_white_noise(states.w_state(), p), certify_w_mixed(p)))
    rng = np.random.default_rng(11)
    for _ in range(50):
        hs = _random_l1_tensor(rng)
        cases.append((validate_density(reconstruct(hs), hs.shape), certify_l1(hs)))
    bad_cert = sum(not verify_certificate(rho, cert, 1e-10) for rho, cert in cases)
    bad_ppt = sum(ppt_verdict(rho).entangled for rho, _ in cases)
    record("11", "certificate suite", bad_cert == 0 and bad_ppt == 0,
           f"{len(cases)} certificates, {bad_cert} unverified, {bad_ppt} PPT-entangled targets")


def test_12a_ghz_diag_single_block_lambda_min():
    rng = np.random.default_rng(12)
    mismatched, worst = 0, 0.0
    for _ in range(200):
        p = np.sort(rng.dirichlet(np.ones(8)))[::-1]
        rho = states.ghz_diagonal(p)
        numeric = [8 * ptu_qubit(rho, s).spectrum()[0] for s in range(3)]
        err = _maxdiff(ghz_diag_lambda_min_single_block(p), numeric)
        worst = max(worst, err)
        mismatched += err > 1e-10
    record("12a", "GHZ-diagonal single-block lambda_min vs numeric", mismatched == 0,
           f"{mismatched}/200 vectors differ, max error {worst:.3g}")


def test_12b_ghz_diag_special_line():
    undecided, wrong = 0, 0
    for r in np.linspace(0, 1 / 8, 11):
        rest = 1 - 6 * r
        for p2 in np.linspace(r, rest / 2, 21):
            p1 = rest - p2
            if abs(p1 - p2 / 2 - 0.25) < 1e-8:
                continue
            report = ghz_diag_analysis([p1, p2] + [r] * 6)
            undecided += report.verdict.outcome is Outcome.INCONCLUSIVE
            wrong += report.special_case and report.verdict.entangled != (p1 - p2 / 2 > 0.25)
    record("12b", "GHZ-diagonal special line is decisive", undecided == 0 and wrong == 0,
           f"{undecided} inconclusive, {wrong} disagree with p1 - p2/2 > 1/4")


def test_12c_ghz_noise_route():
    def entangled(q):
        return bool(ghz_diag_analysis(states.ghz_noise_params(q)).special_entangled)

    p_star = threshold_by_bisection(entangled)
    record("12c", "GHZ+noise via p1 = (1+7p)/8", p_star is not None and abs(p_star - 0.2) <= 1e-6, f"p* = {p_star:.7f}")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            try:
                fn()
            except AssertionError:
                pass
    for line in RESULTS.values():
        print(line)
