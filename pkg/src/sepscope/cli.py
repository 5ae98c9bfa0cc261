"""``sepscope`` command line.

Exit codes: 0 success, 2 parse error, 3 validation error, 4 builder
precondition or certificate verification failure.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import io, states
from .certificates import (
    CertificateError,
    certificate_from_dict,
    certificate_problems,
    certificate_to_dict,
    certify_3q_mds_svd,
    certify_braid_mixed,
    certify_l1,
    certify_qubit_qudit_mds,
    certify_two_param,
    certify_w_mixed,
)
from .hs import decompose
from .kernel import DensityError, DensityMatrix, default_tol
from .report import analysis_report, analysis_table, scan_csv, threshold_record, threshold_table

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_PRECONDITION = 0, 2, 3, 4


class ParseError(ValueError):
    pass


class ValidationError(ValueError):
    pass


def _numbers(text: str, count: int | None, expr: str) -> list[float]:
    parts = [x for x in text.replace(":", ",").split(",")]
    try:
        values = [float(x) for x in parts]
    except ValueError:
        raise ParseError(f"expected numbers in {expr!r}") from None
    if count is not None and len(values) != count:
        raise ParseError(f"{expr!r} needs {count} numbers, got {len(values)}")
    return values


def _integer(text: str, expr: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise ParseError(f"expected an integer in {expr!r}, got {text!r}") from None


def parse_state(expr: str) -> DensityMatrix:
    """Build the density matrix named by a state expression.

    Syntax errors raise :class:`ParseError`; well-formed expressions whose
    parameters do not give a valid state raise :class:`ValidationError`.
    """
    name, _, rest = expr.strip().partition(":")
    try:
        if name == "ghz":
            k = _integer(rest, expr)
            if not 1 <= k <= 8:
                raise ParseError(f"GHZ variant must be 1..8, got {k}")
            return states.ghz_state(k)
        if name == "w" and not rest:
            return states.w_state()
        if name == "four_qubit_xyz" and not rest:
            return states.four_qubit_xyz()
        if name == "braid":
            fields = rest.split(":")
            if len(fields) != 2:
                raise ParseError(f"expected braid:<n>:<i>, got {expr!r}")
            n, i = (_integer(f, expr) for f in fields)
            if n < 2 or n > 6:
                raise ParseError(f"braid states need 2 <= n <= 6, got {n}")
            if not 1 <= i <= 2**n:
                raise ParseError(f"braid index must be in 1..{2 ** n}, got {i}")
            return states.braid_state(n, i)
        if name == "ghzdiag":
            return states.ghz_diagonal(_numbers(rest, 8, expr))
        if name == "two_param":
            r1, r3 = _numbers(rest, 2, expr)
            return states.two_param(r1, r3)
    except ParseError:
        raise
    except ValueError as exc:
        raise ValidationError(str(exc)) from None
    raise ParseError(f"unknown state expression {expr!r}")


def load_input(args) -> tuple[DensityMatrix, dict]:
    tol = default_tol()
    if getattr(args, "file", None):
        try:
            data = io.read_json(args.file)
        except (OSError, json.JSONDecodeError) as exc:
            raise ParseError(f"cannot read {args.file}: {exc}") from None
        try:
            rho = io.density_from_dict(data, tol)
        except DensityError:
            raise
        except (ValueError, TypeError) as exc:
            raise ParseError(f"{args.file}: {exc}") from None
        descriptor = {"file": args.file}
    elif getattr(args, "state", None):
        rho = parse_state(args.state)
        descriptor = {"state": args.state}
    else:
        raise ParseError("one of --state or --file is required")
    noise = getattr(args, "noise", None)
    if noise is not None:
        if not 0 <= noise <= 1:
            raise ValidationError(f"--noise must lie in [0, 1], got {noise}")
        rho = states.mix_white_noise(rho, noise)
        descriptor["noise"] = noise
    return rho, descriptor


def _emit(text: str, path: str | None = None):
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_analyze(args) -> int:
    if args.certificate:
        if not args.against:
            raise ParseError("--certificate needs --against <state expression>")
        rho = parse_state(args.against)
        if args.noise is not None:
            rho = states.mix_white_noise(rho, args.noise)
        try:
            cert = certificate_from_dict(io.read_json(args.certificate))
        except (OSError, json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"cannot read certificate {args.certificate}: {exc}") from None
        problems = certificate_problems(rho, cert)
        record = {"certificate": args.certificate, "against": args.against, "noise": args.noise,
                  "terms": len(cert.terms), "verified": not problems, "problems": problems}
        _emit(io.dumps(record))
        return EXIT_OK if not problems else EXIT_PRECONDITION
    rho, descriptor = load_input(args)
    report = analysis_report(rho, descriptor, timing=args.timing)
    _emit(io.dumps(report) if args.format == "json" else analysis_table(report))
    return EXIT_OK


def cmd_threshold(args) -> int:
    rho, descriptor = load_input(args)
    record = threshold_record(rho, descriptor, args.detector, args.tol_p, points=args.points)
    if args.format == "json":
        _emit(io.dumps(record))
    elif args.format == "csv":
        _emit(scan_csv(record))
    else:
        _emit(threshold_table(record))
    return EXIT_OK


def _infer_mixing(rho: DensityMatrix, base: DensityMatrix, p: float, what: str) -> float:
    if not 0 <= p <= 1 or np.max(np.abs(states.mix_white_noise(base, p).matrix - rho.matrix)) > 1e-9:
        raise CertificateError(f"state is not a white-noise mixture of {what}")
    return p


def build_certificate(rho: DensityMatrix, method: str):
    hs = decompose(rho)
    if method == "l1":
        return certify_l1(hs)
    if method in ("svd", "qubit_qudit"):
        if len(rho.shape) == 2 and rho.shape[0] == 2:
            try:
                return certify_qubit_qudit_mds(hs)
            except ValueError as exc:
                raise CertificateError(str(exc)) from None
        if method == "svd" and rho.shape == (2, 2, 2):
            return certify_3q_mds_svd(hs)
        raise CertificateError(f"method {method} does not support shape {list(rho.shape)}")
    if rho.shape != (2, 2, 2):
        raise CertificateError(f"method {method} needs three qubits, got shape {list(rho.shape)}")
    if method == "two_param":
        r1, r3 = hs[(1, 1, 1)], hs[(0, 0, 3)]
        if set(hs.coeffs) - {(0, 0, 0), (1, 1, 1), (0, 0, 3)}:
            raise CertificateError("state has terms beyond I + R1 xxx + R3 IIz")
        return certify_two_param(r1, r3)
    if method == "braid_mixed":
        p = _infer_mixing(rho, states.braid_state(3, 1), hs[(3, 3, 3)], "the braid state B1")
        return certify_braid_mixed(p)
    if method == "w_mixed":
        p = _infer_mixing(rho, states.w_state(), -hs[(3, 3, 3)], "the W state")
        return certify_w_mixed(p)
    raise ParseError(f"unknown method {method!r}")


def cmd_certify(args) -> int:
    rho, _ = load_input(args)
    cert = build_certificate(rho, args.method)
    problems = certificate_problems(rho, cert)
    if problems:
        raise CertificateError("certificate failed verification: " + "; ".join(problems))
    _emit(io.dumps(certificate_to_dict(cert)), args.output)
    return EXIT_OK


def cmd_state(args) -> int:
    rho, _ = load_input(args)
    _emit(io.dumps(io.density_to_dict(rho)), args.output)
    return EXIT_OK


METHODS = ("l1", "svd", "two_param", "braid_mixed", "w_mixed", "qubit_qudit")


def _add_input(p, file_ok=True):
    group = p.add_mutually_exclusive_group()
    group.add_argument("--state", help="state expression, e.g. ghz:1, w, braid:3:1, two_param:0.5,0.5")
    if file_ok:
        group.add_argument("--file", help="JSON matrix file with 'shape' and 'matrix'")
    p.add_argument("--noise", type=float, help="signal weight p in p*rho + (1-p)*I/D")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sepscope", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="run every applicable criterion")
    _add_input(p)
    p.add_argument("--certificate", help="re-verify a certificate file instead of analysing")
    p.add_argument("--against", help="state expression to verify --certificate against")
    p.add_argument("--format", choices=("json", "table"), default="json")
    p.add_argument("--timing", action="store_true", help="include wall-clock time (report is no longer deterministic)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("threshold", help="white-noise threshold of a detector")
    _add_input(p)
    p.add_argument("--detector", choices=("ppt", "guhne", "mds_bound"), default="ppt")
    p.add_argument("--tol-p", type=float, default=1e-6)
    p.add_argument("--points", type=int, default=64, help="scan grid size")
    p.add_argument("--format", choices=("json", "csv", "table"), default="json")
    p.set_defaults(func=cmd_threshold)

    p = sub.add_parser("certify", help="write a verified separability certificate")
    _add_input(p)
    p.add_argument("--method", choices=METHODS, required=True)
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("state", help="export a state expression as a matrix file")
    _add_input(p)
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.set_defaults(func=cmd_state)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DensityError, ValidationError) as exc:
        print(f"invalid state ({type(exc).__name__}): {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except CertificateError as exc:
        print(f"cannot certify: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
