"""Command line front end: ``milnor weights|singular|fold|verify``.

Exit codes: 0 success, 1 analysis verdict "fail", 2 usage or input error,
3 numerical non-convergence.
"""
from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import __version__
from .exceptions import (
    CertificateRequired,
    DegenerateSpan,
    IndexMismatch,
    MilnorError,
    NotAFold,
    NotSingular,
    NotWeightedHomogeneous,
    RootFindingDidNotConverge,
    UnknownSuite,
)
from .fold import FOLD_TOL, fold_test, index_of
from .report import document, dumps
from .singular import (
    RANK_TOL,
    MapSpec,
    analyze_point,
    homogeneous_2var_circles,
    sphere_search,
)
from .suites import SUITES, run_suite
from .validation import check_polynomials, parse_point, project_to_sphere
from .weights import common_weights_multi, weight_space

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_NONCONVERGENCE = 3

DEFAULT_EPSILON = 1.0
DEFAULT_RESTARTS = 64
DEFAULT_ITERATIONS = 300

_VERDICT_ERRORS = (NotSingular, NotAFold, DegenerateSpan, CertificateRequired, NotWeightedHomogeneous, IndexMismatch)
_SUITE_OPTIONS = {
    "prop41": {"m": "ms", "n": "ns"},
    "prop42": {"m": "ms"},
    "prop43": {"m": "ms"},
}


class _Failure(Exception):
    """A completed analysis whose verdict is "fail"; carries the report body."""

    def __init__(self, body, message):
        super().__init__(message)
        self.body = body


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--epsilon", type=_positive_float, default=None, help="sphere radius (default 1)")
    common.add_argument("--seed", type=int, default=0, help="random seed for searches")
    common.add_argument("--restarts", type=_positive_int, default=DEFAULT_RESTARTS, help="search restarts")
    common.add_argument("--iterations", type=_positive_int, default=DEFAULT_ITERATIONS, help="descent steps per restart")
    common.add_argument("--tolerance-rank", type=_positive_float, default=RANK_TOL, help="singularity margin tolerance")
    common.add_argument("--tolerance-fold", type=_positive_float, default=FOLD_TOL, help="fold determinant tolerance")
    common.add_argument("--json", action="store_true", help="emit a JSON report")

    parser = argparse.ArgumentParser(prog="milnor", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("weights", parents=[common], help="weights and common weight certificates")
    p.add_argument("polynomials", nargs="+")

    p = sub.add_parser("singular", parents=[common], help="singularity test at a point or over the sphere")
    p.add_argument("polynomials", nargs="+")
    p.add_argument("--point", help='comma-separated coordinates, e.g. "0.7071+0i,0.7071+0i"')
    p.add_argument("--scan", action="store_true", help="multi-start search on the sphere")
    p.add_argument("--circles", action="store_true", help="exact circle enumeration (two homogeneous polynomials in z1, z2)")

    p = sub.add_parser("fold", parents=[common], help="fold test at a singular point")
    p.add_argument("polynomials", nargs=2)
    p.add_argument("--point", required=True)

    p = sub.add_parser("verify", parents=[common], help="run a named verification suite")
    p.add_argument("suite", help=", ".join(SUITES))
    p.add_argument("--m", type=_positive_int, nargs="+", help="values of m")
    p.add_argument("--n", type=_positive_int, nargs="+", help="values of n")
    return parser


def _config(args) -> dict:
    config = {}
    for key in ("polynomials", "suite", "point", "scan", "circles", "m", "n"):
        if hasattr(args, key):
            config[key] = getattr(args, key)
    epsilon = args.epsilon
    if epsilon is None and args.command in ("singular", "fold"):
        epsilon = DEFAULT_EPSILON
    config.update(
        epsilon=epsilon,
        seed=args.seed,
        restarts=args.restarts,
        iterations=args.iterations,
        tolerance_rank=args.tolerance_rank,
        tolerance_fold=args.tolerance_fold,
    )
    return config


def _certificate_dict(cert):
    if cert is None:
        return None
    return {
        "weights": list(cert.weights),
        "factors": list(cert.factors),
        "integer_factors": cert.integer_factors,
    }


def _epsilon(args) -> float:
    return DEFAULT_EPSILON if args.epsilon is None else args.epsilon


# -- commands ------------------------------------------------------------------

def cmd_weights(args) -> dict:
    polys = check_polynomials(args.polynomials)
    entries = []
    for text, f in zip(args.polynomials, polys):
        entry = {"input": text, "polynomial": str(f)}
        try:
            ws = weight_space(f)
        except NotWeightedHomogeneous as exc:
            entry.update(feasible=False, reason=str(exc))
        else:
            entry.update(
                feasible=True,
                canonical_weights=list(ws.canonical_weights),
                reciprocal_weights=list(ws.reciprocal_point),
                family_dimension=ws.family_dimension,
                kernel_basis=[list(v) for v in ws.kernel_basis],
            )
        entries.append(entry)
    body = {"polynomials": entries}
    if len(polys) > 1:
        cert = common_weights_multi(polys)
        body["common_weights"] = _certificate_dict(cert)
        if cert is None:
            body["common_weights_reason"] = "no weights w with w_{f_j} = s_j * w for positive s_j"
    return body


def cmd_singular(args) -> dict:
    if not (args.point or args.scan or args.circles):
        raise _Usage("singular needs --point, --scan or --circles")
    polys = check_polynomials(args.polynomials)
    spec = MapSpec(polys, _epsilon(args))
    cert = common_weights_multi(polys)
    body = {"common_weights": _certificate_dict(cert)}
    pair_cert = cert if spec.m == 2 else None
    if args.point:
        p = project_to_sphere(parse_point(args.point), spec.epsilon)
        body["point_report"] = analyze_point(spec, p, pair_cert, args.tolerance_rank)
    if args.circles:
        if spec.m != 2 or spec.n_vars != 2:
            raise _Usage("--circles needs two polynomials in z1, z2")
        body["circles"] = homogeneous_2var_circles(polys[0], polys[1], spec.epsilon)
    if args.scan:
        hits = sphere_search(
            spec,
            args.restarts,
            args.iterations,
            args.seed,
            certificate=cert,
            rank_tol=args.tolerance_rank,
        )
        body["scan"] = {"n_found": len(hits), "points": hits}
    return body


def cmd_fold(args) -> dict:
    polys = check_polynomials(args.polynomials)
    f, g = polys
    cert = common_weights_multi(polys)
    if cert is None:
        raise CertificateRequired("the pair has no common weights w_g = s*w_f")
    eps = _epsilon(args)
    p = project_to_sphere(parse_point(args.point), eps)
    report = fold_test(f, g, cert, p, args.tolerance_rank, args.tolerance_fold)
    body = {"common_weights": _certificate_dict(cert), "fold_report": report}
    if report.is_fold and report.c_dependent:
        index_of(report)
    return body


def cmd_verify(args) -> dict:
    if args.suite not in SUITES:
        raise UnknownSuite(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    allowed = _SUITE_OPTIONS.get(args.suite, {})
    kwargs = {}
    for flag in ("m", "n"):
        value = getattr(args, flag)
        if value is None:
            continue
        if flag not in allowed:
            raise _Usage(f"suite {args.suite} does not take --{flag}")
        kwargs[allowed[flag]] = tuple(value)
    if args.epsilon is not None:
        kwargs["epsilon"] = args.epsilon
    if args.suite in ("prop33", "prop52", "prop53"):
        kwargs.update(restarts=args.restarts, iterations=args.iterations, seed=args.seed)
    result = run_suite(args.suite, **kwargs)
    body = {"suite": result}
    if not result.passed:
        raise _Failure(body, f"suite {args.suite} failed")
    return body


class _Usage(Exception):
    pass


COMMANDS = {
    "weights": cmd_weights,
    "singular": cmd_singular,
    "fold": cmd_fold,
    "verify": cmd_verify,
}


# -- text rendering ------------------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, (complex, np.complexfloating)):
        return f"{x.real:.6g}{x.imag:+.6g}i"
    if isinstance(x, (float, np.floating)):
        return f"{x:.6g}"
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return "(" + ", ".join(_fmt(v) for v in x) + ")"
    return str(x)


def _render_cert(cert, lines):
    if cert is None:
        lines.append("common weights: none")
    else:
        lines.append(
            f"common weights: w = {_fmt(cert['weights'])}, s = {_fmt(cert['factors'])}"
            + ("" if cert["integer_factors"] else " (non-integer s_j)")
        )


def render_text(command: str, body: dict) -> str:
    lines = []
    if command == "weights":
        for e in body["polynomials"]:
            if e["feasible"]:
                kind = "unique" if e["family_dimension"] == 0 else f"{e['family_dimension']}-dimensional family"
                lines.append(f"{e['polynomial']}: weights {_fmt(e['canonical_weights'])} ({kind})")
            else:
                lines.append(f"{e['polynomial']}: {e['reason']}")
        if "common_weights" in body:
            _render_cert(body["common_weights"], lines)
    elif command == "singular":
        _render_cert(body["common_weights"], lines)
        if "point_report" in body:
            r = body["point_report"]
            lines.append(f"point {_fmt(list(r.point))}")
            lines.append(f"  numeric: {r.numeric_verdict} (margin {_fmt(r.numeric_margin)})")
            if r.algebraic_residual is not None:
                lines.append(f"  algebraic: {r.algebraic_verdict} (minor residual {_fmt(r.algebraic_residual)})")
        if "circles" in body:
            c = body["circles"]
            if c.degenerate_all_singular:
                lines.append("circles: the Jacobian minor vanishes, every point off the link is singular")
            else:
                lines.append(f"circles: {c.count} (bound {c.bound})")
                for d in c.directions:
                    lines.append(f"  epsilon*e^(i theta)*{_fmt(list(d))}")
        if "scan" in body:
            lines.append(f"scan: {body['scan']['n_found']} singular orbit(s)")
            for r in body["scan"]["points"]:
                lines.append(f"  {_fmt(list(r.point))} margin {_fmt(r.numeric_margin)}")
    elif command == "fold":
        _render_cert(body["common_weights"], lines)
        r = body["fold_report"]
        lines.append(f"status: {r.status}")
        lines.append(f"det Re(V^T H V) = {_fmt(r.det_real)} (threshold {_fmt(r.threshold)})")
        if r.det_complex is not None:
            lines.append(f"det(W^T H W) = {_fmt(r.det_complex)}")
        lines.append(f"eigenvalues: {_fmt(list(r.eigenvalues))}")
        if r.is_fold:
            lines.append(f"index: {r.index} (absolute {r.absolute_index})")
    elif command == "verify":
        s = body["suite"]
        for c in s.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'}  {c.name}  [{c.detail}]")
        failed = sum(not c.passed for c in s.checks)
        lines.append(
            f"{s.name}: {'all pass' if s.passed else 'FAIL'} "
            f"({len(s.checks) - failed}/{len(s.checks)} checks, {s.seconds:.2f} s)"
        )
    return "\n".join(lines) + "\n"


# -- entry point -----------------------------------------------------------------

def _error_body(exc) -> dict:
    err = {"type": type(exc).__name__, "message": str(exc)}
    for attr in ("line", "column", "value", "norm", "margin", "residual"):
        if getattr(exc, attr, None) is not None:
            err[attr] = getattr(exc, attr)
    return {"error": err}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    config = _config(args)

    def emit(body, stream=sys.stdout):
        if args.json:
            sys.stdout.write(dumps(document(args.command, config, body)))
        else:
            stream.write(render_text(args.command, body) if "error" not in body else
                         f"error: {body['error']['type']}: {body['error']['message']}\n")

    try:
        body = COMMANDS[args.command](args)
    except _Failure as exc:
        emit(exc.body)
        return EXIT_FAIL
    except _Usage as exc:
        emit({"error": {"type": "UsageError", "message": str(exc)}}, sys.stderr)
        return EXIT_USAGE
    except RootFindingDidNotConverge as exc:
        emit(_error_body(exc), sys.stderr)
        return EXIT_NONCONVERGENCE
    except _VERDICT_ERRORS as exc:
        emit(_error_body(exc), sys.stderr)
        return EXIT_FAIL
    except (MilnorError, ValueError) as exc:
        emit(_error_body(exc), sys.stderr)
        return EXIT_USAGE
    emit(body)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
