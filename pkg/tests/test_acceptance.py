"""The eight acceptance criteria, one test each, with a PASS/FAIL line per criterion."""
import time
from fractions import Fraction

import numpy as np
import pytest

from milnor_atlas.fold import fold_test
from milnor_atlas.polynomial import Polynomial, log_hessian, parse_polynomials
from milnor_atlas.singular import MapSpec, analyze_point, circle_action
from milnor_atlas.suites import (
    SAMPLE_MARGIN_FLOOR,
    generic_coefficients,
    power_sum,
    run_suite,
)
from milnor_atlas.weights import common_weights, euler_residual, weight_space

from test_polynomial import log_hessian_fd
from test_singular import EXAMPLES, random_sphere_points
from test_weights import rescaling_residual

PAIRING_ATOL = 1e-8


@pytest.fixture
def report(capsys):
    def emit(number, title, passed, detail):
        with capsys.disabled():
            print(f"\n[criterion {number}] {'PASS' if passed else 'FAIL'}  {title}: {detail}")
        assert passed, detail

    return emit


def _suite_detail(result):
    failed = [c for c in result.checks if not c.passed]
    head = f"{len(result.checks) - len(failed)}/{len(result.checks)} checks, {result.seconds:.3f} s"
    return head if not failed else head + "; first failure: " + failed[0].name + " " + failed[0].detail


def test_criterion_1_fermat_xy_folds(report):
    result = run_suite("prop42", ms=(2, 3, 5), epsilon=1.0)
    ok = result.passed and result.seconds < 1.0
    report(1, "prop42 folds, det(W^T H W) = 2mi, index 1, < 1 s", ok, _suite_detail(result))


def test_criterion_2_diagonal_quadratic(report):
    result = run_suite("prop41", ms=(2,), ns=(2, 3), epsilon=1.0)
    ok = result.passed and result.seconds < 1.0
    report(2, "prop41 m=2 folds of index n-1, Hessian formula, < 1 s", ok, _suite_detail(result))


def test_criterion_3_diagonal_higher_degree(report):
    result = run_suite("prop41", ms=(3, 4), ns=(2, 3), epsilon=1.0)
    ok = result.passed and result.seconds < 1.0
    report(3, "prop41 m in {3,4} singular, H = 0, no folds, < 1 s", ok, _suite_detail(result))


def test_criterion_4_disjoint(report):
    start = time.perf_counter()
    results = [run_suite(name, epsilon=0.1, restarts=64, iterations=300) for name in ("prop33", "prop52")]
    seconds = time.perf_counter() - start
    ok = all(r.passed for r in results) and seconds < 30.0
    detail = "; ".join(f"{r.name}: {_suite_detail(r)}" for r in results)
    report(4, f"no singular points, sampled margins > {SAMPLE_MARGIN_FLOOR}, < 30 s", ok, f"{detail}; total {seconds:.2f} s")


def test_criterion_5_circles(report):
    result = run_suite("prop43", ms=(2, 3, 4, 5, 6))
    ok = result.passed and result.seconds < 1.0
    report(5, "circle counts and degenerate pair, < 1 s", ok, _suite_detail(result))


def test_criterion_6_weights(report):
    notes = []
    ok = True
    for m in range(2, 9):
        f, g = parse_polynomials([f"z1^{m}+z2^{m}", "z1*z2"])
        s = common_weights(f, g).s
        ok &= s == Fraction(2, m)
    notes.append("s = 2/m for m = 2..8" if ok else "s mismatch")
    f = Polynomial.parse("z1*z2")
    ws = weight_space(f)
    ok &= ws.family_dimension == 1
    rng = np.random.default_rng(6)
    worst = 0.0
    for _ in range(20):
        z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        c = complex(rng.standard_normal(), rng.standard_normal())
        worst = max(worst, euler_residual(f, ws.canonical_weights, z), rescaling_residual(f, ws.canonical_weights, z, c))
    ok &= worst < 1e-9
    canonical = "(" + ", ".join(map(str, ws.canonical_weights)) + ")"
    notes.append(f"z1*z2 family dim {ws.family_dimension}, canonical {canonical}, worst residual {worst:.1e}")
    report(6, "exact factors and weight characterizations", ok, "; ".join(notes))


def _fold_points():
    for m in (2, 3, 5):
        f, g = parse_polynomials([f"z1^{m}+z2^{m}", "z1*z2"])
        cert = common_weights(f, g)
        for r in range(m):
            for k in range(7):
                p = np.exp(2j * np.pi * k / 7) * np.array([1, np.exp(2j * np.pi * r / m)]) / np.sqrt(2)
                yield f, g, cert, p
    for n in (2, 3):
        c, d = generic_coefficients(n, n)
        f, g = power_sum(c, 2), power_sum(d, 2)
        cert = common_weights(f, g)
        for u in range(n):
            for theta in (0.0, 1.0, 2.0):
                p = np.zeros(n, dtype=complex)
                p[u] = np.exp(1j * theta)
                yield f, g, cert, p


def test_criterion_7_identities(report):
    from milnor_atlas.fold import charpoly_identity_residual, determinant_identity_residual

    det_gap = char_gap = pair_gap = 0.0
    count = 0
    for f, g, cert, p in _fold_points():
        rep = fold_test(f, g, cert, p)
        det_gap = max(det_gap, determinant_identity_residual(rep))
        char_gap = max(char_gap, *(charpoly_identity_residual(rep, t) for t in (0.0, 0.5, 1.0, 2.0)))
        eig = np.sort(rep.eigenvalues)
        scale = np.linalg.norm(rep.reduced_matrix)
        pair_gap = max(pair_gap, float(np.max(np.abs(eig + eig[::-1]))) / scale)
        count += 1
    ok = det_gap < 1e-8 and char_gap < 1e-8 and pair_gap < PAIRING_ATOL
    detail = f"{count} fold points; det gap {det_gap:.1e}, charpoly gap {char_gap:.1e}, pairing gap {pair_gap:.1e}"
    report(7, "determinant, characteristic polynomial and +-lambda pairing", ok, detail)


def test_criterion_8_properties(report):
    rng = np.random.default_rng(8)
    notes = []
    # log-Hessian against finite differences
    fd_err = 0.0
    for f, _, _, _ in EXAMPLES:
        for _ in range(3):
            p = rng.uniform(0.3, 1.0, f.n_vars) * np.exp(2j * np.pi * rng.uniform(size=f.n_vars))
            fd_err = max(fd_err, float(np.max(np.abs(log_hessian(f, p) - log_hessian_fd(f, p)))))
    notes.append(f"log-Hessian FD error {fd_err:.1e}")
    # Euler and rescaling identities with the certified weights
    ident = 0.0
    for f, g, cert, _ in EXAMPLES:
        for h, w in ((f, cert.weights_for(0)), (g, cert.weights_for(1))):
            for _ in range(5):
                z = rng.standard_normal(h.n_vars) + 1j * rng.standard_normal(h.n_vars)
                c = complex(rng.uniform(-1, 1), rng.uniform(-3, 3))
                ident = max(ident, euler_residual(h, w, z), rescaling_residual(h, w, z, c))
    notes.append(f"Euler/rescaling residual {ident:.1e}")
    # circle action and phase invariance of verdicts
    flips = 0
    for f, g, cert, points in EXAMPLES:
        spec = MapSpec((f, g), 1.0)
        for p in points:
            base = analyze_point(spec, p, cert)
            for t in rng.uniform(-3, 3, 3):
                for q in (circle_action(p, cert.weights, t), np.exp(1j * t) * p):
                    moved = analyze_point(spec, q, cert)
                    flips += moved.numeric_verdict != base.numeric_verdict
                    flips += moved.algebraic_verdict != base.algebraic_verdict
    notes.append(f"{flips} verdict changes under h_t / phase")
    # algebraic vs numeric criterion
    disagreements = 0
    for k, (f, g, cert, points) in enumerate(EXAMPLES):
        spec = MapSpec((f, g), 1.0)
        for p in list(points) + list(random_sphere_points(f.n_vars, 200, seed=800 + k)):
            rep = analyze_point(spec, p, cert)
            disagreements += rep.numeric_verdict != rep.algebraic_verdict
    notes.append(f"{disagreements} criterion disagreements over {len(EXAMPLES)} pairs x 200 random points")
    ok = fd_err < 1e-6 and ident < 1e-9 and flips == 0 and disagreements == 0
    report(8, "property suite", ok, "; ".join(notes))
