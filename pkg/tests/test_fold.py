import numpy as np
import pytest

from milnor_atlas.exceptions import DegenerateSpan, IndexMismatch, NotAFold, NotSingular
from milnor_atlas.fold import (
    FoldReport,
    charpoly_identity_residual,
    complex_tangent_basis,
    determinant_identity_residual,
    fold_test,
    index_of,
    real_tangent_basis,
    reduced_matrix,
)
from milnor_atlas.linalg import jacobi_eigenvalues
from milnor_atlas.polynomial import parse_polynomials
from milnor_atlas.suites import expected_diagonal_hessian, generic_coefficients, power_sum
from milnor_atlas.weights import common_weights

RTOL = 1e-8


def fermat_xy_case(m, theta=0.4, r=1, eps=1.0):
    f, g = parse_polynomials([f"z1^{m}+z2^{m}", "z1*z2"])
    omega = np.exp(2j * np.pi * r / m)
    p = eps * np.exp(1j * theta) * np.array([1, omega]) / np.sqrt(2)
    return f, g, common_weights(f, g), p, omega


def diagonal_pair_case(c, d, m, u=0, theta=0.0):
    f, g = power_sum(c, m), power_sum(d, m)
    p = np.zeros(len(c), dtype=complex)
    p[u] = np.exp(1j * theta)
    return f, g, common_weights(f, g), p


def fold_cases():
    cases = []
    for m in (2, 3, 5):
        for r in range(m):
            f, g, cert, p, _ = fermat_xy_case(m, theta=0.3 * r + 0.1, r=r)
            cases.append((f, g, cert, p))
    for n in (2, 3, 4):
        c, d = generic_coefficients(n, 10 + n)
        for u in range(n):
            cases.append(diagonal_pair_case(c, d, 2, u, theta=0.7 * u))
    return cases


FOLDS = fold_cases()


# -- bases ------------------------------------------------------------------------

def test_complex_basis_matches_worked_form():
    m, theta, eps = 3, 0.8, 0.5
    _, _, _, p, omega = fermat_xy_case(m, theta=theta, r=1, eps=eps)
    W = complex_tangent_basis(p)
    expected = eps * np.exp(1j * theta) / np.sqrt(2) * np.array([1, -omega])
    assert np.allclose(W[:, 0], expected)


def test_complex_basis_for_coordinate_point(rng):
    W = complex_tangent_basis(np.array([0.3, 0]))
    assert abs(abs(W[1, 0]) - 0.3) < 1e-12 and abs(W[0, 0]) < 1e-12
    p = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    W = complex_tangent_basis(p)
    assert np.max(np.abs(np.conj(W).T @ p)) < 1e-10


def test_real_basis(rng):
    p = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    q = rng.standard_normal(3) + 1j * rng.standard_normal(3)
    V = real_tangent_basis(p, q)
    assert V.shape == (3, 4)
    assert np.allclose(np.real(np.conj(p) @ V), 0)
    assert np.allclose(np.real(np.conj(q) @ V), 0)
    with pytest.raises(DegenerateSpan):
        real_tangent_basis(p, -2 * p)


# -- worked examples ----------------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3, 5])
def test_fermat_xy_fold(m):
    for r in range(m):
        f, g, cert, p, omega = fermat_xy_case(m, r=r)
        rep = fold_test(f, g, cert, p)
        assert rep.c_dependent and rep.is_fold and rep.status == "fold"
        assert abs(rep.det_complex - 2j * m) / (2 * m) < RTOL
        assert index_of(rep) == 1 and rep.absolute_index == 1


def test_fermat_xy_hessian_formula():
    m, theta, r = 4, 1.1, 3
    f, g, cert, p, omega = fermat_xy_case(m, theta=theta, r=r)
    H = fold_test(f, g, cert, p).H
    expected = m * 1j * np.exp(-2j * theta) / omega**2 * np.array([[omega**2, -omega], [-omega, 1]])
    assert np.allclose(H, expected, rtol=RTOL)


def test_diagonal_pair_three_variables():
    c, d = (1, 1, 1), (1, 2, 3)
    f, g, cert, p = diagonal_pair_case(c, d, 2)
    rep = fold_test(f, g, cert, p)
    assert np.allclose(rep.H, expected_diagonal_hessian(c, d, 0, 0.0, 1.0))
    assert rep.is_fold and index_of(rep) == 2
    # W^T H W = 2i diag(A_21, A_31) = 2i diag(-1, -2)
    assert rep.det_complex == pytest.approx(-8)


def test_diagonal_pair_higher_degree_is_not_fold():
    c, d = generic_coefficients(3, 5)
    for m in (3, 4):
        f, g, cert, p = diagonal_pair_case(c, d, m, u=1, theta=0.5)
        rep = fold_test(f, g, cert, p)
        assert np.max(np.abs(rep.H)) < 1e-10
        assert not rep.is_fold and rep.index is None
        with pytest.raises(NotAFold):
            index_of(rep)


def test_regular_point_is_refused():
    f, g = parse_polynomials(["z1^2+z2^2", "z1*z2"])
    with pytest.raises(NotSingular) as info:
        fold_test(f, g, common_weights(f, g), np.array([0.6, 0.8j]))
    assert info.value.margin > 1e-3


def weighted_case():
    """``(z1^2+z2^3, z1^4+z2^6)`` at a real point of ``z1^2 = z2^3``; ``p`` and ``i grad log f`` are C-independent."""
    f, g = parse_polynomials(["z1^2+z2^3", "z1^4+z2^6"])
    r = min(x.real for x in np.roots([1, 1, 0, -1]) if abs(x.imag) < 1e-12 and x.real > 0)
    return f, g, common_weights(f, g), np.array([r**1.5, r], dtype=complex)


def test_c_independent_branch():
    f, g, cert, p = weighted_case()
    assert cert.s == 2
    rep = fold_test(f, g, cert, p)
    assert not rep.c_dependent and rep.W is None and rep.det_complex is None
    assert rep.V.shape == (2, 2)
    q = 1j * np.conj(np.array([2 * p[0], 3 * p[1] ** 2]) / (p[0] ** 2 + p[1] ** 3))
    assert np.allclose(np.real(np.conj(p) @ rep.V), 0)
    assert np.allclose(np.real(np.conj(q) @ rep.V), 0)
    if rep.is_fold:
        assert index_of(rep) == rep.index
    with pytest.raises(ValueError):
        determinant_identity_residual(rep)


# -- identities and invariances -------------------------------------------------------

@pytest.mark.parametrize("case", range(len(FOLDS)))
def test_fold_identities(case):
    rep = fold_test(*FOLDS[case])
    assert rep.c_dependent
    assert determinant_identity_residual(rep) < RTOL
    for t in (0.0, 0.5, 1.0, 2.0):
        assert charpoly_identity_residual(rep, t) < RTOL
    R = np.real(rep.V.T @ rep.H @ rep.V)
    assert np.max(np.abs(R - R.T)) < 1e-12 * max(1.0, np.max(np.abs(R)))
    assert index_of(rep) == rep.n_vars - 1


@pytest.mark.parametrize("case", range(len(FOLDS)))
def test_eigen_solver_cross_check(case):
    rep = fold_test(*FOLDS[case])
    R = rep.reduced_matrix
    eig = rep.eigenvalues
    scale = np.linalg.norm(R)
    assert abs(eig.sum() - np.trace(R)) <= 1e-9 * scale
    assert abs(np.prod(eig) - rep.det_real) <= 1e-9 * abs(rep.det_real)
    assert np.allclose(eig, np.linalg.eigvalsh(R), atol=1e-10 * scale)


@pytest.mark.parametrize("case", range(len(FOLDS) + 1))
def test_basis_independence(case, rng):
    rep = fold_test(*(FOLDS[case] if case < len(FOLDS) else weighted_case()))
    k = rep.V.shape[1]
    for _ in range(10):
        # well-conditioned random G: the fold threshold is relative to |R|^k,
        # so a nearly singular G could move a value across it
        Q1, _ = np.linalg.qr(rng.standard_normal((k, k)))
        Q2, _ = np.linalg.qr(rng.standard_normal((k, k)))
        G = Q1 @ np.diag(rng.uniform(0.5, 2.0, k)) @ Q2
        R = reduced_matrix(rep.H, rep.V @ G)
        eig = jacobi_eigenvalues(R)
        det = np.linalg.det(R)
        assert (abs(det) > 1e-8 * np.linalg.norm(R) ** k) == rep.is_fold
        assert int(np.sum(eig < 0)) == rep.index


def test_index_mismatch_is_detected():
    rep = fold_test(*FOLDS[0])
    broken = FoldReport(**{**rep.__dict__, "eigenvalues": np.array([1.0, 2.0])})
    with pytest.raises(IndexMismatch):
        index_of(broken)


def test_to_dict_has_fields():
    d = fold_test(*FOLDS[0]).to_dict()
    assert {"det_real", "det_complex", "eigenvalues", "index", "absolute_index", "status"} <= set(d)
