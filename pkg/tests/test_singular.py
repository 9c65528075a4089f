import numpy as np
import pytest

from milnor_atlas.exceptions import (
    CertificateRequired,
    ConstantTermPresent,
    DimensionMismatch,
    NotHomogeneous,
    OffSphere,
    PointOnLink,
)
from milnor_atlas.polynomial import parse_polynomials
from milnor_atlas.singular import (
    REGULAR,
    SINGULAR,
    MapSpec,
    analyze_point,
    circle_action,
    complex_dependence,
    dependence_margins,
    differential_rank,
    homogeneous_2var_circles,
    is_singular_algebraic,
    is_singular_numeric,
    jacobian_minor,
    phi,
    sphere_search,
)
from milnor_atlas.suites import generic_coefficients, power_sum
from milnor_atlas.weights import common_weights, common_weights_multi

from conftest import random_sphere_points

RANK_TOL = 1e-8


def fermat_xy_points(m, eps=1.0, thetas=(0.0, 0.9, 2.5)):
    for r in range(m):
        omega = np.exp(2j * np.pi * r / m)
        for theta in thetas:
            yield eps * np.exp(1j * theta) * np.array([1, omega]) / np.sqrt(2)


def diagonal_pair_points(n, eps=1.0, thetas=(0.0, 1.0, 2.0)):
    for u in range(n):
        for theta in thetas:
            p = np.zeros(n, dtype=complex)
            p[u] = eps * np.exp(1j * theta)
            yield p


def section4_examples():
    """(f, g, certificate, singular points) for every worked pair."""
    out = []
    for m in (2, 3, 5):
        f, g = parse_polynomials([f"z1^{m}+z2^{m}", "z1*z2"])
        out.append((f, g, common_weights(f, g), list(fermat_xy_points(m))))
    for n in (2, 3):
        c, d = generic_coefficients(n, n)
        for m in (2, 3):
            f, g = power_sum(c, m), power_sum(d, m)
            out.append((f, g, common_weights(f, g), list(diagonal_pair_points(n))))
    f, g = parse_polynomials(["z1^2+z2^2", "z1*z2"])
    out.append((f, g, common_weights(f, g), [np.array([1, s]) / np.sqrt(2) for s in (1, -1)]))
    return out


EXAMPLES = section4_examples()


# -- map specification and point checks ----------------------------------------

def test_mapspec_validation():
    f, g = parse_polynomials(["z1", "z2"])
    with pytest.raises(ValueError):
        MapSpec((f, g, f, g), 1.0)
    with pytest.raises(ValueError):
        MapSpec((f, g), 0.0)
    with pytest.raises(ConstantTermPresent):
        MapSpec(parse_polynomials(["z1+1", "z2"]), 1.0)
    with pytest.raises(DimensionMismatch):
        MapSpec((f, parse_polynomials(["z3"])[0]), 1.0)


def test_point_errors():
    spec = MapSpec(parse_polynomials(["z1^2+z2^2", "z1*z2"]), 1.0)
    with pytest.raises(OffSphere) as info:
        is_singular_numeric(spec, [1, 1])
    assert info.value.norm == pytest.approx(np.sqrt(2))
    with pytest.raises(PointOnLink) as info:
        is_singular_numeric(spec, [1, 0])
    assert info.value.value == 0
    with pytest.raises(PointOnLink):
        phi(spec, np.array([1, 1j]) / np.sqrt(2))
    with pytest.raises(CertificateRequired):
        is_singular_algebraic(*spec.polys, None, np.array([1, 1]) / np.sqrt(2))


def test_phi_lands_on_torus(rng):
    spec = MapSpec(parse_polynomials(["z1^3+z2^3", "z1*z2"]), 1.0)
    for p in random_sphere_points(2, 5, seed=3):
        assert np.allclose(np.abs(phi(spec, p)), 1)


# -- worked examples --------------------------------------------------------------

@pytest.mark.parametrize("m", [2, 3, 5])
def test_fermat_xy_points_are_singular(m):
    f, g = parse_polynomials([f"z1^{m}+z2^{m}", "z1*z2"])
    cert = common_weights(f, g)
    for p in fermat_xy_points(m):
        rep = is_singular_algebraic(f, g, cert, p)
        assert rep.numeric_verdict == rep.algebraic_verdict == SINGULAR
        assert rep.numeric_margin <= RANK_TOL


def test_regular_point():
    f, g = parse_polynomials(["z1^2+z2^2", "z1*z2"])
    p = np.array([0.6, 0.8j])
    rep = analyze_point(MapSpec((f, g)), p, common_weights(f, g))
    assert rep.numeric_verdict == rep.algebraic_verdict == REGULAR
    assert not rep.is_singular


def test_single_map_is_never_singular():
    spec = MapSpec(parse_polynomials(["z1^2+z2^3"]), 1.0)
    margins = dependence_margins(spec, random_sphere_points(2, 500, seed=1))
    assert margins.min() > 1e-3


def test_disjoint_variables_have_margin_one():
    spec = MapSpec(parse_polynomials(["z1^2", "z2^2"]), 0.1)
    margins = dependence_margins(spec, random_sphere_points(2, 2000, 0.1, seed=2))
    assert np.allclose(margins, 1.0)


def test_margin_agrees_with_differential_rank(rng):
    for f, g, cert, points in EXAMPLES[:4]:
        spec = MapSpec((f, g), 1.0)
        for p in points[:3]:
            assert differential_rank(spec, p) < 2
        for p in random_sphere_points(f.n_vars, 20, seed=5):
            rep = is_singular_numeric(spec, p)
            assert (differential_rank(spec, p) < 2) == rep.is_singular


# -- invariances and criterion equivalence ---------------------------------------

@pytest.mark.parametrize("idx", range(len(EXAMPLES)))
def test_circle_action_and_phase_invariance(idx, rng):
    f, g, cert, points = EXAMPLES[idx]
    spec = MapSpec((f, g), 1.0)
    samples = list(points) + list(random_sphere_points(f.n_vars, 10, seed=idx))
    for p in samples:
        base = analyze_point(spec, p, cert)
        for t in rng.uniform(-3, 3, 3):
            moved = analyze_point(spec, circle_action(p, cert.weights, t), cert)
            assert moved.numeric_verdict == base.numeric_verdict
            assert moved.algebraic_verdict == base.algebraic_verdict
            rotated = analyze_point(spec, np.exp(1j * t) * p, cert)
            assert rotated.numeric_verdict == base.numeric_verdict


def test_criterion_equivalence_on_random_points():
    cases = list(EXAMPLES)
    f, g = parse_polynomials(["z1^2+z2^3", "z1^4+z2^6+z1^2*z2^3"])
    cases.append((f, g, common_weights(f, g), []))
    for k, (f, g, cert, known) in enumerate(cases):
        assert cert is not None
        spec = MapSpec((f, g), 1.0)
        for p in list(known) + list(random_sphere_points(f.n_vars, 200, seed=100 + k)):
            rep = analyze_point(spec, p, cert)
            assert rep.numeric_verdict == rep.algebraic_verdict


# -- circles ------------------------------------------------------------------------

def test_circles_example():
    f, g = parse_polynomials(["z1^2+z2^2", "z1*z2"])
    fam = homogeneous_2var_circles(f, g)
    assert (fam.count, fam.bound) == (2, 2)
    dirs = np.array(fam.directions)
    assert np.allclose(np.abs(dirs), 1 / np.sqrt(2))
    assert jacobian_minor(f, g) == parse_polynomials(["2*z1^2-2*z2^2"])[0]


@pytest.mark.parametrize("m", range(2, 7))
def test_fermat_xy_circle_count(m):
    f, g = parse_polynomials([f"z1^{m}+z2^{m}", "z1*z2"])
    fam = homogeneous_2var_circles(f, g, 0.5)
    assert fam.count == m and fam.bound == m
    omegas = np.array([d[1] / d[0] for d in fam.directions])
    assert np.allclose(omegas**m, 1, atol=1e-9)


def test_degenerate_pair():
    f, g = parse_polynomials(["z1*z2", "z1*z2"])
    fam = homogeneous_2var_circles(f, g)
    assert fam.degenerate_all_singular and fam.count == 0


def test_lines_inside_the_link_are_dropped():
    # R = 2 z1 z2 (z1^2 - z2^2)... here the axes carry f g = 0
    f, g = parse_polynomials(["z1^2*z2", "z1*z2^2"])
    fam = homogeneous_2var_circles(f, g)
    spec = MapSpec((f, g))
    for d in fam.directions:
        assert dependence_margins(spec, np.array(d)) <= RANK_TOL
    assert all(abs(d[0]) > 1e-9 and abs(d[1]) > 1e-9 for d in fam.directions)


def test_vertical_line_is_found():
    f, g = parse_polynomials(["z2^2 + z1*z2", "z1^2 + z2^2"])
    fam = homogeneous_2var_circles(f, g)
    spec = MapSpec((f, g))
    for d in fam.directions:
        assert dependence_margins(spec, np.array(d)) <= RANK_TOL
    assert fam.count <= fam.bound


def test_circles_need_homogeneous_input():
    f, g = parse_polynomials(["z1^2+z2^3", "z1*z2"])
    with pytest.raises(NotHomogeneous):
        homogeneous_2var_circles(f, g)


# -- sphere search and dependence -------------------------------------------------

def test_sphere_search_recovers_circles():
    f, g = parse_polynomials(["z1^2+z2^2", "z1*z2"])
    spec = MapSpec((f, g), 1.0)
    hits = sphere_search(spec, restarts=32, iterations=300, seed=0)
    assert len(hits) == 2
    fam = homogeneous_2var_circles(f, g)
    for rep in hits:
        p = np.array(rep.point)
        assert min(1 - abs(np.vdot(p, np.array(d))) for d in fam.directions) < 1e-6


def test_sphere_search_is_deterministic():
    spec = MapSpec(parse_polynomials(["z1^3+z2^3", "z1*z2"]), 1.0)
    a = sphere_search(spec, restarts=8, iterations=100, seed=7)
    b = sphere_search(spec, restarts=8, iterations=100, seed=7)
    assert [r.to_dict() for r in a] == [r.to_dict() for r in b]


def test_complex_dependence():
    p = np.array([1, 2j, 0.5])
    assert complex_dependence([p, (2 - 1j) * p]).dependent
    assert not complex_dependence([p, np.array([0, 1, 0])]).dependent
    assert complex_dependence([p, p, p, p]).dependent


def test_sphere_search_finds_quartic_pair_circles():
    polys = parse_polynomials(["z1^2+z2^2", "z1^4+z2^4"])
    cert = common_weights_multi(polys)
    spec = MapSpec(polys, 1.0)
    hits = sphere_search(spec, restarts=16, iterations=200, seed=1, certificate=cert)
    assert len(hits) == 4
