import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from milnor_atlas.exceptions import RootFindingDidNotConverge
from milnor_atlas.roots import aberth_roots, backward_error, cauchy_bound


def _match(ours, ref, tol):
    ours = list(ours)
    for r in ref:
        k = int(np.argmin([abs(r - z) for z in ours]))
        assert abs(ours.pop(k) - r) < tol


def test_roots_of_unity():
    m = 7
    roots = aberth_roots([-1] + [0] * (m - 1) + [1])
    _match(roots, np.exp(2j * np.pi * np.arange(m) / m), 1e-12)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.complex_numbers(max_magnitude=3), min_size=1, max_size=8, unique=True))
def test_against_companion_matrix(roots):
    roots = np.array(roots)
    if len(roots) > 1:
        gaps = np.abs(roots[:, None] - roots[None, :]) + np.eye(len(roots))
        if gaps.min() < 1e-2:
            return
    coeffs = np.poly(roots)[::-1]
    ours = aberth_roots(coeffs)
    assert np.all(backward_error(coeffs, ours) < 1e-10)
    _match(ours, np.roots(coeffs[::-1]), 1e-6)


def test_cauchy_bound_contains_roots(rng):
    c = rng.standard_normal(6) + 1j * rng.standard_normal(6)
    assert np.all(np.abs(np.roots(c[::-1])) <= cauchy_bound(c))


def test_degenerate_degrees():
    assert aberth_roots([5]).size == 0
    assert np.allclose(aberth_roots([2, 1]), [-2])


def test_non_convergence_is_reported():
    with pytest.raises(RootFindingDidNotConverge) as info:
        aberth_roots([1, 0, 0, 0, 0, 3, 1], max_iter=1)
    assert info.value.residual > 1e-10
