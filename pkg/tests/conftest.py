import numpy as np
import pytest
from hypothesis import strategies as st

from milnor_atlas.exact import GaussianRational
from milnor_atlas.polynomial import Polynomial

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)
gaussian = st.builds(GaussianRational, small_fractions, small_fractions)


@st.composite
def polynomials(draw, n_vars=2, max_degree=3, max_terms=4, constant=True):
    terms = {}
    for _ in range(draw(st.integers(1, max_terms))):
        exps = tuple(draw(st.integers(0, max_degree)) for _ in range(n_vars))
        if not constant and not any(exps):
            continue
        terms[exps] = draw(gaussian)
    return Polynomial(n_vars, terms)


def random_sphere_points(n, count, epsilon=1.0, seed=0):
    rng = np.random.default_rng(seed)
    X = rng.standard_normal((count, 2 * n))
    X /= np.linalg.norm(X, axis=1, keepdims=True)
    return epsilon * (X[:, :n] + 1j * X[:, n:])


@pytest.fixture
def rng():
    return np.random.default_rng(1234)
