"""scikit-learn style wrappers around the pointwise tests.

The estimators are stateless apart from parsing and certifying the
polynomials in :meth:`fit`; ``X`` is an array of sphere points with complex
entries and shape ``(n_points, n_vars)``.  ``y`` is ignored.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .fold import FOLD_TOL, fold_test
from .singular import RANK_TOL, MapSpec, dependence_margins, minor_residual
from .validation import check_points, check_polynomials
from .weights import common_weights_multi


class SingularPointClassifier(ClassifierMixin, BaseEstimator):
    """Label sphere points as singular (1) or regular (0).

    Parameters
    ----------
    polynomials : sequence of str or Polynomial
        The components ``f_1 .. f_m``.
    epsilon : float
        Sphere radius.
    rank_tol : float
        Threshold on the singularity margin.
    criterion : {"numeric", "algebraic"}
        ``"algebraic"`` uses the Jacobian-minor test and needs ``m = 2`` with
        certified common weights.
    """

    def __init__(self, polynomials=(), epsilon=1.0, rank_tol=RANK_TOL, criterion="numeric"):
        self.polynomials = polynomials
        self.epsilon = epsilon
        self.rank_tol = rank_tol
        self.criterion = criterion

    def fit(self, X=None, y=None):
        if self.criterion not in ("numeric", "algebraic"):
            raise ValueError(f"unknown criterion {self.criterion!r}")
        polys = check_polynomials(self.polynomials)
        self.spec_ = MapSpec(polys, self.epsilon)
        self.certificate_ = common_weights_multi(polys)
        if self.criterion == "algebraic" and (self.spec_.m != 2 or self.certificate_ is None):
            raise ValueError("the algebraic criterion needs a pair with common weights")
        self.n_features_in_ = self.spec_.n_vars
        self.classes_ = np.array([0, 1])
        if X is not None:
            check_points(X, self.n_features_in_)
        return self

    def _scores(self, X):
        check_is_fitted(self, "spec_")
        P = check_points(X, self.n_features_in_)
        if self.criterion == "algebraic":
            f, g = self.spec_.polys
            return np.array([minor_residual(f, g, p) for p in P])
        return np.asarray(dependence_margins(self.spec_, P), dtype=float)

    def decision_function(self, X):
        """``rank_tol - margin``: positive for singular points, ``-inf`` on the link."""
        return self.rank_tol - self._scores(X)

    def predict(self, X):
        return (self.decision_function(X) >= 0).astype(int)


class FoldClassifier(TransformerMixin, BaseEstimator):
    """Fold verdicts and fold invariants at singular points of a pair.

    :meth:`transform` returns the columns ``det_real``, ``index`` (``-1`` when
    not a fold) and ``absolute_index``.
    """

    def __init__(self, polynomials=(), rank_tol=RANK_TOL, fold_tol=FOLD_TOL):
        self.polynomials = polynomials
        self.rank_tol = rank_tol
        self.fold_tol = fold_tol

    def fit(self, X=None, y=None):
        polys = check_polynomials(self.polynomials)
        if len(polys) != 2:
            raise ValueError("fold classification needs exactly two polynomials")
        self.certificate_ = common_weights_multi(polys)
        if self.certificate_ is None:
            raise ValueError("the pair has no common weights w_g = s*w_f")
        self.polys_ = polys
        self.n_features_in_ = polys[0].n_vars
        self.classes_ = np.array([0, 1])
        return self

    def reports(self, X):
        check_is_fitted(self, "polys_")
        f, g = self.polys_
        return [
            fold_test(f, g, self.certificate_, p, self.rank_tol, self.fold_tol)
            for p in check_points(X, self.n_features_in_)
        ]

    def predict(self, X):
        return np.array([int(r.is_fold) for r in self.reports(X)])

    def transform(self, X):
        rows = []
        for r in self.reports(X):
            index = -1 if r.index is None else r.index
            absolute = -1 if r.absolute_index is None else r.absolute_index
            rows.append((r.det_real, index, absolute))
        return np.array(rows, dtype=float).reshape(-1, 3)
